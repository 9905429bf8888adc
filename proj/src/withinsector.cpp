#include "gic/withinsector.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include <boost/math/special_functions/erf.hpp>
#include <fmt/core.h>

#include "gic/curves.hpp"
#include "gic/random.hpp"

namespace gic {

double sigma_from_gini(double gini) {
    if (!(gini > 0.0 && gini < 1.0)) {
        throw Error(ErrorCode::OutOfRange, fmt::format("Gini coefficient must lie in (0, 1), got {}", gini));
    }
    return 2.0 * boost::math::erf_inv(gini);
}

double gini_from_sigma(double sigma) {
    return std::erf(sigma / 2.0);
}

LognormalSpec LognormalSpec::from_gini(double gini) {
    return {gini, sigma_from_gini(gini)};
}

double LognormalSpec::mu_for_mean(double mean) const {
    return std::log(mean) - sigma * sigma / 2.0;
}

std::vector<double> simulate_sector_wages(const SectorSnapshot& sector, WageKind wage_kind, const LognormalSpec& spec,
                                          std::size_t sample_size, std::uint64_t seed) {
    const double mean = sector.wage(wage_kind);
    if (!(mean > 0.0)) {
        throw Error(ErrorCode::NonPositiveAverage,
                    fmt::format("sector '{}' has a non-positive average wage", sector.sector_id));
    }
    std::vector<double> draws(sample_size, mean);
    if (spec.sigma <= 0.0) {
        return draws;
    }
    Rng rng(seed);
    std::lognormal_distribution<double> dist(spec.mu_for_mean(mean), spec.sigma);
    for (auto& d : draws) {
        d = dist(rng);
    }
    return draws;
}

double SimulatedGic::max_gap() const {
    double gap = 0.0;
    for (std::size_t f = 0; f < simulated.values.size(); ++f) {
        gap = std::max(gap, std::fabs(simulated.values[f] - sector_average.values[f]));
    }
    return gap;
}

namespace {

struct Population {
    std::vector<double> wages;
    std::vector<double> weights;
};

Population draw_population(const SnapshotSet& set, const LognormalSpec& spec, const SimulationOptions& options,
                           std::uint64_t seed) {
    Population pop;
    for (std::size_t j = 0; j < set.sectors.size(); ++j) {
        const auto& sector = set.sectors[j];
        if (!(sector.employees > 0.0)) {
            continue;
        }
        const auto k = static_cast<std::size_t>(
            std::max<long long>(1, std::llround(sector.employees * options.workers_per_sector_scale)));
        const double weight = sector.employees / static_cast<double>(k);
        auto wages = simulate_sector_wages(sector, options.wage_kind, spec, k, derive_seed(seed, j));
        pop.wages.insert(pop.wages.end(), wages.begin(), wages.end());
        pop.weights.insert(pop.weights.end(), k, weight);
    }
    return pop;
}

} // namespace

SimulatedGic simulated_anonymous_gic(const SnapshotSet& a, const SnapshotSet& b, const SimulationOptions& options) {
    const auto pair = validate_snapshot_pair(a, b);
    if (options.simulations < 1) {
        throw Error(ErrorCode::InvalidArgument, "at least one simulation is required");
    }
    if (!(options.workers_per_sector_scale > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "workers_per_sector_scale must be positive");
    }
    const auto spec = LognormalSpec::from_gini(options.gini);
    const int fractiles = options.fractiles;

    SimulatedGic out;
    out.sector_average = anonymous_gic(sector_average_fractile_means(pair.from, options.wage_kind, fractiles),
                                       sector_average_fractile_means(pair.to, options.wage_kind, fractiles));
    out.sector_average.population = pair.from.total_employees();

    const auto sims = static_cast<std::size_t>(options.simulations);
    std::vector<std::vector<double>> curves(sims);
    std::vector<std::exception_ptr> failures(sims);
    auto run_one = [&](std::size_t i) {
        try {
            const auto seed = derive_seed(options.master_seed, i);
            const auto pop_a = draw_population(pair.from, spec, options, derive_seed(seed, 0));
            const auto pop_b = draw_population(pair.to, spec, options, derive_seed(seed, 1));
            curves[i] = anonymous_gic(fractile_means(pop_a.wages, pop_a.weights, fractiles),
                                      fractile_means(pop_b.wages, pop_b.weights, fractiles))
                            .values;
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, sims));
    if (threads <= 1) {
        for (std::size_t i = 0; i < sims; ++i) {
            run_one(i);
        }
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < sims; i += threads) {
                    run_one(i);
                }
            });
        }
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    const auto f_count = static_cast<std::size_t>(fractiles);
    out.simulated.fractiles = fractiles;
    out.simulated.variant = GrowthVariant::anonymous;
    out.simulated.population = out.sector_average.population;
    out.simulated.values.assign(f_count, 0.0);
    out.dispersion.assign(f_count, 0.0);
    for (std::size_t f = 0; f < f_count; ++f) {
        double sum = 0.0;
        for (const auto& curve : curves) {
            sum += curve[f];
        }
        const double mean = sum / static_cast<double>(sims);
        double squares = 0.0;
        for (const auto& curve : curves) {
            squares += (curve[f] - mean) * (curve[f] - mean);
        }
        out.simulated.values[f] = mean;
        out.dispersion[f] = sims > 1 ? std::sqrt(squares / static_cast<double>(sims - 1)) : 0.0;
    }
    return out;
}

} // namespace gic
