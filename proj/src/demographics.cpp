#include "gic/demographics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include <fmt/core.h>

#include "gic/curves.hpp"
#include "gic/random.hpp"

namespace gic {

namespace {

struct SectorBlocks {
    std::ptrdiff_t retained = -1;
    std::ptrdiff_t laid_off = -1;
    std::ptrdiff_t entrant = -1;
};

std::map<std::string, SectorBlocks> index_sectors(const WagePanel& panel) {
    std::map<std::string, SectorBlocks> sectors;
    for (std::size_t i = 0; i < panel.blocks.size(); ++i) {
        const auto& b = panel.blocks[i];
        auto& s = sectors[b.sector_id];
        const auto idx = static_cast<std::ptrdiff_t>(i);
        switch (b.status) {
        case BlockStatus::retained: s.retained = idx; break;
        case BlockStatus::laid_off: s.laid_off = idx; break;
        case BlockStatus::entrant: s.entrant = idx; break;
        }
    }
    return sectors;
}

} // namespace

AssignmentReplication assign_group(const WagePanel& panel, const DemographicShares& shares, std::uint64_t seed,
                                   int index) {
    AssignmentReplication rep;
    rep.index = index;
    rep.seed = seed;
    rep.assigned.assign(panel.blocks.size(), 0.0);
    Rng rng(seed);

    for (const auto& [sector_id, idx] : index_sectors(panel)) {
        const double rho = shares.share(sector_id);
        const double retained = idx.retained >= 0 ? panel.blocks[idx.retained].weight : 0.0;
        const double laid_off = idx.laid_off >= 0 ? panel.blocks[idx.laid_off].weight : 0.0;
        const double time_a = retained + laid_off;
        const double flagged = rho * time_a;

        if (idx.entrant >= 0) {
            rep.assigned[idx.entrant] = rho * panel.blocks[idx.entrant].weight;
        }
        if (idx.laid_off < 0) {
            if (idx.retained >= 0) {
                rep.assigned[idx.retained] = flagged;
            }
            continue;
        }
        if (idx.retained < 0) {
            rep.assigned[idx.laid_off] = flagged;
            continue;
        }

        // Integer part drawn without replacement; the fractional remainder is
        // spread pro rata so the sector total is exactly rho * n^A.
        const auto whole_r = std::llround(retained);
        const auto whole_l = std::llround(laid_off);
        const auto draws = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(flagged)), 0,
                                                    whole_r + whole_l);
        const auto hits = sample_hypergeometric(whole_r + whole_l, whole_r, draws, rng);
        const double remainder = flagged - static_cast<double>(draws);

        double to_retained = std::clamp(static_cast<double>(hits) + remainder * retained / time_a, 0.0, retained);
        double to_laid_off = flagged - to_retained;
        if (to_laid_off > laid_off) {
            to_laid_off = laid_off;
            to_retained = flagged - laid_off;
        } else if (to_laid_off < 0.0) {
            to_laid_off = 0.0;
            to_retained = flagged;
        }
        rep.assigned[idx.retained] = to_retained;
        rep.assigned[idx.laid_off] = to_laid_off;
    }
    return rep;
}

AssignmentReplication complement(const WagePanel& panel, const AssignmentReplication& rep) {
    if (rep.assigned.size() != panel.blocks.size()) {
        throw Error(ErrorCode::InvalidArgument, "replication does not match the panel");
    }
    AssignmentReplication rest = rep;
    for (std::size_t i = 0; i < panel.blocks.size(); ++i) {
        rest.assigned[i] = panel.blocks[i].weight - rep.assigned[i];
    }
    return rest;
}

std::vector<double> scope_fractions(const WagePanel& panel, Scope scope) {
    std::vector<double> in_scope(panel.blocks.size(), 0.0);
    if (scope == Scope::all) {
        for (std::size_t i = 0; i < panel.blocks.size(); ++i) {
            in_scope[i] = panel.blocks[i].status == BlockStatus::entrant ? 0.0 : 1.0;
        }
        return in_scope;
    }
    const auto ranked = rank_panel(panel);
    std::vector<double> cumulative;
    cumulative.reserve(ranked.entries.size());
    for (const auto& e : ranked.entries) {
        cumulative.push_back(e.cumulative);
    }
    const auto slices = fractile_slices(cumulative, 5);
    for (const auto& slice : slices.front()) {
        const auto& entry = ranked.entries[slice.item];
        in_scope[entry.source_index] += slice.weight / entry.block.weight;
    }
    return in_scope;
}

double group_growth(const WagePanel& panel, const AssignmentReplication& rep, std::span<const double> in_scope,
                    GrowthVariant variant) {
    if (rep.assigned.size() != panel.blocks.size() || in_scope.size() != panel.blocks.size()) {
        throw Error(ErrorCode::InvalidArgument, "replication does not match the panel");
    }
    if (variant != GrowthVariant::democratic && variant != GrowthVariant::plutocratic) {
        throw Error(ErrorCode::InvalidArgument, "group growth supports the democratic and plutocratic variants");
    }
    double weight = 0.0;
    double growth = 0.0;
    double initial = 0.0;
    double terminal = 0.0;
    for (std::size_t i = 0; i < panel.blocks.size(); ++i) {
        const auto& b = panel.blocks[i];
        if (b.status == BlockStatus::entrant) {
            continue;
        }
        const double w = rep.assigned[i] * in_scope[i];
        if (w == 0.0) {
            continue;
        }
        weight += w;
        growth += w * (b.wage_terminal / b.wage_initial - 1.0);
        initial += w * b.wage_initial;
        terminal += w * b.wage_terminal;
    }
    if (!(weight > 0.0)) {
        throw Error(ErrorCode::EmptyGroup, "group has no weight inside the requested scope");
    }
    return variant == GrowthVariant::democratic ? growth / weight : terminal / initial - 1.0;
}

double group_growth(const WagePanel& panel, const AssignmentReplication& rep, Scope scope, GrowthVariant variant) {
    const auto in_scope = scope_fractions(panel, scope);
    return group_growth(panel, rep, in_scope, variant);
}

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw Error(ErrorCode::EmptySample, "quantile of an empty sample");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

MonteCarloRun monte_carlo_group_growth_run(const WagePanel& panel, const DemographicShares& shares, Scope scope,
                                           GrowthVariant variant, const MonteCarloOptions& options) {
    if (options.replications < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("at least 2 replications required, got {}", options.replications));
    }
    if (!(options.ci_level > 0.0 && options.ci_level < 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("confidence level must lie in (0, 1), got {}", options.ci_level));
    }
    const auto in_scope = scope_fractions(panel, scope);
    const auto reps = static_cast<std::size_t>(options.replications);

    std::vector<double> values(reps, 0.0);
    std::vector<std::exception_ptr> failures(reps);
    auto run_one = [&](std::size_t i) {
        try {
            const auto seed = derive_seed(options.master_seed, i);
            const auto rep = assign_group(panel, shares, seed, static_cast<int>(i));
            values[i] = group_growth(panel, rep, in_scope, variant);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
    if (threads <= 1) {
        for (std::size_t i = 0; i < reps; ++i) {
            run_one(i);
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < reps; i += threads) {
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

    MonteCarloRun run;
    run.values = values;
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double tail = (1.0 - options.ci_level) / 2.0;

    auto& est = run.estimate;
    est.group = shares.group;
    est.scope = scope;
    est.variant = variant;
    // A degenerate sample (e.g. a share of 1 everywhere) must report its value
    // exactly, not a summation-rounded copy of it.
    est.mean_growth = sorted.front() == sorted.back() ? sorted.front() : sum / static_cast<double>(reps);
    est.ci_low = sorted_quantile(sorted, tail);
    est.ci_high = sorted_quantile(sorted, 1.0 - tail);
    est.replications = options.replications;
    est.seed = options.master_seed;
    return run;
}

GroupGrowthEstimate monte_carlo_group_growth(const WagePanel& panel, const DemographicShares& shares, Scope scope,
                                             GrowthVariant variant, const MonteCarloOptions& options) {
    return monte_carlo_group_growth_run(panel, shares, scope, variant, options).estimate;
}

} // namespace gic
