#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/core.h>

#include "gic/error.hpp"
#include "gic/random.hpp"

namespace gic {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

double log_choose(double n, double k) {
    using boost::math::lgamma;
    return lgamma(n + 1.0) - lgamma(k + 1.0) - lgamma(n - k + 1.0);
}

} // namespace

// Exact inversion that visits the support in order of decreasing probability,
// starting at the mode. Expected work is O(standard deviation).
std::int64_t sample_hypergeometric(std::int64_t population, std::int64_t successes, std::int64_t draws, Rng& rng) {
    if (population < 0 || successes < 0 || draws < 0 || successes > population || draws > population) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("invalid hypergeometric parameters N={} K={} n={}", population, successes, draws));
    }
    const std::int64_t failures = population - successes;
    const std::int64_t k_min = std::max<std::int64_t>(0, draws - failures);
    const std::int64_t k_max = std::min(draws, successes);
    if (k_min == k_max) {
        return k_min;
    }

    const double N = static_cast<double>(population);
    const double K = static_cast<double>(successes);
    const double n = static_cast<double>(draws);
    auto mode = static_cast<std::int64_t>(std::floor((n + 1.0) * (K + 1.0) / (N + 2.0)));
    mode = std::clamp(mode, k_min, k_max);

    const double m = static_cast<double>(mode);
    const double p_mode = std::exp(log_choose(K, m) + log_choose(N - K, n - m) - log_choose(N, n));

    // p(k+1)/p(k) and p(k-1)/p(k)
    auto up_ratio = [&](double k) { return (K - k) * (n - k) / ((k + 1.0) * (N - K - n + k + 1.0)); };
    auto down_ratio = [&](double k) { return k * (N - K - n + k) / ((K - k + 1.0) * (n - k + 1.0)); };

    const double u = uniform01(rng);
    double cumulative = p_mode;
    if (u < cumulative) {
        return mode;
    }
    std::int64_t hi = mode + 1;
    std::int64_t lo = mode - 1;
    double p_hi = hi <= k_max ? p_mode * up_ratio(m) : 0.0;
    double p_lo = lo >= k_min ? p_mode * down_ratio(m) : 0.0;
    while (hi <= k_max || lo >= k_min) {
        const bool take_hi = hi <= k_max && (lo < k_min || p_hi >= p_lo);
        if (take_hi) {
            cumulative += p_hi;
            if (u < cumulative) {
                return hi;
            }
            p_hi *= up_ratio(static_cast<double>(hi));
            ++hi;
        } else {
            cumulative += p_lo;
            if (u < cumulative) {
                return lo;
            }
            p_lo *= down_ratio(static_cast<double>(lo));
            --lo;
        }
        if (p_hi == 0.0 && p_lo == 0.0) {
            break;
        }
    }
    // Rounding left the accumulated mass just short of u.
    return mode;
}

} // namespace gic
