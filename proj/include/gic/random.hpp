#pragma once

#include <cstdint>
#include <random>

namespace gic {

using Rng = std::mt19937_64;

// SplitMix64 mix of (master, index); used to give every replication or
// simulation its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// Uniform on [0, 1) from the top 53 bits of one engine output.
double uniform01(Rng& rng) noexcept;

// Number of successes when drawing `draws` items without replacement from a
// population of `population` items of which `successes` are marked.
std::int64_t sample_hypergeometric(std::int64_t population, std::int64_t successes, std::int64_t draws, Rng& rng);

} // namespace gic
