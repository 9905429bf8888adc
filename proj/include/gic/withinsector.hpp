#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gic/model.hpp"

namespace gic {

// Lognormal shape parameter whose Gini coefficient equals `gini`:
// sigma = sqrt(2) * Phi^-1((gini + 1) / 2) = 2 * erf^-1(gini).
double sigma_from_gini(double gini);

// Closed-form Gini of a lognormal with shape `sigma`: 2 * Phi(sigma / sqrt(2)) - 1.
double gini_from_sigma(double sigma);

// Same within-sector inequality for every sector; the location is set per
// sector so the distribution mean equals the published average wage.
struct LognormalSpec {
    double gini = 0.4;
    double sigma = 0.0;

    static LognormalSpec from_gini(double gini);
    double mu_for_mean(double mean) const;
};

// i.i.d. lognormal draws whose population mean is the sector's average wage.
std::vector<double> simulate_sector_wages(const SectorSnapshot& sector, WageKind wage_kind, const LognormalSpec& spec,
                                          std::size_t sample_size, std::uint64_t seed);

struct SimulationOptions {
    double gini = 0.4;
    int fractiles = 5;
    int simulations = 1000;
    // Simulated workers per real worker; each draw carries weight 1 / scale
    // (exactly n_s / k_s) so sector proportions are preserved.
    double workers_per_sector_scale = 1e-4;
    std::uint64_t master_seed = 0;
    WageKind wage_kind = WageKind::weekly;
    unsigned threads = 1;  // 0 = hardware concurrency
};

struct SimulatedGic {
    CurveResult sector_average;     // anonymous GIC with everyone at the sector average
    CurveResult simulated;          // mean over simulations of the simulated anonymous GIC
    std::vector<double> dispersion; // per-fractile standard deviation across simulations

    double max_gap() const;
};

SimulatedGic simulated_anonymous_gic(const SnapshotSet& a, const SnapshotSet& b, const SimulationOptions& options);

} // namespace gic
