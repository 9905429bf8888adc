#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gic/model.hpp"

namespace gic {

// One random flagging of a demographic group onto a panel.
struct AssignmentReplication {
    int index = 0;
    std::uint64_t seed = 0;
    std::vector<double> assigned;  // flagged weight, parallel to WagePanel::blocks
};

// Within every sector, flags rho_s * n^A_s workers drawn without replacement
// from the sector's time-A workers (retained + laid off), so the split between
// the two blocks is hypergeometric. Entrants get rho_s of their weight.
// Throws ShareRosterMismatch if `shares` misses a panel sector.
AssignmentReplication assign_group(const WagePanel& panel, const DemographicShares& shares, std::uint64_t seed,
                                   int index = 0);

// The unflagged remainder of every block (e.g. male given female).
AssignmentReplication complement(const WagePanel& panel, const AssignmentReplication& rep);

// Fraction of every panel block that lies inside the scope. The bottom
// quintile is cut on the full time-A ranking, before any assignment.
std::vector<double> scope_fractions(const WagePanel& panel, Scope scope);

double group_growth(const WagePanel& panel, const AssignmentReplication& rep, Scope scope,
                    GrowthVariant variant = GrowthVariant::democratic);
double group_growth(const WagePanel& panel, const AssignmentReplication& rep, std::span<const double> in_scope,
                    GrowthVariant variant = GrowthVariant::democratic);

struct MonteCarloOptions {
    int replications = 1000;
    double ci_level = 0.95;
    std::uint64_t master_seed = 0;
    unsigned threads = 1;  // 0 = hardware concurrency
};

struct MonteCarloRun {
    GroupGrowthEstimate estimate;
    std::vector<double> values;  // per replication, by index
};

MonteCarloRun monte_carlo_group_growth_run(const WagePanel& panel, const DemographicShares& shares, Scope scope,
                                           GrowthVariant variant, const MonteCarloOptions& options);

GroupGrowthEstimate monte_carlo_group_growth(const WagePanel& panel, const DemographicShares& shares, Scope scope,
                                             GrowthVariant variant, const MonteCarloOptions& options);

// Linear-interpolation empirical quantile of a sorted sample (q in [0, 1]).
double sorted_quantile(std::span<const double> sorted, double q);

} // namespace gic
