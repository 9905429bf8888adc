#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gic/model.hpp"

namespace gic {

struct RankedEntry {
    WorkerBlock block;
    std::size_t source_index = 0;  // position in WagePanel::blocks
    double cumulative = 0.0;       // prefix weight including this entry
};

// Non-entrant blocks sorted by initial wage (ties: sector_id, then status).
struct RankedPanel {
    std::vector<RankedEntry> entries;
    double total_weight = 0.0;
};

RankedPanel rank_panel(const WagePanel& panel);

// Portion of one ranked item that falls inside one fractile.
struct FractileSlice {
    std::size_t item = 0;
    double weight = 0.0;
};

// Cuts the cumulative-weight axis into `fractiles` equal intervals
// ((f-1)W/F, fW/F] and splits straddling items pro rata. `cumulative` must be
// strictly increasing; its last value is W.
std::vector<std::vector<FractileSlice>> fractile_slices(std::span<const double> cumulative, int fractiles);

CurveResult nagic(const RankedPanel& ranked, int fractiles = 5,
                  GrowthVariant variant = GrowthVariant::democratic);

CurveResult employment_change_by_fractile(const RankedPanel& ranked, int fractiles = 5);

// value_f = b[f] / a[f] - 1 over per-fractile average wages.
CurveResult anonymous_gic(std::span<const double> fractile_means_a, std::span<const double> fractile_means_b);

// Weighted per-fractile means of `values`, ranking ascending by value.
std::vector<double> fractile_means(std::span<const double> values, std::span<const double> weights,
                                   int fractiles);

// Fractile means of the distribution where every worker earns the sector average.
std::vector<double> sector_average_fractile_means(const SnapshotSet& set, WageKind wage_kind, int fractiles);

struct PanelSummary {
    double employment_a = 0.0;
    double employment_b = 0.0;
    double mean_wage_a = 0.0;
    double mean_wage_b_excluding_zeros = 0.0;
    double mean_wage_b_including_zeros = 0.0;  // laid-off workers count as earning 0
    double change_excluding_zeros = 0.0;
    double change_including_zeros = 0.0;

    double employment_change() const { return employment_b / employment_a - 1.0; }
};

PanelSummary summary(const WagePanel& panel);

} // namespace gic
