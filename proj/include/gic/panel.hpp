#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gic/model.hpp"

namespace gic {

// Builds the two-period synthetic panel. For every sector the first
// min(n_A, n_B) workers keep the sector wage at both dates, the surplus at A is
// laid off (terminal wage 0) and the surplus at B enters (initial wage 0).
// Blocks are ordered by (sector_id, status); zero-weight blocks are omitted.
WagePanel build_panel(const SnapshotPair& pair, WageKind wage_kind);
WagePanel build_panel(const SnapshotSet& a, const SnapshotSet& b, WageKind wage_kind);

struct WorkerRecord {
    std::string sector_id;
    double wage_initial = 0.0;
    double wage_terminal = 0.0;
};

// One record per worker, in block order. Throws TooLarge when the panel holds
// more than max_workers and NonIntegralWeight when a block weight is fractional.
std::vector<WorkerRecord> expand_panel(const WagePanel& panel, std::size_t max_workers);

} // namespace gic
