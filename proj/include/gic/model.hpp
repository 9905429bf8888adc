#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gic/error.hpp"

namespace gic {

// Calendar month label ("YYYY-MM"). Only used as an ordered label; no day
// arithmetic is ever performed on it.
struct Month {
    int year = 0;
    int month = 0;

    static Month parse(std::string_view text);
    static std::optional<Month> try_parse(std::string_view text) noexcept;
    std::string str() const;

    auto operator<=>(const Month&) const = default;
};

enum class WageKind { hourly, weekly };

std::string_view to_string(WageKind kind);
WageKind parse_wage_kind(std::string_view text);

struct SectorSnapshot {
    std::string sector_id;
    std::string sector_name;
    Month month;
    double employees = 0.0;  // head count
    double avg_hourly_wage = 0.0;
    double avg_weekly_wage = 0.0;

    double wage(WageKind kind) const noexcept {
        return kind == WageKind::hourly ? avg_hourly_wage : avg_weekly_wage;
    }
};

// All sectors of one month, kept sorted by sector_id.
struct SnapshotSet {
    Month month;
    std::vector<SectorSnapshot> sectors;

    // Returns every invariant violation; empty when the set is well formed.
    std::vector<Issue> check() const;

    std::vector<std::string> roster() const;
    const SectorSnapshot* find(std::string_view sector_id) const;
    double total_employees() const;
};

enum class BlockStatus { retained, laid_off, entrant };

std::string_view to_string(BlockStatus status);

// A run of identical workers: same sector, same wage at both dates.
struct WorkerBlock {
    std::string sector_id;
    double wage_initial = 0.0;
    double wage_terminal = 0.0;
    double weight = 0.0;
    BlockStatus status = BlockStatus::retained;

    bool consistent() const noexcept;
};

struct WagePanel {
    Month month_a;
    Month month_b;
    WageKind wage_kind = WageKind::weekly;
    std::vector<WorkerBlock> blocks;

    double total_weight() const;
    double weight_with(BlockStatus status) const;
};

enum class GrowthVariant { democratic, plutocratic, employment_change, anonymous };

std::string_view to_string(GrowthVariant variant);
GrowthVariant parse_growth_variant(std::string_view text);

struct CurveResult {
    int fractiles = 5;
    std::vector<double> values;
    GrowthVariant variant = GrowthVariant::democratic;
    double population = 0.0;

    bool operator==(const CurveResult&) const = default;
};

struct DemographicShares {
    std::string group;
    std::map<std::string, double> shares;  // sector_id -> share in [0, 1]

    double share(std::string_view sector_id) const;
};

enum class Scope { all, bottom_quintile };

std::string_view to_string(Scope scope);
Scope parse_scope(std::string_view text);

struct GroupGrowthEstimate {
    std::string group;
    Scope scope = Scope::all;
    GrowthVariant variant = GrowthVariant::democratic;
    double mean_growth = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int replications = 0;
    std::uint64_t seed = 0;

    bool operator==(const GroupGrowthEstimate&) const = default;
};

struct SnapshotPair {
    SnapshotSet from;
    SnapshotSet to;
};

// Accepts the pair if both sets are individually valid, share an identical
// sector roster and refer to different months. Throws ValidationError listing
// every violation otherwise.
SnapshotPair validate_snapshot_pair(const SnapshotSet& a, const SnapshotSet& b);

} // namespace gic
