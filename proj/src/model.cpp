#include "gic/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/core.h>

namespace gic {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSnapshot: return "InvalidSnapshot";
    case ErrorCode::MismatchedSectors: return "MismatchedSectors";
    case ErrorCode::SameMonth: return "SameMonth";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::MissingMonth: return "MissingMonth";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateRow: return "DuplicateRow";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::MissingSector: return "MissingSector";
    case ErrorCode::ShareOutOfRange: return "ShareOutOfRange";
    case ErrorCode::ShareRosterMismatch: return "ShareRosterMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonIntegralWeight: return "NonIntegralWeight";
    case ErrorCode::EmptyPanel: return "EmptyPanel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveAverage: return "NonPositiveAverage";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptySample: return "EmptySample";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty()) {
            out += "; ";
        }
        out += issue.message;
    }
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(issues.empty() ? ErrorCode::InvalidArgument : issues.front().code, join_issues(issues)),
      issues_(std::move(issues)) {}

bool ValidationError::has(ErrorCode code) const noexcept {
    return std::any_of(issues_.begin(), issues_.end(),
                       [code](const Issue& issue) { return issue.code == code; });
}

ParseError::ParseError(ErrorCode code, std::size_t row, std::string column, const std::string& message)
    : Error(code, message), row_(row), column_(std::move(column)) {}

std::optional<Month> Month::try_parse(std::string_view text) noexcept {
    if (text.size() != 7 || text[4] != '-') {
        return std::nullopt;
    }
    auto digits = [&](std::size_t from, std::size_t count, int& out) {
        out = 0;
        for (std::size_t i = from; i < from + count; ++i) {
            if (text[i] < '0' || text[i] > '9') {
                return false;
            }
            out = out * 10 + (text[i] - '0');
        }
        return true;
    };
    Month m;
    if (!digits(0, 4, m.year) || !digits(5, 2, m.month) || m.month < 1 || m.month > 12) {
        return std::nullopt;
    }
    return m;
}

Month Month::parse(std::string_view text) {
    if (auto m = try_parse(text)) {
        return *m;
    }
    throw Error(ErrorCode::InvalidArgument, fmt::format("invalid month '{}' (expected YYYY-MM)", text));
}

std::string Month::str() const {
    return fmt::format("{:04d}-{:02d}", year, month);
}

std::string_view to_string(WageKind kind) {
    return kind == WageKind::hourly ? "hourly" : "weekly";
}

WageKind parse_wage_kind(std::string_view text) {
    if (text == "hourly") return WageKind::hourly;
    if (text == "weekly") return WageKind::weekly;
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown wage kind '{}'", text));
}

std::string_view to_string(BlockStatus status) {
    switch (status) {
    case BlockStatus::retained: return "retained";
    case BlockStatus::laid_off: return "laid_off";
    case BlockStatus::entrant: return "entrant";
    }
    return "unknown";
}

std::string_view to_string(GrowthVariant variant) {
    switch (variant) {
    case GrowthVariant::democratic: return "democratic";
    case GrowthVariant::plutocratic: return "plutocratic";
    case GrowthVariant::employment_change: return "employment_change";
    case GrowthVariant::anonymous: return "anonymous";
    }
    return "unknown";
}

GrowthVariant parse_growth_variant(std::string_view text) {
    if (text == "democratic") return GrowthVariant::democratic;
    if (text == "plutocratic") return GrowthVariant::plutocratic;
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown growth variant '{}'", text));
}

std::string_view to_string(Scope scope) {
    return scope == Scope::all ? "all" : "bottom_quintile";
}

Scope parse_scope(std::string_view text) {
    if (text == "all") return Scope::all;
    if (text == "bottom_quintile" || text == "bottom-quintile") return Scope::bottom_quintile;
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown scope '{}'", text));
}

std::vector<Issue> SnapshotSet::check() const {
    std::vector<Issue> issues;
    if (sectors.empty()) {
        issues.push_back({ErrorCode::EmptySet, fmt::format("snapshot set {} is empty", month.str())});
        return issues;
    }
    std::set<std::string_view> seen;
    for (const auto& s : sectors) {
        if (s.month != month) {
            issues.push_back({ErrorCode::InvalidSnapshot,
                              fmt::format("sector '{}' carries month {} inside set {}", s.sector_id,
                                          s.month.str(), month.str())});
        }
        if (!seen.insert(s.sector_id).second) {
            issues.push_back({ErrorCode::InvalidSnapshot,
                              fmt::format("sector '{}' appears twice in {}", s.sector_id, month.str())});
        }
        if (!(s.employees >= 0.0) || !std::isfinite(s.employees)) {
            issues.push_back({ErrorCode::InvalidSnapshot,
                              fmt::format("sector '{}' in {} has negative employees ({})", s.sector_id,
                                          month.str(), s.employees)});
        }
        if (s.employees > 0.0 &&
            !(s.avg_hourly_wage > 0.0 && s.avg_weekly_wage > 0.0 && std::isfinite(s.avg_hourly_wage) &&
              std::isfinite(s.avg_weekly_wage))) {
            issues.push_back({ErrorCode::InvalidSnapshot,
                              fmt::format("sector '{}' in {} has non-positive wages", s.sector_id,
                                          month.str())});
        }
    }
    return issues;
}

std::vector<std::string> SnapshotSet::roster() const {
    std::vector<std::string> ids;
    ids.reserve(sectors.size());
    for (const auto& s : sectors) {
        ids.push_back(s.sector_id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

const SectorSnapshot* SnapshotSet::find(std::string_view sector_id) const {
    auto it = std::find_if(sectors.begin(), sectors.end(),
                           [&](const SectorSnapshot& s) { return s.sector_id == sector_id; });
    return it == sectors.end() ? nullptr : &*it;
}

double SnapshotSet::total_employees() const {
    double total = 0.0;
    for (const auto& s : sectors) {
        total += s.employees;
    }
    return total;
}

bool WorkerBlock::consistent() const noexcept {
    if (!(weight > 0.0)) {
        return false;
    }
    switch (status) {
    case BlockStatus::retained: return wage_initial > 0.0 && wage_terminal > 0.0;
    case BlockStatus::laid_off: return wage_initial > 0.0 && wage_terminal == 0.0;
    case BlockStatus::entrant: return wage_initial == 0.0 && wage_terminal > 0.0;
    }
    return false;
}

double WagePanel::total_weight() const {
    double total = 0.0;
    for (const auto& b : blocks) {
        total += b.weight;
    }
    return total;
}

double WagePanel::weight_with(BlockStatus status) const {
    double total = 0.0;
    for (const auto& b : blocks) {
        if (b.status == status) {
            total += b.weight;
        }
    }
    return total;
}

double DemographicShares::share(std::string_view sector_id) const {
    auto it = shares.find(std::string(sector_id));
    if (it == shares.end()) {
        throw Error(ErrorCode::ShareRosterMismatch,
                    fmt::format("group '{}' has no share for sector '{}'", group, sector_id));
    }
    return it->second;
}

SnapshotPair validate_snapshot_pair(const SnapshotSet& a, const SnapshotSet& b) {
    std::vector<Issue> issues = a.check();
    auto more = b.check();
    issues.insert(issues.end(), more.begin(), more.end());

    if (a.month == b.month) {
        issues.push_back({ErrorCode::SameMonth, fmt::format("both snapshot sets refer to {}", a.month.str())});
    }
    if (!a.sectors.empty() && !b.sectors.empty()) {
        auto ra = a.roster();
        auto rb = b.roster();
        if (ra != rb) {
            std::vector<std::string> only_a;
            std::vector<std::string> only_b;
            std::set_difference(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(only_a));
            std::set_difference(rb.begin(), rb.end(), ra.begin(), ra.end(), std::back_inserter(only_b));
            issues.push_back({ErrorCode::MismatchedSectors,
                              fmt::format("sector rosters differ ({} has {} sectors, {} has {}; "
                                          "{} unmatched in {}, {} unmatched in {})",
                                          a.month.str(), ra.size(), b.month.str(), rb.size(),
                                          only_a.size(), a.month.str(), only_b.size(), b.month.str())});
        }
    }
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }

    SnapshotPair pair{a, b};
    auto by_id = [](const SectorSnapshot& x, const SectorSnapshot& y) { return x.sector_id < y.sector_id; };
    std::sort(pair.from.sectors.begin(), pair.from.sectors.end(), by_id);
    std::sort(pair.to.sectors.begin(), pair.to.sectors.end(), by_id);
    return pair;
}

} // namespace gic
