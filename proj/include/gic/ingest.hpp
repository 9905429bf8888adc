#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gic/model.hpp"

namespace gic {

inline constexpr std::string_view kSectorSeriesHeader =
    "sector_id,sector_name,month,employees_thousands,avg_hourly_wage,avg_weekly_wage";
inline constexpr std::string_view kSharesHeader = "sector_id,group,share";

struct SectorSeries {
    std::map<Month, SnapshotSet> months;
    // Head counts per unit of the employees column (the file is in thousands).
    double employees_scale = 1000.0;

    const SnapshotSet& at(Month month) const;
};

// Parses the sector series format. Sectors inside every SnapshotSet are sorted
// by sector_id, so row order in the input never matters.
SectorSeries load_sector_series(std::istream& in, std::string_view source = "<stream>");
SectorSeries load_sector_series(const std::filesystem::path& path);

void write_sector_series(std::ostream& out, const SectorSeries& series);

using SharesByGroup = std::map<std::string, DemographicShares>;

// Parses the shares format and checks every group covers exactly `roster`.
SharesByGroup load_shares(std::istream& in, const std::vector<std::string>& roster,
                          std::string_view source = "<stream>");
SharesByGroup load_shares(const std::filesystem::path& path, const std::vector<std::string>& roster);

namespace detail {

// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_csv_line(std::string_view line);

// Parses a plain decimal ("-12.5", "3", "4e2"); rejects separators, blanks,
// trailing garbage and non-finite values.
bool parse_decimal(std::string_view text, double& out);

// Thousands -> head count. Decimal inputs with at most three fractional digits
// convert exactly.
bool parse_thousands(std::string_view text, double& heads);

std::string format_thousands(double heads);

} // namespace detail

} // namespace gic
