#include "gic/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

namespace gic {

namespace detail {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

bool parse_decimal(std::string_view text, double& out) {
    if (text.empty()) {
        return false;
    }
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_thousands(std::string_view text, double& heads) {
    double value = 0.0;
    if (!parse_decimal(text, value)) {
        return false;
    }
    // Exact path: [-]digits[.ddd]
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    auto all_digits = [](std::string_view d) {
        return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!whole.empty() && whole.size() <= 12 && frac.size() <= 3 && all_digits(whole) && all_digits(frac)) {
        std::int64_t units = 0;
        for (char c : whole) {
            units = units * 10 + (c - '0');
        }
        std::int64_t milli = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            milli = milli * 10 + (i < frac.size() ? frac[i] - '0' : 0);
        }
        std::int64_t total = units * 1000 + milli;
        heads = static_cast<double>(negative ? -total : total);
        return true;
    }
    heads = value * 1000.0;
    return true;
}

std::string format_thousands(double heads) {
    if (std::nearbyint(heads) == heads && std::fabs(heads) < 1e15) {
        auto total = static_cast<std::int64_t>(heads);
        bool negative = total < 0;
        std::int64_t magnitude = negative ? -total : total;
        std::string out = fmt::format("{}{}", negative ? "-" : "", magnitude / 1000);
        std::int64_t rest = magnitude % 1000;
        if (rest != 0) {
            std::string digits = fmt::format("{:03d}", rest);
            while (digits.back() == '0') {
                digits.pop_back();
            }
            out += '.';
            out += digits;
        }
        return out;
    }
    return fmt::format("{}", heads / 1000.0);
}

} // namespace detail

namespace {

constexpr std::array<std::string_view, 6> kSeriesColumns = {
    "sector_id", "sector_name", "month", "employees_thousands", "avg_hourly_wage", "avg_weekly_wage"};
constexpr std::array<std::string_view, 3> kSharesColumns = {"sector_id", "group", "share"};

// Line reader that strips CR, a leading UTF-8 BOM and tracks line numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        if (!std::getline(in_, line)) {
            return false;
        }
        ++number_;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (number_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        return true;
    }

    std::size_t number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

template <std::size_t N>
void check_header(const std::vector<std::string>& header, const std::array<std::string_view, N>& expected,
                  std::string_view source) {
    for (auto column : expected) {
        if (std::find(header.begin(), header.end(), column) == header.end()) {
            throw ParseError(ErrorCode::MissingColumn, 1, std::string(column),
                             fmt::format("{}:1: header is missing column '{}'", source, column));
        }
    }
    if (header.size() != N || !std::equal(expected.begin(), expected.end(), header.begin())) {
        throw ParseError(ErrorCode::ParseError, 1, "",
                         fmt::format("{}:1: unexpected header; expected '{}'", source,
                                     fmt::join(expected.begin(), expected.end(), ",")));
    }
}

template <std::size_t N>
void check_arity(const std::vector<std::string>& fields, const std::array<std::string_view, N>& expected,
                 std::size_t row, std::string_view source) {
    if (fields.size() < N) {
        auto column = expected[fields.size()];
        throw ParseError(ErrorCode::MissingColumn, row, std::string(column),
                         fmt::format("{}:{}: row is missing column '{}'", source, row, column));
    }
    if (fields.size() > N) {
        throw ParseError(ErrorCode::ParseError, row, "",
                         fmt::format("{}:{}: row has {} fields, expected {}", source, row, fields.size(), N));
    }
}

double number_field(const std::string& text, std::string_view column, std::size_t row, std::string_view source) {
    double value = 0.0;
    if (!detail::parse_decimal(text, value)) {
        throw ParseError(ErrorCode::ParseError, row, std::string(column),
                         fmt::format("{}:{}: column '{}' is not a decimal number: '{}'", source, row, column,
                                     text));
    }
    return value;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; });
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("cannot open '{}'", path.string()));
    }
    return in;
}

} // namespace

const SnapshotSet& SectorSeries::at(Month month) const {
    auto it = months.find(month);
    if (it == months.end()) {
        throw Error(ErrorCode::MissingMonth, fmt::format("month {} is not present in the series", month.str()));
    }
    return it->second;
}

SectorSeries load_sector_series(std::istream& in, std::string_view source) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError(ErrorCode::MissingColumn, 1, std::string(kSeriesColumns[0]),
                         fmt::format("{}: empty input, header row required", source));
    }
    check_header(detail::split_csv_line(line), kSeriesColumns, source);

    SectorSeries series;
    std::set<std::pair<std::string, Month>> seen;
    while (reader.next(line)) {
        if (blank(line)) {
            continue;
        }
        const std::size_t row = reader.number();
        auto fields = detail::split_csv_line(line);
        check_arity(fields, kSeriesColumns, row, source);

        SectorSnapshot snap;
        snap.sector_id = fields[0];
        snap.sector_name = fields[1];
        if (snap.sector_id.empty()) {
            throw ParseError(ErrorCode::ParseError, row, "sector_id",
                             fmt::format("{}:{}: empty sector_id", source, row));
        }
        auto month = Month::try_parse(fields[2]);
        if (!month) {
            throw ParseError(ErrorCode::ParseError, row, "month",
                             fmt::format("{}:{}: column 'month' is not YYYY-MM: '{}'", source, row, fields[2]));
        }
        snap.month = *month;
        if (!detail::parse_thousands(fields[3], snap.employees)) {
            throw ParseError(ErrorCode::ParseError, row, "employees_thousands",
                             fmt::format("{}:{}: column 'employees_thousands' is not a decimal number: '{}'",
                                         source, row, fields[3]));
        }
        snap.avg_hourly_wage = number_field(fields[4], "avg_hourly_wage", row, source);
        snap.avg_weekly_wage = number_field(fields[5], "avg_weekly_wage", row, source);

        if (!seen.emplace(snap.sector_id, snap.month).second) {
            throw ParseError(ErrorCode::DuplicateRow, row, "",
                             fmt::format("{}:{}: duplicate row for sector '{}' in {}", source, row,
                                         snap.sector_id, snap.month.str()));
        }
        auto& set = series.months[snap.month];
        set.month = snap.month;
        set.sectors.push_back(std::move(snap));
    }
    for (auto& [month, set] : series.months) {
        std::sort(set.sectors.begin(), set.sectors.end(),
                  [](const SectorSnapshot& a, const SectorSnapshot& b) { return a.sector_id < b.sector_id; });
    }
    return series;
}

SectorSeries load_sector_series(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return load_sector_series(in, path.string());
}

void write_sector_series(std::ostream& out, const SectorSeries& series) {
    auto quote = [](const std::string& text) {
        if (text.find_first_of(",\"") == std::string::npos) {
            return text;
        }
        std::string q = "\"";
        for (char c : text) {
            q += c;
            if (c == '"') {
                q += '"';
            }
        }
        return q + "\"";
    };
    out << kSectorSeriesHeader << '\n';
    for (const auto& [month, set] : series.months) {
        for (const auto& s : set.sectors) {
            out << fmt::format("{},{},{},{},{},{}\n", quote(s.sector_id), quote(s.sector_name), month.str(),
                               detail::format_thousands(s.employees), s.avg_hourly_wage, s.avg_weekly_wage);
        }
    }
}

SharesByGroup load_shares(std::istream& in, const std::vector<std::string>& roster, std::string_view source) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError(ErrorCode::MissingColumn, 1, std::string(kSharesColumns[0]),
                         fmt::format("{}: empty input, header row required", source));
    }
    check_header(detail::split_csv_line(line), kSharesColumns, source);

    const std::set<std::string> known(roster.begin(), roster.end());
    SharesByGroup groups;
    while (reader.next(line)) {
        if (blank(line)) {
            continue;
        }
        const std::size_t row = reader.number();
        auto fields = detail::split_csv_line(line);
        check_arity(fields, kSharesColumns, row, source);
        const std::string& sector = fields[0];
        const std::string& group = fields[1];
        if (group.empty()) {
            throw ParseError(ErrorCode::ParseError, row, "group", fmt::format("{}:{}: empty group", source, row));
        }
        double share = number_field(fields[2], "share", row, source);
        if (share < 0.0 || share > 1.0) {
            throw ParseError(ErrorCode::ShareOutOfRange, row, "share",
                             fmt::format("{}:{}: share {} for group '{}' in sector '{}' is outside [0, 1]",
                                         source, row, fields[2], group, sector));
        }
        if (!known.count(sector)) {
            throw ParseError(ErrorCode::ShareRosterMismatch, row, "sector_id",
                             fmt::format("{}:{}: sector '{}' is not in the series roster", source, row, sector));
        }
        auto& entry = groups[group];
        entry.group = group;
        if (!entry.shares.emplace(sector, share).second) {
            throw ParseError(ErrorCode::DuplicateRow, row, "",
                             fmt::format("{}:{}: duplicate share for group '{}' in sector '{}'", source, row,
                                         group, sector));
        }
    }
    for (const auto& [name, shares] : groups) {
        std::vector<std::string> missing;
        for (const auto& id : known) {
            if (!shares.shares.count(id)) {
                missing.push_back(id);
            }
        }
        if (!missing.empty()) {
            throw Error(ErrorCode::MissingSector,
                        fmt::format("{}: group '{}' has no share for sector(s) {}", source, name,
                                    fmt::join(missing.begin(), missing.end(), ", ")));
        }
    }
    return groups;
}

SharesByGroup load_shares(const std::filesystem::path& path, const std::vector<std::string>& roster) {
    auto in = open_or_throw(path);
    return load_shares(in, roster, path.string());
}

} // namespace gic
