#pragma once

#include <string>
#include <vector>

#include "gic/model.hpp"

namespace gic::test {

inline SectorSnapshot sector(std::string id, Month month, double employees, double weekly, double hourly = 0.0) {
    SectorSnapshot s;
    s.sector_id = id;
    s.sector_name = "sector " + id;
    s.month = month;
    s.employees = employees;
    s.avg_weekly_wage = weekly;
    s.avg_hourly_wage = hourly > 0.0 ? hourly : weekly / 40.0;
    return s;
}

// (id, employees, weekly wage) triples for one month.
struct Row {
    std::string id;
    double employees;
    double weekly;
};

inline SnapshotSet snapshot(Month month, const std::vector<Row>& rows) {
    SnapshotSet set;
    set.month = month;
    for (const auto& r : rows) {
        set.sectors.push_back(sector(r.id, month, r.employees, r.weekly));
    }
    return set;
}

inline constexpr Month kMar{2020, 3};
inline constexpr Month kApr{2020, 4};

} // namespace gic::test
