#include "gic/curves.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

namespace gic {

namespace {

void require_fractiles(int fractiles) {
    if (fractiles < 1) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("fractile count must be >= 1, got {}", fractiles));
    }
}

std::vector<double> cumulative_of(const RankedPanel& ranked) {
    std::vector<double> c;
    c.reserve(ranked.entries.size());
    for (const auto& e : ranked.entries) {
        c.push_back(e.cumulative);
    }
    return c;
}

} // namespace

RankedPanel rank_panel(const WagePanel& panel) {
    RankedPanel ranked;
    for (std::size_t i = 0; i < panel.blocks.size(); ++i) {
        const auto& b = panel.blocks[i];
        if (b.status == BlockStatus::entrant || !(b.weight > 0.0)) {
            continue;
        }
        ranked.entries.push_back({b, i, 0.0});
    }
    if (ranked.entries.empty()) {
        throw Error(ErrorCode::EmptyPanel, "panel has no ranked (time-A) workers");
    }
    std::sort(ranked.entries.begin(), ranked.entries.end(), [](const RankedEntry& x, const RankedEntry& y) {
        if (x.block.wage_initial != y.block.wage_initial) {
            return x.block.wage_initial < y.block.wage_initial;
        }
        if (x.block.sector_id != y.block.sector_id) {
            return x.block.sector_id < y.block.sector_id;
        }
        return x.block.status < y.block.status;
    });
    double running = 0.0;
    for (auto& e : ranked.entries) {
        running += e.block.weight;
        e.cumulative = running;
    }
    ranked.total_weight = running;
    return ranked;
}

std::vector<std::vector<FractileSlice>> fractile_slices(std::span<const double> cumulative, int fractiles) {
    require_fractiles(fractiles);
    std::vector<std::vector<FractileSlice>> slices(static_cast<std::size_t>(fractiles));
    if (cumulative.empty()) {
        return slices;
    }
    const double total = cumulative.back();
    auto boundary = [&](int f) { return f == fractiles ? total : total * f / fractiles; };

    int f = 1;
    double lo = 0.0;
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        const double hi = cumulative[i];
        while (lo < hi && f <= fractiles) {
            const double edge = boundary(f);
            if (edge <= lo) {
                ++f;
                continue;
            }
            const double top = std::min(hi, edge);
            slices[static_cast<std::size_t>(f - 1)].push_back({i, top - lo});
            lo = top;
            if (lo >= edge) {
                ++f;
            }
        }
        lo = hi;
    }
    return slices;
}

CurveResult nagic(const RankedPanel& ranked, int fractiles, GrowthVariant variant) {
    require_fractiles(fractiles);
    if (variant != GrowthVariant::democratic && variant != GrowthVariant::plutocratic) {
        throw Error(ErrorCode::InvalidArgument, "nagic supports the democratic and plutocratic variants only");
    }
    if (ranked.entries.empty()) {
        throw Error(ErrorCode::EmptyPanel, "ranked panel is empty");
    }
    const auto cumulative = cumulative_of(ranked);
    const auto slices = fractile_slices(cumulative, fractiles);

    CurveResult result;
    result.fractiles = fractiles;
    result.variant = variant;
    result.population = ranked.total_weight;
    result.values.reserve(slices.size());
    for (const auto& fractile : slices) {
        double weight = 0.0;
        double growth = 0.0;
        double initial = 0.0;
        double terminal = 0.0;
        for (const auto& slice : fractile) {
            const auto& b = ranked.entries[slice.item].block;
            weight += slice.weight;
            growth += slice.weight * (b.wage_terminal / b.wage_initial - 1.0);
            initial += slice.weight * b.wage_initial;
            terminal += slice.weight * b.wage_terminal;
        }
        result.values.push_back(variant == GrowthVariant::democratic ? growth / weight
                                                                     : terminal / initial - 1.0);
    }
    return result;
}

CurveResult employment_change_by_fractile(const RankedPanel& ranked, int fractiles) {
    require_fractiles(fractiles);
    if (ranked.entries.empty()) {
        throw Error(ErrorCode::EmptyPanel, "ranked panel is empty");
    }
    const auto slices = fractile_slices(cumulative_of(ranked), fractiles);

    CurveResult result;
    result.fractiles = fractiles;
    result.variant = GrowthVariant::employment_change;
    result.population = ranked.total_weight;
    for (const auto& fractile : slices) {
        double weight = 0.0;
        double laid_off = 0.0;
        for (const auto& slice : fractile) {
            weight += slice.weight;
            if (ranked.entries[slice.item].block.status == BlockStatus::laid_off) {
                laid_off += slice.weight;
            }
        }
        result.values.push_back(laid_off == 0.0 ? 0.0 : -laid_off / weight);
    }
    return result;
}

CurveResult anonymous_gic(std::span<const double> fractile_means_a, std::span<const double> fractile_means_b) {
    if (fractile_means_a.size() != fractile_means_b.size() || fractile_means_a.empty()) {
        throw Error(ErrorCode::LengthMismatch,
                    fmt::format("fractile counts differ or are empty ({} vs {})", fractile_means_a.size(),
                                fractile_means_b.size()));
    }
    CurveResult result;
    result.fractiles = static_cast<int>(fractile_means_a.size());
    result.variant = GrowthVariant::anonymous;
    for (std::size_t f = 0; f < fractile_means_a.size(); ++f) {
        const double a = fractile_means_a[f];
        const double b = fractile_means_b[f];
        if (!(a > 0.0) || !(b > 0.0)) {
            throw Error(ErrorCode::NonPositiveAverage,
                        fmt::format("fractile {} has a non-positive average ({} / {})", f + 1, a, b));
        }
        result.values.push_back(b / a - 1.0);
    }
    return result;
}

std::vector<double> fractile_means(std::span<const double> values, std::span<const double> weights,
                                   int fractiles) {
    require_fractiles(fractiles);
    if (values.size() != weights.size()) {
        throw Error(ErrorCode::LengthMismatch, "values and weights differ in length");
    }
    std::vector<std::size_t> order;
    order.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] > 0.0) {
            order.push_back(i);
        }
    }
    if (order.empty()) {
        throw Error(ErrorCode::EmptySample, "no positive-weight values to rank");
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return values[x] != values[y] ? values[x] < values[y] : x < y;
    });
    std::vector<double> cumulative;
    cumulative.reserve(order.size());
    double running = 0.0;
    for (auto i : order) {
        running += weights[i];
        cumulative.push_back(running);
    }
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(fractiles));
    for (const auto& fractile : fractile_slices(cumulative, fractiles)) {
        double weight = 0.0;
        double sum = 0.0;
        for (const auto& slice : fractile) {
            weight += slice.weight;
            sum += slice.weight * values[order[slice.item]];
        }
        means.push_back(sum / weight);
    }
    return means;
}

std::vector<double> sector_average_fractile_means(const SnapshotSet& set, WageKind wage_kind, int fractiles) {
    std::vector<double> wages;
    std::vector<double> weights;
    for (const auto& s : set.sectors) {
        wages.push_back(s.wage(wage_kind));
        weights.push_back(s.employees);
    }
    return fractile_means(wages, weights, fractiles);
}

PanelSummary summary(const WagePanel& panel) {
    PanelSummary s;
    double wage_bill_a = 0.0;
    double wage_bill_b = 0.0;
    double everyone = 0.0;
    for (const auto& b : panel.blocks) {
        everyone += b.weight;
        if (b.status != BlockStatus::entrant) {
            s.employment_a += b.weight;
            wage_bill_a += b.weight * b.wage_initial;
        }
        if (b.status != BlockStatus::laid_off) {
            s.employment_b += b.weight;
            wage_bill_b += b.weight * b.wage_terminal;
        }
    }
    if (!(s.employment_a > 0.0)) {
        throw Error(ErrorCode::EmptyPanel, "panel has no workers at the initial date");
    }
    s.mean_wage_a = wage_bill_a / s.employment_a;
    s.mean_wage_b_excluding_zeros = s.employment_b > 0.0 ? wage_bill_b / s.employment_b : 0.0;
    s.mean_wage_b_including_zeros = wage_bill_b / everyone;
    s.change_excluding_zeros = s.mean_wage_b_excluding_zeros / s.mean_wage_a - 1.0;
    s.change_including_zeros = s.mean_wage_b_including_zeros / s.mean_wage_a - 1.0;
    return s;
}

} // namespace gic
