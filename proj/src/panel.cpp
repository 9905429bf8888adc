#include "gic/panel.hpp"

#include <cmath>

#include <fmt/core.h>

namespace gic {

WagePanel build_panel(const SnapshotPair& pair, WageKind wage_kind) {
    WagePanel panel;
    panel.month_a = pair.from.month;
    panel.month_b = pair.to.month;
    panel.wage_kind = wage_kind;
    panel.blocks.reserve(pair.from.sectors.size() * 2);

    // Both rosters are sorted by sector_id and identical after validation.
    for (std::size_t i = 0; i < pair.from.sectors.size(); ++i) {
        const auto& a = pair.from.sectors[i];
        const auto& b = pair.to.sectors[i];
        const double w_a = a.wage(wage_kind);
        const double w_b = b.wage(wage_kind);
        const double n_a = a.employees;
        const double n_b = b.employees;

        const double retained = std::min(n_a, n_b);
        if (retained > 0.0) {
            panel.blocks.push_back({a.sector_id, w_a, w_b, retained, BlockStatus::retained});
        }
        if (n_a > n_b) {
            panel.blocks.push_back({a.sector_id, w_a, 0.0, n_a - n_b, BlockStatus::laid_off});
        } else if (n_b > n_a) {
            panel.blocks.push_back({a.sector_id, 0.0, w_b, n_b - n_a, BlockStatus::entrant});
        }
    }
    return panel;
}

WagePanel build_panel(const SnapshotSet& a, const SnapshotSet& b, WageKind wage_kind) {
    return build_panel(validate_snapshot_pair(a, b), wage_kind);
}

std::vector<WorkerRecord> expand_panel(const WagePanel& panel, std::size_t max_workers) {
    double total = 0.0;
    for (const auto& block : panel.blocks) {
        if (std::nearbyint(block.weight) != block.weight) {
            throw Error(ErrorCode::NonIntegralWeight,
                        fmt::format("block for sector '{}' has fractional weight {}", block.sector_id,
                                    block.weight));
        }
        total += block.weight;
    }
    if (total > static_cast<double>(max_workers)) {
        throw Error(ErrorCode::TooLarge,
                    fmt::format("panel holds {} workers, more than the limit of {}", total, max_workers));
    }

    std::vector<WorkerRecord> workers;
    workers.reserve(static_cast<std::size_t>(total));
    for (const auto& block : panel.blocks) {
        const auto count = static_cast<std::size_t>(block.weight);
        for (std::size_t k = 0; k < count; ++k) {
            workers.push_back({block.sector_id, block.wage_initial, block.wage_terminal});
        }
    }
    return workers;
}

} // namespace gic
