#include "gic/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <variant>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "gic/curves.hpp"
#include "gic/demographics.hpp"
#include "gic/ingest.hpp"
#include "gic/panel.hpp"
#include "gic/withinsector.hpp"

namespace gic::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20200412;

using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                if (v.find_first_of(",\"\n") == std::string::npos) {
                    return v;
                }
                std::string q = "\"";
                for (char c : v) {
                    q += c;
                    if (c == '"') q += '"';
                }
                return q + "\"";
            } else {
                return fmt::format("{}", v);
            }
        },
        cell);
}

void emit(const Table& table, const std::string& format, std::ostream& out) {
    if (format == "json") {
        auto array = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
            }
            array.push_back(std::move(obj));
        }
        out << array.dump(2) << '\n';
        return;
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << csv_cell(row[c]);
        }
        out << '\n';
    }
}

struct PeriodArgs {
    std::string series;
    std::string from;
    std::string to;
    std::string wage = "weekly";
    std::string format = "csv";
};

void add_period_options(CLI::App* cmd, PeriodArgs& args, bool with_wage = true) {
    cmd->add_option("series", args.series, "Sector series CSV")->required();
    cmd->add_option("--from", args.from, "Initial month (YYYY-MM)")->required();
    cmd->add_option("--to", args.to, "Terminal month (YYYY-MM)")->required();
    if (with_wage) {
        cmd->add_option("--wage", args.wage, "Wage column")
            ->check(CLI::IsMember({"weekly", "hourly"}))
            ->capture_default_str();
    }
    cmd->add_option("--format", args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

struct LoadedPair {
    SectorSeries series;
    SnapshotPair pair;
};

LoadedPair load_pair(const PeriodArgs& args) {
    LoadedPair loaded;
    loaded.series = load_sector_series(std::filesystem::path(args.series));
    const auto from = Month::parse(args.from);
    const auto to = Month::parse(args.to);
    loaded.pair = validate_snapshot_pair(loaded.series.at(from), loaded.series.at(to));
    return loaded;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GIC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("GIC_SEED is not an unsigned integer: '{}'", env));
        }
    }
    return kDefaultSeed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Growth incidence curves from sector-level employment and wage series", "gic"};
    app.require_subcommand(1);

    PeriodArgs nagic_args;
    int nagic_fractiles = 5;
    std::string nagic_variant = "democratic";
    auto* nagic_cmd = app.add_subcommand("nagic", "Non-anonymous growth incidence curve");
    add_period_options(nagic_cmd, nagic_args);
    nagic_cmd->add_option("--fractiles", nagic_fractiles, "Number of fractiles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    nagic_cmd->add_option("--variant", nagic_variant, "Growth variant")
        ->check(CLI::IsMember({"democratic", "plutocratic"}))
        ->capture_default_str();

    PeriodArgs emp_args;
    int emp_fractiles = 5;
    auto* emp_cmd = app.add_subcommand("employment", "Employment change by initial-wage fractile");
    add_period_options(emp_cmd, emp_args);
    emp_cmd->add_option("--fractiles", emp_fractiles, "Number of fractiles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    PeriodArgs sum_args;
    auto* sum_cmd = app.add_subcommand("summary", "Employment and average-wage aggregates");
    add_period_options(sum_cmd, sum_args);

    PeriodArgs grp_args;
    std::string shares_path;
    std::string grp_scope = "all";
    std::string grp_variant = "democratic";
    int reps = 1000;
    double ci = 0.95;
    std::uint64_t grp_seed = 0;
    unsigned grp_threads = 0;
    std::vector<std::string> only_groups;
    auto* grp_cmd = app.add_subcommand("groups", "Monte Carlo wage growth by demographic group");
    add_period_options(grp_cmd, grp_args);
    grp_cmd->add_option("shares", shares_path, "Demographic shares CSV")->required();
    grp_cmd->add_option("--scope", grp_scope, "Population scope")
        ->check(CLI::IsMember({"all", "bottom-quintile", "bottom_quintile"}))
        ->capture_default_str();
    grp_cmd->add_option("--variant", grp_variant, "Growth variant")
        ->check(CLI::IsMember({"democratic", "plutocratic"}))
        ->capture_default_str();
    grp_cmd->add_option("--reps", reps, "Random assignments per group")
        ->check(CLI::Range(2, 100000000))
        ->capture_default_str();
    grp_cmd->add_option("--ci", ci, "Confidence level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    auto* grp_seed_opt = grp_cmd->add_option("--seed", grp_seed, "Master seed (default: $GIC_SEED or built-in)");
    grp_cmd->add_option("--threads", grp_threads, "Worker threads (0 = all cores)")->capture_default_str();
    grp_cmd->add_option("--group", only_groups, "Restrict to these groups");

    PeriodArgs sim_args;
    double gini = 0.4;
    int sims = 1000;
    double scale = 1e-4;
    int sim_fractiles = 5;
    std::uint64_t sim_seed = 0;
    unsigned sim_threads = 0;
    auto* sim_cmd = app.add_subcommand("simulate", "Lognormal within-sector simulated anonymous GIC");
    add_period_options(sim_cmd, sim_args);
    sim_cmd->add_option("--gini", gini, "Within-sector Gini coefficient")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sim_cmd->add_option("--sims", sims, "Number of simulations")->check(CLI::PositiveNumber)->capture_default_str();
    sim_cmd->add_option("--scale", scale, "Simulated workers per real worker")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_cmd->add_option("--fractiles", sim_fractiles, "Number of fractiles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "Master seed (default: $GIC_SEED or built-in)");
    sim_cmd->add_option("--threads", sim_threads, "Worker threads (0 = all cores)")->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("gic");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        Table table;
        std::string format = "csv";
        if (nagic_cmd->parsed()) {
            format = nagic_args.format;
            auto loaded = load_pair(nagic_args);
            auto panel = build_panel(loaded.pair, parse_wage_kind(nagic_args.wage));
            auto curve = nagic(rank_panel(panel), nagic_fractiles, parse_growth_variant(nagic_variant));
            table.columns = {"fractile", "growth"};
            for (std::size_t f = 0; f < curve.values.size(); ++f) {
                table.rows.push_back({static_cast<long long>(f + 1), curve.values[f]});
            }
        } else if (emp_cmd->parsed()) {
            format = emp_args.format;
            auto loaded = load_pair(emp_args);
            auto panel = build_panel(loaded.pair, parse_wage_kind(emp_args.wage));
            auto curve = employment_change_by_fractile(rank_panel(panel), emp_fractiles);
            table.columns = {"fractile", "employment_change"};
            for (std::size_t f = 0; f < curve.values.size(); ++f) {
                table.rows.push_back({static_cast<long long>(f + 1), curve.values[f]});
            }
        } else if (sum_cmd->parsed()) {
            format = sum_args.format;
            auto loaded = load_pair(sum_args);
            auto s = summary(build_panel(loaded.pair, parse_wage_kind(sum_args.wage)));
            table.columns = {"metric", "value"};
            table.rows = {
                {std::string("employment_a"), s.employment_a},
                {std::string("employment_b"), s.employment_b},
                {std::string("employment_change"), s.employment_change()},
                {std::string("mean_wage_a"), s.mean_wage_a},
                {std::string("mean_wage_b_excluding_zeros"), s.mean_wage_b_excluding_zeros},
                {std::string("mean_wage_b_including_zeros"), s.mean_wage_b_including_zeros},
                {std::string("change_excluding_zeros"), s.change_excluding_zeros},
                {std::string("change_including_zeros"), s.change_including_zeros},
            };
        } else if (grp_cmd->parsed()) {
            format = grp_args.format;
            auto loaded = load_pair(grp_args);
            auto panel = build_panel(loaded.pair, parse_wage_kind(grp_args.wage));
            auto shares = load_shares(std::filesystem::path(shares_path), loaded.pair.from.roster());
            for (const auto& name : only_groups) {
                if (!shares.count(name)) {
                    throw Error(ErrorCode::InvalidArgument, fmt::format("group '{}' is not in {}", name, shares_path));
                }
            }
            MonteCarloOptions options;
            options.replications = reps;
            options.ci_level = ci;
            options.master_seed = grp_seed_opt->count() ? grp_seed : default_seed();
            options.threads = grp_threads;
            const auto scope = parse_scope(grp_scope);
            const auto variant = parse_growth_variant(grp_variant);
            table.columns = {"group", "mean_growth", "ci_low", "ci_high"};
            for (const auto& [name, group] : shares) {
                if (!only_groups.empty() &&
                    std::find(only_groups.begin(), only_groups.end(), name) == only_groups.end()) {
                    continue;
                }
                auto est = monte_carlo_group_growth(panel, group, scope, variant, options);
                table.rows.push_back({name, est.mean_growth, est.ci_low, est.ci_high});
            }
        } else if (sim_cmd->parsed()) {
            format = sim_args.format;
            auto loaded = load_pair(sim_args);
            SimulationOptions options;
            options.gini = gini;
            options.simulations = sims;
            options.workers_per_sector_scale = scale;
            options.fractiles = sim_fractiles;
            options.master_seed = sim_seed_opt->count() ? sim_seed : default_seed();
            options.wage_kind = parse_wage_kind(sim_args.wage);
            options.threads = sim_threads;
            auto result = simulated_anonymous_gic(loaded.pair.from, loaded.pair.to, options);
            table.columns = {"fractile", "sector_avg_gic", "simulated_gic", "dispersion"};
            for (std::size_t f = 0; f < result.simulated.values.size(); ++f) {
                table.rows.push_back({static_cast<long long>(f + 1), result.sector_average.values[f],
                                      result.simulated.values[f], result.dispersion[f]});
            }
        }
        emit(table, format, out);
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

} // namespace gic::cli
