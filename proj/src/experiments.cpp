#include "swarmloc/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "swarmloc/csv.hpp"
#include "swarmloc/parallel.hpp"

namespace swarmloc::exp {

BenchResult run_bench(const BenchConfig& cfg) {
    if (cfg.functions.empty()) throw ConfigError("bench: no functions selected");
    if (cfg.variants.empty()) throw ConfigError("bench: no variants selected");
    if (cfg.repetitions == 0) throw ConfigError("bench: repetitions must be positive");
    BenchResult result;
    result.config = cfg;
    for (int id : cfg.functions) {
        std::vector<bench::CampaignResult> row;
        for (opt::Variant v : cfg.variants) {
            opt::OptimizerConfig oc = cfg.optimizer;
            oc.variant = v;
            row.push_back(bench::run_campaign(id, oc, cfg.repetitions, cfg.seed, cfg.threads));
        }
        result.campaigns.push_back(std::move(row));
    }
    return result;
}

void write_bench_summary(std::ostream& out, const BenchResult& result) {
    out << "function";
    for (opt::Variant v : result.config.variants) out << ',' << to_string(v) << "_avg," << to_string(v) << "_std";
    out << '\n';
    for (std::size_t f = 0; f < result.campaigns.size(); ++f) {
        out << 'F' << result.config.functions[f];
        for (const auto& c : result.campaigns[f]) out << ',' << csv::number(c.avg) << ',' << csv::number(c.std);
        out << '\n';
    }
}

void write_convergence(std::ostream& out, const BenchResult& result, opt::Variant variant) {
    const auto& variants = result.config.variants;
    const auto it = std::find(variants.begin(), variants.end(), variant);
    if (it == variants.end()) throw ConfigError("convergence: variant was not run");
    const auto v = static_cast<std::size_t>(it - variants.begin());
    csv::row(out, {"function", "iteration", "mean_best"});
    for (std::size_t f = 0; f < result.campaigns.size(); ++f) {
        const std::string name = "F" + std::to_string(result.config.functions[f]);
        const auto& conv = result.campaigns[f][v].convergence;
        for (std::size_t t = 0; t < conv.size(); ++t)
            csv::row(out, {name, std::to_string(t + 1), csv::number(conv[t])});
    }
}

std::string_view to_string(SweepKind k) {
    switch (k) {
        case SweepKind::AnchorRatio: return "anchors";
        case SweepKind::CommRadius: return "radius";
        case SweepKind::TotalNodes: return "nodes";
    }
    return "?";
}

SweepKind parse_sweep_kind(std::string_view name) {
    if (name == "anchors" || name == "anchor_ratio") return SweepKind::AnchorRatio;
    if (name == "radius" || name == "comm_radius") return SweepKind::CommRadius;
    if (name == "nodes" || name == "n_total") return SweepKind::TotalNodes;
    throw ConfigError("unknown sweep '" + std::string(name) + "' (expected anchors, radius or nodes)");
}

std::vector<double> default_values(SweepKind k) {
    switch (k) {
        case SweepKind::AnchorRatio: return {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
        case SweepKind::CommRadius: return {20, 25, 30, 35, 40};
        case SweepKind::TotalNodes: return {100, 150, 200, 250, 300};
    }
    return {};
}

void SweepConfig::validate() const {
    if (deployments_per_point == 0) throw ConfigError("sweep: deployments per point must be positive");
    if (methods.empty()) throw ConfigError("sweep: no methods selected");
    if (!(arena.width > 0.0 && arena.height > 0.0)) throw ConfigError("sweep: arena must have positive size");
    for (double v : grid()) {
        if (!std::isfinite(v)) throw ConfigError("sweep: values must be finite");
        switch (sweep) {
            case SweepKind::AnchorRatio:
                if (!(v > 0.0 && v <= 1.0)) throw ConfigError("sweep: anchor ratios must lie in (0, 1]");
                break;
            case SweepKind::CommRadius:
                if (!(v > 0.0)) throw ConfigError("sweep: radii must be positive");
                break;
            case SweepKind::TotalNodes:
                if (!(v >= 3.0 && v == std::floor(v))) throw ConfigError("sweep: node counts must be integers >= 3");
                break;
        }
    }
    if (!(anchor_ratio > 0.0 && anchor_ratio <= 1.0)) throw ConfigError("sweep: anchor ratio must lie in (0, 1]");
    if (!(comm_radius > 0.0)) throw ConfigError("sweep: radius must be positive");
    if (n_total < 3) throw ConfigError("sweep: at least three nodes are required");
    optimizer.validate();
}

std::uint64_t deployment_seed(std::uint64_t master, double sweep_value, std::size_t rep) {
    const auto bits = std::bit_cast<std::uint64_t>(sweep_value);
    return derive_seed(master, {static_cast<std::uint32_t>(bits), static_cast<std::uint32_t>(bits >> 32),
                                static_cast<std::uint32_t>(rep)});
}

namespace {

struct PointOutcome {
    std::vector<SweepRecord> records;
    std::optional<RangingRecord> ranging;
    std::optional<SweepWarning> warning;
};

PointOutcome run_point(const SweepConfig& cfg, std::size_t task, double value, std::size_t rep) {
    PointOutcome out;
    const std::uint64_t seed = deployment_seed(cfg.seed, value, rep);
    std::size_t n_total = cfg.n_total;
    double ratio = cfg.anchor_ratio;
    double radius = cfg.comm_radius;
    switch (cfg.sweep) {
        case SweepKind::AnchorRatio: ratio = value; break;
        case SweepKind::CommRadius: radius = value; break;
        case SweepKind::TotalNodes: n_total = static_cast<std::size_t>(value); break;
    }
    try {
        Rng rng(seed);
        const net::Deployment d = net::deploy(n_total, ratio, cfg.arena, radius, rng, cfg.max_deploy_attempts);

        net::HopOptions classic = cfg.hops;
        classic.mode = net::HopMode::Classic;
        const net::HopTable classic_table = net::min_hop_table(d, classic);
        const net::RangeEstimate classic_ranges = net::estimate_distances(d, classic_table);
        const net::HopTable table = net::min_hop_table(d, cfg.hops);
        const net::RangeEstimate ranges = net::estimate_distances(d, table);

        out.ranging = RangingRecord{task, value, seed, net::mean_range_error(d, classic_table, classic_ranges),
                                    net::mean_range_error(d, table, ranges)};
        for (loc::Method m : cfg.methods) {
            const loc::LocalizationResult r = loc::localize_all(d, table, ranges, m, cfg.optimizer, seed, 1);
            out.records.push_back({task, value, seed, m, r.ae, r.nre});
        }
    } catch (const net::DeploymentError& e) {
        out = PointOutcome{};
        out.warning = SweepWarning{task, value, seed, e.what()};
    } catch (const loc::DegenerateGeometryError& e) {
        out = PointOutcome{};
        out.warning = SweepWarning{task, value, seed, e.what()};
    }
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = cfg.grid();
    const std::size_t reps = cfg.deployments_per_point;
    std::vector<PointOutcome> outcomes(grid.size() * reps);
    parallel_for(outcomes.size(), cfg.threads,
                 [&](std::size_t task) { outcomes[task] = run_point(cfg, task, grid[task / reps], task % reps); });

    SweepResult result;
    result.config = cfg;
    for (auto& o : outcomes) {
        result.records.insert(result.records.end(), o.records.begin(), o.records.end());
        if (o.ranging) result.ranging.push_back(*o.ranging);
        if (o.warning) result.warnings.push_back(std::move(*o.warning));
    }
    return result;
}

std::vector<AggregateCell> aggregate(const SweepResult& result) {
    std::vector<AggregateCell> cells;
    for (double v : result.config.grid()) {
        for (loc::Method m : result.config.methods) {
            AggregateCell c{v, m, 0.0, 0.0, 0};
            for (const auto& r : result.records) {
                if (r.sweep_value != v || r.method != m) continue;
                c.mean_ae += r.ae;
                c.mean_nre += r.nre;
                ++c.count;
            }
            if (c.count > 0) {
                c.mean_ae /= static_cast<double>(c.count);
                c.mean_nre /= static_cast<double>(c.count);
            } else {
                c.mean_ae = c.mean_nre = std::nan("");
            }
            cells.push_back(c);
        }
    }
    return cells;
}

const AggregateCell& cell(const std::vector<AggregateCell>& cells, double sweep_value, loc::Method method) {
    for (const auto& c : cells) {
        if (c.sweep_value == sweep_value && c.method == method) return c;
    }
    throw std::out_of_range("no aggregate for " + std::string(loc::to_string(method)) + " at " +
                            csv::number(sweep_value));
}

void write_sweep_runs(std::ostream& out, const SweepResult& result) {
    csv::row(out, {"sweep_value", "method", "deployment_seed", "ae", "nre"});
    std::size_t w = 0;
    const auto warnings_before = [&](std::size_t task) {
        for (; w < result.warnings.size() && result.warnings[w].task < task; ++w) {
            const auto& warn = result.warnings[w];
            csv::row(out, {csv::number(warn.sweep_value), "warning", std::to_string(warn.deployment_seed), "", ""});
        }
    };
    for (const auto& r : result.records) {
        warnings_before(r.task);
        csv::row(out, {csv::number(r.sweep_value), loc::to_string(r.method), std::to_string(r.deployment_seed),
                       csv::number(r.ae), csv::number(r.nre)});
    }
    warnings_before(static_cast<std::size_t>(-1));
}

void write_sweep_table(std::ostream& out, const SweepResult& result, Metric metric) {
    const std::vector<double> grid = result.config.grid();
    const auto cells = aggregate(result);
    out << "method";
    for (double v : grid) out << ',' << csv::number(v);
    out << '\n';
    for (loc::Method m : result.config.methods) {
        out << loc::to_string(m);
        for (double v : grid) {
            const auto& c = cell(cells, v, m);
            out << ',' << (c.count == 0 ? std::string() : csv::number(metric == Metric::AE ? c.mean_ae : c.mean_nre));
        }
        out << '\n';
    }
}

void write_sweep_ranging(std::ostream& out, const SweepResult& result) {
    csv::row(out, {"sweep_value", "deployment_seed", "classic_error_m", "optimized_error_m"});
    for (const auto& r : result.ranging) {
        csv::row(out, {csv::number(r.sweep_value), std::to_string(r.deployment_seed), csv::number(r.classic_error),
                       csv::number(r.optimized_error)});
    }
}

void write_bench_gnuplot(std::ostream& out, const BenchResult& result, const std::string& convergence_prefix) {
    out << "set terminal pngcairo size 900,600\n"
           "set datafile separator ','\n"
           "set logscale y\n"
           "set xlabel 'iteration'\n"
           "set ylabel 'mean best fitness'\n";
    for (int id : result.config.functions) {
        out << "set output 'convergence_F" << id << ".png'\n"
            << "set title 'F" << id << "'\n"
            << "plot ";
        bool first = true;
        for (opt::Variant v : result.config.variants) {
            if (!first) out << ", ";
            first = false;
            out << "'" << convergence_prefix << to_string(v) << ".csv' using 2:($1 eq 'F" << id
                << "' ? ($3 > 0 ? $3 : 1e-300) : NaN) with lines title '" << to_string(v) << "'";
        }
        out << '\n';
    }
}

void write_sweep_gnuplot(std::ostream& out, const SweepResult& result, const std::string& nre_table_file) {
    const std::vector<double> grid = result.config.grid();
    const auto cells = aggregate(result);
    out << "# Mean NRE per method, as in " << nre_table_file << "\n$nre << EOD\n" << to_string(result.config.sweep);
    for (loc::Method m : result.config.methods) out << ',' << loc::to_string(m);
    out << '\n';
    for (double v : grid) {
        out << csv::number(v);
        for (loc::Method m : result.config.methods) out << ',' << csv::number(cell(cells, v, m).mean_nre);
        out << '\n';
    }
    out << "EOD\n"
           "set terminal pngcairo size 900,600\n"
           "set datafile separator ','\n"
           "set output 'sweep_"
        << to_string(result.config.sweep) << "_nre.png'\n"
        << "set xlabel '" << to_string(result.config.sweep) << "'\n"
        << "set ylabel 'NRE'\n"
        << "set key autotitle columnhead\n"
        << "plot for [col=2:" << result.config.methods.size() + 1 << "] $nre using 1:col with linespoints\n";
}

}  // namespace swarmloc::exp
