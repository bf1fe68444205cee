#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmloc/benchmarks.hpp"
#include "swarmloc/csv.hpp"
#include "swarmloc/experiments.hpp"
#include "swarmloc/localization.hpp"
#include "swarmloc/netsim.hpp"
#include "swarmloc/optimizer.hpp"

namespace fs = std::filesystem;
using namespace swarmloc;

namespace {

struct Options {
    std::uint64_t seed = 1;
    std::size_t pop = 40;
    std::size_t iters = 200;
    std::string variant = "both";
    std::string functions = "F1-F23";
    std::size_t reps = 30;
    std::string sweep = "anchors";
    std::vector<double> values;
    std::size_t n_total = 100;
    double anchor_ratio = 0.30;
    double radius = 30.0;
    double width = 100.0;
    double height = 100.0;
    std::vector<std::string> methods{"IBWOL", "BWOL", "Multilateration"};
    std::string hop_mode = "optimized";
    std::string scope = "all";
    double rssi_sigma = 0.0;
    std::string out = ".";
    std::string deployment = "deployment.txt";
    bool gnuplot = false;
    std::size_t threads = 0;
};

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

std::vector<opt::Variant> variants_of(const std::string& name) {
    if (name == "both") return {opt::Variant::IBWO, opt::Variant::BWO};
    return {opt::parse_variant(name)};
}

std::vector<loc::Method> methods_of(const std::vector<std::string>& names) {
    std::vector<loc::Method> out;
    for (const auto& n : names) out.push_back(loc::parse_method(n));
    return out;
}

opt::OptimizerConfig optimizer_of(const Options& o) {
    opt::OptimizerConfig cfg;
    cfg.population_size = o.pop;
    cfg.max_iterations = o.iters;
    cfg.seed = o.seed;
    return cfg;
}

net::HopOptions hops_of(const Options& o) {
    net::HopOptions h;
    if (o.hop_mode == "classic") h.mode = net::HopMode::Classic;
    else if (o.hop_mode == "optimized") h.mode = net::HopMode::Optimized;
    else throw ConfigError("unknown hop mode '" + o.hop_mode + "' (expected classic or optimized)");
    if (o.scope == "all") h.scope = net::FractionalScope::AllEdges;
    else if (o.scope == "anchor") h.scope = net::FractionalScope::AnchorAdjacent;
    else throw ConfigError("unknown fractional scope '" + o.scope + "' (expected all or anchor)");
    h.noise.sigma_db = o.rssi_sigma;
    h.noise.seed = derive_seed(o.seed, {0x52535349u});
    return h;
}

int cmd_bench(const Options& o) {
    exp::BenchConfig cfg;
    cfg.functions = bench::parse_function_list(o.functions);
    cfg.variants = variants_of(o.variant);
    cfg.repetitions = o.reps;
    cfg.seed = o.seed;
    cfg.optimizer = optimizer_of(o);
    cfg.threads = o.threads;
    cfg.optimizer.validate();

    const exp::BenchResult result = exp::run_bench(cfg);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    {
        auto f = open_output(dir / "bench_summary.csv");
        exp::write_bench_summary(f, result);
    }
    for (opt::Variant v : cfg.variants) {
        auto f = open_output(dir / ("convergence_" + std::string(opt::to_string(v)) + ".csv"));
        exp::write_convergence(f, result, v);
    }
    if (o.gnuplot) {
        auto f = open_output(dir / "bench.gp");
        exp::write_bench_gnuplot(f, result, "convergence_");
    }
    exp::write_bench_summary(std::cout, result);
    return 0;
}

int cmd_sweep(const Options& o) {
    exp::SweepConfig cfg;
    cfg.sweep = exp::parse_sweep_kind(o.sweep);
    cfg.values = o.values;
    cfg.n_total = o.n_total;
    cfg.anchor_ratio = o.anchor_ratio;
    cfg.comm_radius = o.radius;
    cfg.arena = {o.width, o.height};
    cfg.deployments_per_point = o.reps;
    cfg.methods = methods_of(o.methods);
    cfg.seed = o.seed;
    cfg.optimizer = optimizer_of(o);
    cfg.hops = hops_of(o);
    cfg.threads = o.threads;

    const exp::SweepResult result = exp::run_sweep(cfg);
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << exp::to_string(cfg.sweep) << '=' << csv::number(w.sweep_value) << " seed "
                  << w.deployment_seed << ": " << w.message << '\n';
    }
    const fs::path dir(o.out);
    fs::create_directories(dir);
    const std::string stem = "sweep_" + std::string(exp::to_string(cfg.sweep));
    {
        auto f = open_output(dir / (stem + "_runs.csv"));
        exp::write_sweep_runs(f, result);
    }
    {
        auto f = open_output(dir / (stem + "_ae.csv"));
        exp::write_sweep_table(f, result, exp::Metric::AE);
    }
    {
        auto f = open_output(dir / (stem + "_nre.csv"));
        exp::write_sweep_table(f, result, exp::Metric::NRE);
    }
    {
        auto f = open_output(dir / (stem + "_ranging.csv"));
        exp::write_sweep_ranging(f, result);
    }
    if (o.gnuplot) {
        auto f = open_output(dir / (stem + ".gp"));
        exp::write_sweep_gnuplot(f, result, stem + "_nre.csv");
    }
    std::cout << "mean AE (m)\n";
    exp::write_sweep_table(std::cout, result, exp::Metric::AE);
    std::cout << "mean NRE\n";
    exp::write_sweep_table(std::cout, result, exp::Metric::NRE);
    return 0;
}

int cmd_deploy(const Options& o) {
    Rng rng(o.seed);
    const net::Deployment d = net::deploy(o.n_total, o.anchor_ratio, {o.width, o.height}, o.radius, rng);
    const fs::path path = fs::path(o.out) / o.deployment;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto f = open_output(path);
    net::write_deployment(f, d);
    std::cout << "wrote " << path.string() << " (" << d.size() << " nodes, " << d.anchors().size() << " anchors)\n";
    return 0;
}

int cmd_locate(const Options& o) {
    fs::path path(o.deployment);
    if (!fs::exists(path)) path = fs::path(o.out) / o.deployment;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    const net::Deployment d = net::read_deployment(in);
    const net::HopTable table = net::min_hop_table(d, hops_of(o));
    const net::RangeEstimate ranges = net::estimate_distances(d, table);

    std::vector<loc::LocalizationResult> results;
    for (loc::Method m : methods_of(o.methods)) {
        results.push_back(loc::localize_all(d, table, ranges, m, optimizer_of(o), o.seed, o.threads));
        std::cout << loc::to_string(m) << ": AE " << csv::number(results.back().ae) << " m, NRE "
                  << csv::number(results.back().nre) << '\n';
    }
    fs::create_directories(o.out);
    auto f = open_output(fs::path(o.out) / "locate.csv");
    loc::write_result_csv(f, results);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swarm-robot localization with beluga whale optimization"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from a key=value file; command-line values take precedence");

    Options o;
    app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
    app.add_option("--pop", o.pop, "Population size")->capture_default_str();
    app.add_option("--iters", o.iters, "Maximum iterations")->capture_default_str();
    app.add_option("--variant", o.variant, "Benchmark variants: ibwo, bwo or both")->capture_default_str();
    app.add_option("--functions", o.functions, "Benchmark functions, e.g. F1-F13,F20")->capture_default_str();
    app.add_option("--reps", o.reps, "Repetitions per function or deployments per sweep point")
        ->capture_default_str();
    app.add_option("--sweep", o.sweep, "Sweep parameter: anchors, radius or nodes")->capture_default_str();
    app.add_option("--values", o.values, "Sweep values (default grid when omitted)")->delimiter(',');
    app.add_option("--n-total", o.n_total, "Total robots")->capture_default_str();
    app.add_option("--anchor-ratio", o.anchor_ratio, "Anchor fraction")->capture_default_str();
    app.add_option("--radius", o.radius, "Communication radius (m)")->capture_default_str();
    app.add_option("--width", o.width, "Arena width (m)")->capture_default_str();
    app.add_option("--height", o.height, "Arena height (m)")->capture_default_str();
    app.add_option("--methods", o.methods, "Localization methods: IBWOL, BWOL, Multilateration")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--hop-mode", o.hop_mode, "Hop counting: classic or optimized")->capture_default_str();
    app.add_option("--scope", o.scope, "Fractional hops on all edges or anchor-adjacent edges: all, anchor")
        ->capture_default_str();
    app.add_option("--rssi-sigma", o.rssi_sigma, "Shadowing std (dB) on the hop band decision")
        ->capture_default_str();
    app.add_option("--out", o.out, "Output directory")->envname("SWARMLOC_OUT_DIR")->capture_default_str();
    app.add_option("--deployment", o.deployment, "Deployment file for deploy/locate")->capture_default_str();
    app.add_flag("--gnuplot", o.gnuplot, "Also write a gnuplot script");
    app.add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();

    auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark campaign");
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a localization parameter sweep");
    auto* deploy_cmd = app.add_subcommand("deploy", "Generate and save one deployment");
    auto* locate_cmd = app.add_subcommand("locate", "Localize the unknown robots of a saved deployment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (bench_cmd->parsed()) return cmd_bench(o);
        if (sweep_cmd->parsed()) return cmd_sweep(o);
        if (deploy_cmd->parsed()) return cmd_deploy(o);
        if (locate_cmd->parsed()) return cmd_locate(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
