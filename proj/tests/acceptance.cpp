// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path to swarmloc cli> <scratch directory>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "oracles/path_oracle.hpp"
#include "swarmloc/benchmarks.hpp"
#include "swarmloc/csv.hpp"
#include "swarmloc/experiments.hpp"
#include "swarmloc/localization.hpp"
#include "swarmloc/netsim.hpp"

using namespace swarmloc;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("violated: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v) { return csv::number(v); }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void report(int id, const std::string& title, const Verdict& v, double seconds) {
    std::printf("%s criterion %d (%s) [%.1fs]: %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), seconds,
                v.detail.c_str());
    std::fflush(stdout);
}

double elapsed(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// ------------------------------------------------------------ benchmarks

const bench::CampaignResult& campaign(const exp::BenchResult& r, int id, opt::Variant v) {
    for (std::size_t f = 0; f < r.config.functions.size(); ++f) {
        if (r.config.functions[f] != id) continue;
        for (std::size_t k = 0; k < r.config.variants.size(); ++k) {
            if (r.config.variants[k] == v) return r.campaigns[f][k];
        }
    }
    throw std::out_of_range("campaign not run");
}

Verdict criterion1(const exp::BenchResult& r) {
    Verdict v;
    for (int id : {9, 11}) {
        const auto& c = campaign(r, id, opt::Variant::IBWO);
        v.note("F" + std::to_string(id) + " avg " + num(c.avg) + " std " + num(c.std));
        v.require(c.avg == 0.0, "F" + std::to_string(id) + " avg is not exactly 0");
    }
    for (int id : {16, 17, 18, 19, 21, 22, 23}) {
        const auto& s = bench::spec(id);
        const auto& c = campaign(r, id, opt::Variant::IBWO);
        const double gap = std::abs(c.avg - s.known_optimum);
        v.note("F" + std::to_string(id) + " avg " + sci(c.avg) + " optimum " + sci(s.known_optimum) + " (table " +
               sci(s.table_optimum) + ") gap " + num(gap));
        v.require(gap <= 1e-4, "F" + std::to_string(id) + " |avg - optimum| > 1e-4");
    }
    return v;
}

Verdict criterion2(const exp::BenchResult& r) {
    Verdict v;
    for (int id : {1, 2, 3, 4, 5, 6, 12, 13}) {
        const double ib = campaign(r, id, opt::Variant::IBWO).avg;
        const double bw = campaign(r, id, opt::Variant::BWO).avg;
        v.note("F" + std::to_string(id) + " " + num(ib) + " vs " + num(bw));
        v.require(ib <= bw, "F" + std::to_string(id) + " IBWO avg > BWO avg");
    }
    return v;
}

Verdict criterion3(const exp::BenchResult& r) {
    std::size_t traces = 0, violations = 0;
    for (const auto& row : r.campaigns) {
        for (const auto& c : row) {
            for (const auto& t : c.traces) {
                ++traces;
                for (std::size_t i = 1; i < t.size(); ++i) violations += t[i] > t[i - 1] ? 1 : 0;
            }
        }
    }
    Verdict v;
    v.note(std::to_string(traces) + " traces, " + std::to_string(violations) + " increases");
    v.require(traces > 0 && violations == 0, "a best-so-far trace increased");
    return v;
}

// --------------------------------------------------------------- ranging

Verdict criterion4() {
    Rng rng(4004);
    std::size_t entries = 0, mismatches = 0;
    for (int g = 0; g < 200; ++g) {
        const net::Deployment d = oracle::random_small_graph(rng, 2 + rng.index(11));
        for (net::HopMode mode : {net::HopMode::Classic, net::HopMode::Optimized}) {
            const net::HopTable t = net::min_hop_table(d, {mode, net::FractionalScope::AllEdges, {}});
            for (std::size_t col = 0; col < t.anchor_count(); ++col) {
                for (std::size_t node = 0; node < d.size(); ++node) {
                    ++entries;
                    const auto want = oracle::min_thirds(d, mode, net::FractionalScope::AllEdges, t.anchor_node(col), node);
                    mismatches += t.thirds(node, col) == want ? 0 : 1;
                }
            }
        }
    }
    Verdict v;
    v.note("200 graphs, " + std::to_string(entries) + " table entries, " + std::to_string(mismatches) + " mismatches");
    v.require(mismatches == 0, "hop table differs from path enumeration");
    return v;
}

Verdict criterion5(const exp::SweepResult& anchors) {
    double classic = 0.0, optimized = 0.0;
    std::size_t n = 0, worse = 0;
    for (const auto& r : anchors.ranging) {
        if (r.sweep_value != 0.30) continue;
        classic += r.classic_error;
        optimized += r.optimized_error;
        worse += r.optimized_error > r.classic_error ? 1 : 0;
        ++n;
    }
    Verdict v;
    v.require(n == 30, "expected 30 deployments at n=100, 30% anchors, R=30");
    classic /= static_cast<double>(n);
    optimized /= static_cast<double>(n);
    v.note("mean range error classic " + num(classic) + " m, optimized " + num(optimized) + " m over " +
           std::to_string(n) + " deployments (" + std::to_string(worse) + " per-deployment inversions)");
    v.require(optimized <= classic, "optimized ranging is less precise in the mean");
    return v;
}

// ---------------------------------------------------------- localization

double baseline_value(exp::SweepKind k) {
    switch (k) {
        case exp::SweepKind::AnchorRatio: return 0.30;
        case exp::SweepKind::CommRadius: return 30.0;
        case exp::SweepKind::TotalNodes: return 100.0;
    }
    return 0.0;
}

std::string ae_row(const exp::SweepResult& r, loc::Method m) {
    const auto cells = exp::aggregate(r);
    std::string s = std::string(loc::to_string(m)) + " [";
    bool first = true;
    for (double x : r.config.grid()) {
        s += (first ? "" : " ") + num(exp::cell(cells, x, m).mean_ae);
        first = false;
    }
    return s + "]";
}

Verdict criterion6(const std::vector<exp::SweepResult>& sweeps) {
    Verdict v;
    for (const auto& r : sweeps) {
        const auto cells = exp::aggregate(r);
        const std::string kind(exp::to_string(r.config.sweep));
        v.note(kind + ": " + ae_row(r, loc::Method::IBWOL) + " " + ae_row(r, loc::Method::BWOL) + " " +
               ae_row(r, loc::Method::Multilateration));
        for (double x : r.config.grid()) {
            const auto& ib = exp::cell(cells, x, loc::Method::IBWOL);
            const auto& bw = exp::cell(cells, x, loc::Method::BWOL);
            const auto& ml = exp::cell(cells, x, loc::Method::Multilateration);
            v.require(ib.count == 30 && bw.count == 30 && ml.count == 30,
                      kind + "=" + num(x) + " has fewer than 30 deployments");
            v.require(ib.mean_ae <= bw.mean_ae, kind + "=" + num(x) + " IBWOL AE > BWOL AE");
            v.require(ib.mean_ae <= ml.mean_ae, kind + "=" + num(x) + " IBWOL AE > Multilateration AE");
        }
        const double base = exp::cell(cells, baseline_value(r.config.sweep), loc::Method::IBWOL).mean_ae;
        v.note(kind + " sweep IBWOL AE at n=100, 30% anchors, R=30: " + num(base) + " m");
        v.require(base >= 2.5 && base <= 5.5, kind + " sweep IBWOL AE at the baseline point outside [2.5, 5.5] m");
    }
    return v;
}

Verdict criterion7(const exp::SweepResult& anchors, const exp::SweepResult& radius, const exp::SweepResult& nodes) {
    Verdict v;
    {
        const auto cells = exp::aggregate(anchors);
        const auto grid = anchors.config.grid();
        std::size_t inversions = 0;
        for (std::size_t i = 1; i < grid.size(); ++i) {
            inversions += exp::cell(cells, grid[i], loc::Method::IBWOL).mean_ae >
                                  exp::cell(cells, grid[i - 1], loc::Method::IBWOL).mean_ae
                              ? 1
                              : 0;
        }
        const double first = exp::cell(cells, grid.front(), loc::Method::IBWOL).mean_ae;
        const double last = exp::cell(cells, grid.back(), loc::Method::IBWOL).mean_ae;
        v.note("anchor sweep IBWOL AE " + num(first) + " -> " + num(last) + " with " + std::to_string(inversions) +
               " inversion(s)");
        v.require(last < first && inversions <= 1, "anchor-ratio trend is not decreasing");
    }
    {
        const auto cells = exp::aggregate(radius);
        const auto grid = radius.config.grid();
        std::size_t arg = 0;
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (exp::cell(cells, grid[i], loc::Method::IBWOL).mean_ae <
                exp::cell(cells, grid[arg], loc::Method::IBWOL).mean_ae)
                arg = i;
        }
        v.note("radius sweep IBWOL AE minimum at R=" + num(grid[arg]));
        v.require(arg > 0 && arg + 1 < grid.size(), "radius sweep minimum is at an end point (monotone trend)");
        v.require(std::abs(grid[arg] - 30.0) <= 5.0, "radius sweep minimum is not within 5 m of R=30");
    }
    {
        const auto cells = exp::aggregate(nodes);
        std::string row;
        for (double x : nodes.config.grid()) {
            const double nre = exp::cell(cells, x, loc::Method::IBWOL).mean_nre;
            row += (row.empty() ? "" : " ") + num(nre);
            if (x >= 150.0) v.require(nre < 0.12, "node sweep IBWOL NRE >= 0.12 at n=" + num(x));
        }
        v.note("node sweep IBWOL NRE [" + row + "]");
    }
    return v;
}

Verdict criterion8() {
    Rng rng(8008);
    opt::OptimizerConfig cfg;
    std::size_t ml_ok = 0, ib_ok = 0;
    double ml_worst = 0.0, ib_worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        loc::LocalizationProblem p;
        const std::size_t m = 3 + rng.index(4);
        for (;;) {
            p.anchors.clear();
            for (std::size_t j = 0; j < m; ++j) p.anchors.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
            const auto& a = p.anchors;
            const double area =
                0.5 * std::abs((a[1].x - a[0].x) * (a[2].y - a[0].y) - (a[2].x - a[0].x) * (a[1].y - a[0].y));
            if (area >= 100.0) break;
        }
        const loc::Point truth{rng.uniform(0, 100), rng.uniform(0, 100)};
        p.distances.clear();
        for (const auto& a : p.anchors) p.distances.push_back(net::distance(a, truth));

        const loc::Point e1 = loc::multilaterate(p);
        cfg.seed = static_cast<std::uint64_t>(k);
        const loc::Point e2 = loc::localize_node(p, cfg);
        const double d1 = net::distance(e1, truth);
        const double d2 = net::distance(e2, truth);
        ml_worst = std::max(ml_worst, d1);
        ib_worst = std::max(ib_worst, d2);
        ml_ok += d1 <= 0.5 ? 1 : 0;
        ib_ok += d2 <= 0.5 ? 1 : 0;
    }
    Verdict v;
    v.note("multilateration " + std::to_string(ml_ok) + "/100 (worst " + num(ml_worst) + " m), IBWO " +
           std::to_string(ib_ok) + "/100 (worst " + num(ib_worst) + " m)");
    v.require(ml_ok == 100 && ib_ok == 100, "an exact-data instance was not recovered within 0.5 m");
    return v;
}

// ----------------------------------------------------------- determinism

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict criterion9(const std::string& cli, const fs::path& work) {
    const std::vector<std::string> commands = {
        "bench --functions F1,F7,F10,F14,F21 --reps 3 --iters 40 --seed 11 --gnuplot",
        "sweep --sweep radius --values 20,30 --reps 3 --iters 40 --seed 11 --gnuplot",
        "sweep --sweep anchors --values 0.1,0.2 --reps 2 --iters 30 --seed 5 --hop-mode classic",
        "deploy --seed 11 --n-total 120 --anchor-ratio 0.25",
    };
    Verdict v;
    std::size_t compared = 0;
    for (std::size_t c = 0; c < commands.size(); ++c) {
        fs::path dirs[2];
        for (int run = 0; run < 2; ++run) {
            dirs[run] = work / ("cmd" + std::to_string(c) + "_run" + std::to_string(run));
            fs::remove_all(dirs[run]);
            std::string cmd = "(\"" + cli + "\" " + commands[c] + " --out \"" + dirs[run].string() + "\"";
            if (c == 3) cmd += " && \"" + cli + "\" locate --iters 40 --seed 11 --out \"" + dirs[run].string() + "\"";
            cmd += ") > /dev/null 2>&1";
            v.require(std::system(cmd.c_str()) == 0, "command failed: " + commands[c]);
        }
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            const fs::path other = dirs[1] / entry.path().filename();
            ++compared;
            v.require(fs::exists(other) && slurp(entry.path()) == slurp(other),
                      entry.path().filename().string() + " differs between runs");
        }
    }
    v.note(std::to_string(commands.size()) + " commands run twice, " + std::to_string(compared) +
           " output files compared byte for byte");
    v.require(compared > 0, "no output files produced");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <swarmloc cli> <scratch directory>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path work = argv[2];
    fs::create_directories(work);

    bool all = true;
    auto record = [&](int id, const std::string& title, const std::function<Verdict()>& fn) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        report(id, title, v, elapsed(start));
        all = all && v.pass;
    };

    auto start = std::chrono::steady_clock::now();
    exp::BenchConfig bc;
    bc.functions = bench::parse_function_list("F1-F23");
    bc.repetitions = 30;
    bc.seed = 1;
    const exp::BenchResult bench_result = exp::run_bench(bc);
    std::printf("benchmark campaign: 23 functions x 2 variants x 30 runs in %.1fs\n", elapsed(start));

    record(1, "benchmark exactness", [&] { return criterion1(bench_result); });
    record(2, "benchmark dominance", [&] { return criterion2(bench_result); });
    record(3, "monotone elitism", [&] { return criterion3(bench_result); });
    record(4, "ranging oracle equivalence", [] { return criterion4(); });

    std::vector<exp::SweepResult> sweeps;
    for (exp::SweepKind k : {exp::SweepKind::AnchorRatio, exp::SweepKind::CommRadius, exp::SweepKind::TotalNodes}) {
        start = std::chrono::steady_clock::now();
        exp::SweepConfig sc;
        sc.sweep = k;
        sc.seed = 1;
        sweeps.push_back(exp::run_sweep(sc));
        std::printf("%s sweep: %zu points x 30 deployments in %.1fs (%zu warnings)\n",
                    std::string(exp::to_string(k)).c_str(), sc.grid().size(), elapsed(start),
                    sweeps.back().warnings.size());
    }

    record(5, "hop-optimized ranging improvement", [&] { return criterion5(sweeps[0]); });
    record(6, "localization ordering", [&] { return criterion6(sweeps); });
    record(7, "trend reproduction", [&] { return criterion7(sweeps[0], sweeps[1], sweeps[2]); });
    record(8, "exact-data sanity", [] { return criterion8(); });
    record(9, "determinism", [&] { return criterion9(cli, work); });

    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
