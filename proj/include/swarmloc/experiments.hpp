#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "swarmloc/benchmarks.hpp"
#include "swarmloc/localization.hpp"
#include "swarmloc/netsim.hpp"
#include "swarmloc/optimizer.hpp"

// Experiment drivers behind the command-line tool: benchmark campaigns and
// localization sweeps, plus their CSV and gnuplot writers.
namespace swarmloc::exp {

// ---------------------------------------------------------------- benchmarks

struct BenchConfig {
    std::vector<int> functions;  // 1..23
    std::vector<opt::Variant> variants{opt::Variant::IBWO, opt::Variant::BWO};
    std::size_t repetitions = 30;
    std::uint64_t seed = 1;
    opt::OptimizerConfig optimizer{};  // population and iteration budget
    std::size_t threads = 0;
};

struct BenchResult {
    BenchConfig config;
    // campaigns[f][v] for config.functions[f] and config.variants[v].
    std::vector<std::vector<bench::CampaignResult>> campaigns;
};

BenchResult run_bench(const BenchConfig& cfg);

// function,<variant>_avg,<variant>_std,... one row per function.
void write_bench_summary(std::ostream& out, const BenchResult& result);
// function,iteration,mean_best for one variant (long format).
void write_convergence(std::ostream& out, const BenchResult& result, opt::Variant variant);

// ------------------------------------------------------------------- sweeps

enum class SweepKind { AnchorRatio, CommRadius, TotalNodes };

std::string_view to_string(SweepKind k);
SweepKind parse_sweep_kind(std::string_view name);

// Default grids: anchor ratio 0.10..0.40 step 0.05, radius 20..40 m step 5,
// total nodes 100..300 step 50.
std::vector<double> default_values(SweepKind k);

struct SweepConfig {
    SweepKind sweep = SweepKind::AnchorRatio;
    std::vector<double> values;  // empty means default_values(sweep)
    std::size_t n_total = 100;
    double anchor_ratio = 0.30;
    double comm_radius = 30.0;
    net::Arena arena{};
    std::size_t deployments_per_point = 30;
    std::vector<loc::Method> methods{loc::Method::IBWOL, loc::Method::BWOL, loc::Method::Multilateration};
    std::uint64_t seed = 1;
    opt::OptimizerConfig optimizer{};  // population and iteration budget
    net::HopOptions hops{};            // ranging used for localization
    std::size_t max_deploy_attempts = 100;
    std::size_t threads = 0;

    std::vector<double> grid() const { return values.empty() ? default_values(sweep) : values; }
    void validate() const;
};

// Seed of one deployment; shared by every method at that point.
std::uint64_t deployment_seed(std::uint64_t master, double sweep_value, std::size_t rep);

struct SweepRecord {
    std::size_t task = 0;  // point index * deployments_per_point + repetition
    double sweep_value = 0.0;
    std::uint64_t deployment_seed = 0;
    loc::Method method = loc::Method::IBWOL;
    double ae = 0.0;
    double nre = 0.0;
};

// Per-deployment ranging diagnostics: mean |estimated - true| anchor distance.
struct RangingRecord {
    std::size_t task = 0;  // point index * deployments_per_point + repetition
    double sweep_value = 0.0;
    std::uint64_t deployment_seed = 0;
    double classic_error = 0.0;
    double optimized_error = 0.0;
};

// A deployment that could not be generated; it contributes no records.
struct SweepWarning {
    std::size_t task = 0;  // point index * deployments_per_point + repetition
    double sweep_value = 0.0;
    std::uint64_t deployment_seed = 0;
    std::string message;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRecord> records;  // point-major, then repetition, then method
    std::vector<RangingRecord> ranging;
    std::vector<SweepWarning> warnings;
};

SweepResult run_sweep(const SweepConfig& cfg);

struct AggregateCell {
    double sweep_value = 0.0;
    loc::Method method = loc::Method::IBWOL;
    double mean_ae = 0.0;
    double mean_nre = 0.0;
    std::size_t count = 0;
};

// Mean AE/NRE per (sweep value, method) in grid and method order.
std::vector<AggregateCell> aggregate(const SweepResult& result);

// Looks up one aggregate cell; throws std::out_of_range if absent.
const AggregateCell& cell(const std::vector<AggregateCell>& cells, double sweep_value, loc::Method method);

// sweep_value,method,deployment_seed,ae,nre. Failed deployments appear as
// rows with method "warning" and empty ae/nre.
void write_sweep_runs(std::ostream& out, const SweepResult& result);

enum class Metric { AE, NRE };
// Table with one row per method and one column per sweep value.
void write_sweep_table(std::ostream& out, const SweepResult& result, Metric metric);
// sweep_value,deployment_seed,classic_error_m,optimized_error_m
void write_sweep_ranging(std::ostream& out, const SweepResult& result);

// ------------------------------------------------------------------ gnuplot

void write_bench_gnuplot(std::ostream& out, const BenchResult& result, const std::string& convergence_prefix);
void write_sweep_gnuplot(std::ostream& out, const SweepResult& result, const std::string& nre_table_file);

}  // namespace swarmloc::exp
