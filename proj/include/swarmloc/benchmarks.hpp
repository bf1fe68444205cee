#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swarmloc/objective.hpp"
#include "swarmloc/optimizer.hpp"

// The 23 classical benchmark functions (unimodal F1-F7, multimodal F8-F13,
// fixed-dimension multimodal F14-F23) and the repeated-run campaign used to
// summarize optimizer performance on them.
namespace swarmloc::bench {

enum class Category { Unimodal, Multimodal, FixedDimensionMultimodal };

struct BenchmarkSpec {
    int id = 0;  // 1..23
    std::string name;
    std::size_t dimension = 0;
    double lower = 0.0;
    double upper = 0.0;
    // Optimum as listed in the reference table (rounded, sometimes the value
    // at a rounded minimizer).
    double table_optimum = 0.0;
    // Global minimum over the box to double precision.
    double known_optimum = 0.0;
    // A point attaining known_optimum; empty where none is tabulated.
    std::vector<double> minimizer;
    Category category = Category::Unimodal;

    Bounds bounds() const { return Bounds::uniform(dimension, lower, upper); }
    std::string label() const { return "F" + std::to_string(id); }
};

constexpr int kFunctionCount = 23;

// Throws ConfigError for ids outside 1..23.
const BenchmarkSpec& spec(int id);

// Parses "F9", "9", "F1-F23", "F1,F5,F9-F11" into a sorted id list.
std::vector<int> parse_function_list(const std::string& text);

// Exact formula value. F7's additive uniform noise is drawn from `noise`
// when given and omitted otherwise. Throws ConfigError on dimension mismatch.
double evaluate(int id, std::span<const double> x, Rng* noise = nullptr);

// Objective wrapper. With add_noise, F7 owns a generator seeded from
// noise_seed, so the returned objective is not safe to share across threads.
Objective make_objective(int id, std::uint64_t noise_seed = 0, bool add_noise = true);

struct CampaignResult {
    int id = 0;
    opt::Variant variant = opt::Variant::IBWO;
    double avg = 0.0;
    double std = 0.0;                       // sample standard deviation
    std::vector<double> runs;               // final best fitness per repetition
    std::vector<double> convergence;        // mean best fitness per iteration
    std::vector<std::vector<double>> traces;  // per-repetition best-per-iteration
};

// Seed of repetition `rep`; independent of the variant so BWO and IBWO runs
// are paired.
std::uint64_t repetition_seed(std::uint64_t master_seed, int id, std::size_t rep);

// Runs `repetitions` independent seeded optimizations of function `id`.
// cfg.seed is ignored; per-run seeds come from repetition_seed(master_seed, ...).
CampaignResult run_campaign(int id, const opt::OptimizerConfig& cfg, std::size_t repetitions,
                            std::uint64_t master_seed, std::size_t threads = 0);

// Mean and sample standard deviation (0 for fewer than two values).
std::pair<double, double> mean_and_std(std::span<const double> values);

}  // namespace swarmloc::bench
