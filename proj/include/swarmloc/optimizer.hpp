#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "swarmloc/objective.hpp"
#include "swarmloc/rng.hpp"

// Beluga whale optimization (BWO) and its improved variant (IBWO) for
// box-bounded continuous minimization.
//
// One iteration t = 1..t_max consumes random draws in this order:
//
//   1. B0 for every agent i = 0..n-1 (uniform_open).
//   2. First pass, agent by agent:
//        exploration  (B_f > 0.5): peer index, dimension permutation, r1, r2
//        exploitation (B_f <= 0.5): r3, r4, peer index, (u, v) per coordinate
//          IBWO cyclone foraging: r8, r9
//          IBWO chain foraging:   r9 (uniform_open)
//   3. Second pass, agent by agent:
//        whale fall (B_f <= W_f): peer index, r5, r6, r7
//        IBWO golden sine:        r1 in [0, 2pi), r2 in [0, pi)
//
// Initialization draws one uniform per coordinate, agent-major (agent 0's
// coordinates first). Peer indices are drawn from the n-1 agents other than i.
namespace swarmloc::opt {

enum class Variant { BWO, IBWO };

// How a candidate replaces the agent it was derived from.
enum class Acceptance {
    Greedy,  // keep the candidate only if fitness(candidate) <= fitness(agent)
    Always,
};

// Where cyclone/chain foraging read the predecessor agent i-1 from.
enum class PredecessorSource {
    PassSnapshot,  // positions as they were when the pass started
    Live,          // the predecessor's already-updated position
};

struct WhaleFallSchedule {
    double start = 0.1;
    double end = 0.05;
};

// Toggles for the three IBWO additions; ignored for Variant::BWO.
struct StrategySet {
    bool cyclone = true;
    bool chain = true;
    bool golden_sine = true;
};

struct OptimizerConfig {
    std::size_t population_size = 40;
    std::size_t max_iterations = 200;
    WhaleFallSchedule whale_fall{};
    std::uint64_t seed = 0;
    Variant variant = Variant::IBWO;
    Acceptance acceptance = Acceptance::Greedy;
    PredecessorSource predecessors = PredecessorSource::PassSnapshot;
    StrategySet strategies{};

    // Throws ConfigError when the configuration is unusable.
    void validate() const;
};

struct SearchAgent {
    std::vector<double> position;
    double fitness = 0.0;
};

using Population = std::vector<SearchAgent>;

struct OptimizationTrace {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::vector<double> best_fitness_per_iteration;  // one entry per iteration
    std::size_t evaluations = 0;
};

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

// Non-finite objective values count as +infinity.
double sanitize_fitness(double value);

// Throws ConfigError if the bounds and objective dimensions differ.
Population initialize_population(const OptimizerConfig& cfg, const Bounds& bounds, const Objective& objective,
                                 Rng& rng);

// B_f = B0 * (1 - t / (2 t_max)).
double balance_factor(double b0, std::size_t t, std::size_t t_max);

// W_f decays linearly from schedule.start at t = 0 to schedule.end at t = t_max.
double whale_fall_probability(const WhaleFallSchedule& schedule, std::size_t t, std::size_t t_max);

// Scale of the Levy-stable step for exponent beta (Mantegna).
double levy_sigma(double beta);

// 0.05 * u * sigma / |v|^(1/beta) per coordinate with u, v ~ N(0, 1); u then
// v are drawn per coordinate and v is redrawn while |v| < machine epsilon.
std::vector<double> levy_flight(std::size_t dim, Rng& rng, double beta = 1.5);

// Golden-section coefficients x1 = a(1-tau) + b tau and x2 = a tau + b(1-tau)
// with a = -pi, b = pi, tau = (sqrt(5) - 1) / 2.
struct GoldenCoefficients {
    double x1;
    double x2;
};
GoldenCoefficients golden_coefficients();

// Strategy updates. Each takes its random numbers explicitly, returns the
// candidate position and clamps it to `bounds`.

// Pairwise swim. The dimension at permutation slot k moves towards the peer's
// coordinate at slot 0: sin form for even k, cos form for odd k.
std::vector<double> exploration_step(std::span<const double> self, std::span<const double> peer,
                                     std::span<const std::size_t> permutation, double r1, double r2,
                                     const Bounds& bounds);

std::vector<double> exploitation_step(std::span<const double> self, std::span<const double> best,
                                      std::span<const double> peer, std::span<const double> levy,
                                      double r3, double r4, std::size_t t, std::size_t t_max,
                                      const Bounds& bounds);

// Spiral move around the best agent. `predecessor` is empty for the first agent.
std::vector<double> cyclone_foraging(std::span<const double> self, std::span<const double> predecessor,
                                     std::span<const double> best, double r8, double r9, std::size_t t,
                                     std::size_t t_max, const Bounds& bounds);

// Chain move towards the predecessor (or the best agent for the first agent).
// Requires r9 in (0, 1].
std::vector<double> chain_foraging(std::span<const double> self, std::span<const double> predecessor,
                                   std::span<const double> best, double r9, const Bounds& bounds);

std::vector<double> whale_fall_step(std::span<const double> self, std::span<const double> peer, double r5,
                                    double r6, double r7, double whale_fall_prob, std::size_t population_size,
                                    std::size_t t, std::size_t t_max, const Bounds& bounds);

// r1 in [0, 2pi], r2 in [0, pi].
std::vector<double> golden_sine_step(std::span<const double> self, std::span<const double> best, double r1,
                                     double r2, const Bounds& bounds);

OptimizationTrace run(const Objective& objective, const OptimizerConfig& cfg);

// As above with explicit search bounds; they must match the objective's dimension.
OptimizationTrace run(const Objective& objective, const Bounds& bounds, const OptimizerConfig& cfg);

}  // namespace swarmloc::opt
