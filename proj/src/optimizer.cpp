#include "swarmloc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace swarmloc::opt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> clamped(std::vector<double> x, const Bounds& bounds) {
    bounds.clamp(x);
    return x;
}

std::size_t draw_peer(Rng& rng, std::size_t self, std::size_t n) {
    std::size_t r = rng.index(n - 1);
    if (r >= self) ++r;
    return r;
}

class Runner {
public:
    Runner(const Objective& objective, const Bounds& bounds, const OptimizerConfig& cfg)
        : objective_(objective), bounds_(bounds), cfg_(cfg), rng_(cfg.seed) {}

    OptimizationTrace run() {
        const std::size_t n = cfg_.population_size;
        const std::size_t t_max = cfg_.max_iterations;
        const bool improved = cfg_.variant == Variant::IBWO;
        const bool use_cyclone = improved && cfg_.strategies.cyclone;
        const bool use_chain = improved && cfg_.strategies.chain;
        const bool use_golden = improved && cfg_.strategies.golden_sine;

        pop_ = initialize_population(cfg_, bounds_, objective_, rng_);
        trace_.evaluations = n;
        best_index_ = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (pop_[i].fitness < pop_[best_index_].fitness) best_index_ = i;
        }
        trace_.best_position = pop_[best_index_].position;
        trace_.best_fitness = pop_[best_index_].fitness;
        trace_.best_fitness_per_iteration.reserve(t_max);

        std::vector<double> bf(n);
        for (std::size_t t = 1; t <= t_max; ++t) {
            const double wf = whale_fall_probability(cfg_.whale_fall, t, t_max);
            for (std::size_t i = 0; i < n; ++i) bf[i] = balance_factor(rng_.uniform_open(), t, t_max);

            take_snapshot();
            const std::vector<double> best = trace_.best_position;
            for (std::size_t i = 0; i < n; ++i) {
                if (bf[i] > 0.5) {
                    const std::size_t r = draw_peer(rng_, i, n);
                    const auto perm = rng_.permutation(bounds_.dimension());
                    const double r1 = rng_.uniform();
                    const double r2 = rng_.uniform();
                    offer(i, exploration_step(pop_[i].position, snapshot_[r], perm, r1, r2, bounds_));
                } else {
                    const double r3 = rng_.uniform();
                    const double r4 = rng_.uniform();
                    const std::size_t r = draw_peer(rng_, i, n);
                    const auto levy = levy_flight(bounds_.dimension(), rng_);
                    offer(i, exploitation_step(pop_[i].position, best, snapshot_[r], levy, r3, r4, t, t_max,
                                               bounds_));
                    if (use_cyclone) {
                        const double r8 = rng_.uniform();
                        const double r9 = rng_.uniform();
                        offer(i, cyclone_foraging(pop_[i].position, predecessor(i), best, r8, r9, t, t_max,
                                                  bounds_));
                    }
                    if (use_chain) {
                        const double r9 = rng_.uniform_open();
                        offer(i, chain_foraging(pop_[i].position, predecessor(i), best, r9, bounds_));
                    }
                }
            }

            take_snapshot();
            const std::vector<double> best2 = trace_.best_position;
            for (std::size_t i = 0; i < n; ++i) {
                if (bf[i] <= wf) {
                    const std::size_t r = draw_peer(rng_, i, n);
                    const double r5 = rng_.uniform();
                    const double r6 = rng_.uniform();
                    const double r7 = rng_.uniform();
                    offer(i, whale_fall_step(pop_[i].position, snapshot_[r], r5, r6, r7, wf, n, t, t_max, bounds_));
                }
                if (use_golden) {
                    const double r1 = rng_.uniform(0.0, kTwoPi);
                    const double r2 = rng_.uniform(0.0, std::numbers::pi);
                    offer(i, golden_sine_step(pop_[i].position, best2, r1, r2, bounds_));
                }
            }
            trace_.best_fitness_per_iteration.push_back(trace_.best_fitness);
        }
        return std::move(trace_);
    }

private:
    void take_snapshot() {
        snapshot_.resize(pop_.size());
        for (std::size_t i = 0; i < pop_.size(); ++i) snapshot_[i] = pop_[i].position;
    }

    std::span<const double> predecessor(std::size_t i) const {
        if (i == 0) return {};
        return cfg_.predecessors == PredecessorSource::Live ? std::span<const double>(pop_[i - 1].position)
                                                            : std::span<const double>(snapshot_[i - 1]);
    }

    void offer(std::size_t i, std::vector<double> candidate) {
        const double f = sanitize_fitness(objective_(candidate));
        ++trace_.evaluations;
        if (f < trace_.best_fitness) {
            trace_.best_fitness = f;
            trace_.best_position = candidate;
        }
        if (cfg_.acceptance == Acceptance::Always || f <= pop_[i].fitness) {
            pop_[i].position = std::move(candidate);
            pop_[i].fitness = f;
        }
    }

    const Objective& objective_;
    const Bounds& bounds_;
    const OptimizerConfig& cfg_;
    Rng rng_;
    Population pop_;
    std::vector<std::vector<double>> snapshot_;
    std::size_t best_index_ = 0;
    OptimizationTrace trace_;
};

}  // namespace

void OptimizerConfig::validate() const {
    if (population_size < 2) throw ConfigError("optimizer: population_size must be at least 2");
    if (max_iterations < 1) throw ConfigError("optimizer: max_iterations must be at least 1");
    if (!(whale_fall.start >= whale_fall.end && whale_fall.end >= 0.0))
        throw ConfigError("optimizer: whale fall schedule must satisfy start >= end >= 0");
}

std::string_view to_string(Variant v) { return v == Variant::BWO ? "bwo" : "ibwo"; }

Variant parse_variant(std::string_view name) {
    if (name == "bwo" || name == "BWO") return Variant::BWO;
    if (name == "ibwo" || name == "IBWO") return Variant::IBWO;
    throw ConfigError("unknown optimizer variant '" + std::string(name) + "'");
}

double sanitize_fitness(double value) {
    return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

Population initialize_population(const OptimizerConfig& cfg, const Bounds& bounds, const Objective& objective,
                                 Rng& rng) {
    cfg.validate();
    if (bounds.dimension() != objective.dimension())
        throw ConfigError("optimizer: bounds dimension " + std::to_string(bounds.dimension()) +
                          " does not match objective dimension " + std::to_string(objective.dimension()));
    const std::size_t d = bounds.dimension();
    Population pop(cfg.population_size);
    for (auto& agent : pop) {
        agent.position.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            agent.position[j] = bounds.lower[j] + (bounds.upper[j] - bounds.lower[j]) * rng.uniform_open();
        }
        // Guards against rounding past the upper limit.
        bounds.clamp(agent.position);
    }
    for (auto& agent : pop) agent.fitness = sanitize_fitness(objective(agent.position));
    return pop;
}

double balance_factor(double b0, std::size_t t, std::size_t t_max) {
    return b0 * (1.0 - static_cast<double>(t) / (2.0 * static_cast<double>(t_max)));
}

double whale_fall_probability(const WhaleFallSchedule& schedule, std::size_t t, std::size_t t_max) {
    return schedule.start - (schedule.start - schedule.end) * static_cast<double>(t) / static_cast<double>(t_max);
}

double levy_sigma(double beta) {
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

std::vector<double> levy_flight(std::size_t dim, Rng& rng, double beta) {
    if (!(beta > 0.0 && beta <= 2.0)) throw ConfigError("levy_flight: beta must lie in (0, 2]");
    const double sigma = levy_sigma(beta);
    std::vector<double> step(dim);
    for (auto& s : step) {
        const double u = rng.normal();
        double v = rng.normal();
        while (std::abs(v) < std::numeric_limits<double>::epsilon()) v = rng.normal();
        s = 0.05 * (u * sigma) / std::pow(std::abs(v), 1.0 / beta);
    }
    return step;
}

GoldenCoefficients golden_coefficients() {
    constexpr double a = -std::numbers::pi;
    constexpr double b = std::numbers::pi;
    const double tau = (std::sqrt(5.0) - 1.0) / 2.0;
    return {a * (1.0 - tau) + b * tau, a * tau + b * (1.0 - tau)};
}

std::vector<double> exploration_step(std::span<const double> self, std::span<const double> peer,
                                     std::span<const std::size_t> permutation, double r1, double r2,
                                     const Bounds& bounds) {
    std::vector<double> next(self.begin(), self.end());
    const double anchor = peer[permutation[0]];
    const double gain = 1.0 + r1;
    const double s = std::sin(kTwoPi * r2);
    const double c = std::cos(kTwoPi * r2);
    for (std::size_t k = 0; k < permutation.size(); ++k) {
        const std::size_t j = permutation[k];
        next[j] = self[j] + (anchor - self[j]) * gain * (k % 2 == 0 ? s : c);
    }
    return clamped(std::move(next), bounds);
}

std::vector<double> exploitation_step(std::span<const double> self, std::span<const double> best,
                                      std::span<const double> peer, std::span<const double> levy,
                                      double r3, double r4, std::size_t t, std::size_t t_max,
                                      const Bounds& bounds) {
    const double c1 = 2.0 * r4 * (1.0 - static_cast<double>(t) / static_cast<double>(t_max));
    std::vector<double> next(self.size());
    for (std::size_t j = 0; j < self.size(); ++j) {
        next[j] = r3 * best[j] - r4 * self[j] + c1 * levy[j] * (peer[j] - self[j]);
    }
    return clamped(std::move(next), bounds);
}

std::vector<double> cyclone_foraging(std::span<const double> self, std::span<const double> predecessor,
                                     std::span<const double> best, double r8, double r9, std::size_t t,
                                     std::size_t t_max, const Bounds& bounds) {
    const double tm = static_cast<double>(t_max);
    const double scale =
        2.0 * std::exp(r9 * (tm - static_cast<double>(t) + 1.0) / tm) * std::sin(kTwoPi * r9);
    const std::span<const double> target = predecessor.empty() ? best : predecessor;
    std::vector<double> next(self.size());
    for (std::size_t j = 0; j < self.size(); ++j) {
        next[j] = best[j] + r8 * (target[j] - self[j]) + scale * (best[j] - self[j]);
    }
    return clamped(std::move(next), bounds);
}

std::vector<double> chain_foraging(std::span<const double> self, std::span<const double> predecessor,
                                   std::span<const double> best, double r9, const Bounds& bounds) {
    const double alpha = 2.0 * r9 * std::sqrt(std::abs(std::log(r9)));
    const std::span<const double> target = predecessor.empty() ? best : predecessor;
    std::vector<double> next(self.size());
    for (std::size_t j = 0; j < self.size(); ++j) {
        next[j] = self[j] + r9 * (target[j] - self[j]) + alpha * (best[j] - self[j]);
    }
    return clamped(std::move(next), bounds);
}

std::vector<double> whale_fall_step(std::span<const double> self, std::span<const double> peer, double r5,
                                    double r6, double r7, double whale_fall_prob, std::size_t population_size,
                                    std::size_t t, std::size_t t_max, const Bounds& bounds) {
    const double c2 = 2.0 * whale_fall_prob * static_cast<double>(population_size);
    const double decay = std::exp(-c2 * static_cast<double>(t) / static_cast<double>(t_max));
    std::vector<double> next(self.size());
    for (std::size_t j = 0; j < self.size(); ++j) {
        const double step = (bounds.upper[j] - bounds.lower[j]) * decay;
        next[j] = r5 * self[j] - r6 * peer[j] + r7 * step;
    }
    return clamped(std::move(next), bounds);
}

std::vector<double> golden_sine_step(std::span<const double> self, std::span<const double> best, double r1,
                                     double r2, const Bounds& bounds) {
    const auto [x1, x2] = golden_coefficients();
    const double s = std::sin(r1);
    const double abs_s = std::abs(s);
    std::vector<double> next(self.size());
    for (std::size_t j = 0; j < self.size(); ++j) {
        next[j] = self[j] * abs_s - r2 * s * std::abs(x1 * best[j] - x2 * self[j]);
    }
    return clamped(std::move(next), bounds);
}

OptimizationTrace run(const Objective& objective, const OptimizerConfig& cfg) {
    return run(objective, objective.bounds(), cfg);
}

OptimizationTrace run(const Objective& objective, const Bounds& bounds, const OptimizerConfig& cfg) {
    return Runner(objective, bounds, cfg).run();
}

}  // namespace swarmloc::opt
