#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "swarmloc/optimizer.hpp"

using namespace swarmloc;
using namespace swarmloc::opt;

namespace {

// Frozen from tests/oracles/frozen_values.py (mpmath, 50 digits).
constexpr double kLevySigma15 = 0.69657450255769679272;
constexpr double kGoldenX1 = 0.74162942386113991623;
constexpr double kChainAlphaHalf = 0.83255461115769775635;
constexpr double kChainExample = 4.3302184446307910254;

Objective sphere(std::size_t dim, double lo, double hi) {
    return Objective(Bounds::uniform(dim, lo, hi), [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    });
}

OptimizerConfig small_config(std::uint64_t seed, Variant v = Variant::IBWO) {
    OptimizerConfig cfg;
    cfg.population_size = 10;
    cfg.max_iterations = 50;
    cfg.seed = seed;
    cfg.variant = v;
    return cfg;
}

}  // namespace

TEST_CASE("rng draws replay the underlying engine") {
    Rng a(5489);
    CHECK(a.next_u64() == 14514284786278117030ull);  // first mt19937_64 output for the default seed

    std::mt19937_64 engine(7);
    Rng b(7);
    for (int i = 0; i < 100; ++i) {
        const double expected = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        CHECK(b.uniform() == expected);
    }
}

TEST_CASE("rng index and permutation stay in range") {
    Rng rng(3);
    for (std::size_t n = 1; n < 20; ++n) {
        CHECK(rng.index(n) < n);
        auto p = rng.permutation(n);
        std::sort(p.begin(), p.end());
        for (std::size_t i = 0; i < n; ++i) CHECK(p[i] == i);
    }
}

TEST_CASE("derive_seed separates streams") {
    CHECK(derive_seed(1, {0}) != derive_seed(1, {1}));
    CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
    CHECK(derive_seed(9, {4, 5}) == derive_seed(9, {4, 5}));
}

TEST_CASE("initialization") {
    OptimizerConfig cfg = small_config(42);

    SUBCASE("degenerate interval forces the point") {
        const Bounds b({5.0, 5.0}, {5.0, 5.0});
        Objective obj(b, [](std::span<const double> x) { return x[0] + x[1]; });
        Rng rng(42);
        for (const auto& a : initialize_population(cfg, b, obj, rng)) {
            CHECK(a.position == std::vector<double>{5.0, 5.0});
            CHECK(a.fitness == 10.0);
        }
    }
    SUBCASE("every coordinate inside the box") {
        const Objective obj = sphere(30, -100.0, 100.0);
        Rng rng(1);
        for (const auto& a : initialize_population(cfg, obj.bounds(), obj, rng)) CHECK(obj.bounds().contains(a.position));
    }
    SUBCASE("replay of the generator stream, agent-major") {
        cfg.population_size = 4;
        const Objective obj = sphere(2, 0.0, 1.0);
        Rng rng(42);
        const Population pop = initialize_population(cfg, obj.bounds(), obj, rng);
        Rng replay(42);
        for (const auto& a : pop) {
            for (double v : a.position) CHECK(v == replay.uniform_open());
        }
    }
    SUBCASE("dimension mismatch") {
        const Objective obj = sphere(2, 0.0, 1.0);
        Rng rng(1);
        CHECK_THROWS_AS(initialize_population(cfg, Bounds::uniform(3, 0.0, 1.0), obj, rng), ConfigError);
    }
}

TEST_CASE("balance factor and whale fall probability") {
    CHECK(balance_factor(1.0, 200, 200) == 0.5);
    CHECK(balance_factor(0.0, 1, 200) == 0.0);
    CHECK(balance_factor(0.8, 1, 200) == doctest::Approx(0.798).epsilon(1e-15));
    const WhaleFallSchedule s{};
    CHECK(whale_fall_probability(s, 200, 200) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(whale_fall_probability(s, 100, 200) == doctest::Approx(0.075).epsilon(1e-15));
}

TEST_CASE("exploration step") {
    const Bounds b = Bounds::uniform(2, -10.0, 10.0);
    const std::vector<std::size_t> identity{0, 1};
    SUBCASE("zero draws: sine slot unchanged, cosine slot jumps to the peer") {
        const auto next = exploration_step(std::vector{1.0, 2.0}, std::vector{3.0, 9.0}, identity, 0.0, 0.0, b);
        CHECK(next[0] == 1.0);
        CHECK(next[1] == 3.0);
    }
    SUBCASE("hand evaluation 1 + (3 - 1) * 1.5 * sin(pi / 2)") {
        const auto next = exploration_step(std::vector{1.0, 1.0}, std::vector{3.0, 3.0}, identity, 0.5, 0.25, b);
        CHECK(next[0] == doctest::Approx(4.0).epsilon(1e-15));
        const auto clamped = exploration_step(std::vector{1.0, 1.0}, std::vector{3.0, 3.0}, identity, 0.5, 0.25,
                                              Bounds::uniform(2, 0.0, 3.5));
        CHECK(clamped[0] == 3.5);
    }
    SUBCASE("permutation picks the slot order") {
        const std::vector<std::size_t> swapped{1, 0};
        const auto next = exploration_step(std::vector{1.0, 2.0}, std::vector{3.0, 9.0}, swapped, 0.0, 0.0, b);
        CHECK(next[1] == 2.0);  // slot 0, sine form
        CHECK(next[0] == 9.0);  // slot 1 moves onto peer[perm[0]]
    }
}

TEST_CASE("levy flight") {
    CHECK(levy_sigma(1.5) == doctest::Approx(kLevySigma15).epsilon(1e-14));
    CHECK(levy_sigma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    Rng a(11), b(11);
    const auto la = levy_flight(30, a);
    const auto lb = levy_flight(30, b);
    CHECK(la == lb);
    for (double v : la) CHECK(std::isfinite(v));
}

TEST_CASE("exploitation step") {
    const Bounds b = Bounds::uniform(1, -10.0, 10.0);
    const std::vector<double> levy{0.7};
    SUBCASE("r3 = 1, r4 = 0 lands on the best") {
        const auto next = exploitation_step(std::vector{2.0}, std::vector{4.0}, std::vector{-3.0}, levy, 1.0, 0.0,
                                            10, 200, b);
        CHECK(next[0] == 4.0);
    }
    SUBCASE("Levy term vanishes at t = t_max") {
        const auto next = exploitation_step(std::vector{2.0}, std::vector{4.0}, std::vector{-3.0}, levy, 0.5, 0.9,
                                            200, 200, b);
        CHECK(next[0] == doctest::Approx(0.5 * 4.0 - 0.9 * 2.0).epsilon(1e-15));
    }
    SUBCASE("hand evaluation 0.5 * 4 - 0.5 * 2 = 1") {
        const auto next = exploitation_step(std::vector{2.0}, std::vector{4.0}, std::vector{2.0}, levy, 0.5, 0.5,
                                            100, 200, b);
        CHECK(next[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("cyclone foraging") {
    const Bounds b = Bounds::uniform(1, -10.0, 10.0);
    SUBCASE("first agent with r8 = r9 = 0 lands on the best") {
        const auto next = cyclone_foraging(std::vector{7.0}, {}, std::vector{-2.0}, 0.0, 0.0, 5, 200, b);
        CHECK(next[0] == -2.0);
    }
    SUBCASE("r9 = 0.5 at t = t_max leaves only the drag term") {
        const auto next = cyclone_foraging(std::vector{1.0}, std::vector{3.0}, std::vector{0.0}, 0.25, 0.5, 200, 200, b);
        CHECK(next[0] == doctest::Approx(0.0 + 0.25 * (3.0 - 1.0)).epsilon(1e-12));
    }
    SUBCASE("second agent: 0 + 1 * (5 - 3) + 0 = 2") {
        const auto next = cyclone_foraging(std::vector{3.0}, std::vector{5.0}, std::vector{0.0}, 1.0, 0.0, 5, 200, b);
        CHECK(next[0] == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("chain foraging") {
    const Bounds b = Bounds::uniform(1, -10.0, 10.0);
    SUBCASE("r9 = 1 for the first agent lands on the best") {
        const auto next = chain_foraging(std::vector{7.0}, {}, std::vector{-2.0}, 1.0, b);
        CHECK(next[0] == -2.0);
    }
    SUBCASE("coincident agents do not move") {
        const auto next = chain_foraging(std::vector{1.5}, std::vector{1.5}, std::vector{1.5}, 0.3, b);
        CHECK(next[0] == 1.5);
    }
    SUBCASE("second agent hand evaluation") {
        const auto next = chain_foraging(std::vector{0.0}, std::vector{2.0}, std::vector{4.0}, 0.5, b);
        CHECK(next[0] == doctest::Approx(kChainExample).epsilon(1e-14));
        CHECK(2.0 * 0.5 * std::sqrt(std::abs(std::log(0.5))) == doctest::Approx(kChainAlphaHalf).epsilon(1e-15));
    }
}

TEST_CASE("whale fall step") {
    const Bounds b = Bounds::uniform(2, 0.0, 10.0);
    SUBCASE("r5 = 1, r6 = r7 = 0 leaves the agent in place") {
        const auto next = whale_fall_step(std::vector{3.0, 4.0}, std::vector{8.0, 1.0}, 1.0, 0.0, 0.0, 0.075, 40,
                                          100, 200, b);
        CHECK(next == std::vector{3.0, 4.0});
    }
    SUBCASE("step length (ub - lb) * exp(-C2 t / t_max) with C2 = 6") {
        const auto next = whale_fall_step(std::vector{3.0, 4.0}, std::vector{8.0, 1.0}, 0.0, 0.0, 1.0, 0.075, 40,
                                          100, 200, b);
        CHECK(next[0] == doctest::Approx(10.0 * std::exp(-3.0)).epsilon(1e-14));
    }
}

TEST_CASE("golden sine step") {
    const auto g = golden_coefficients();
    CHECK(g.x1 == doctest::Approx(kGoldenX1).epsilon(1e-15));
    CHECK(g.x1 + g.x2 == 0.0);
    const Bounds b = Bounds::uniform(2, -10.0, 10.0);
    SUBCASE("r1 = pi/2, r2 = 0 keeps the position") {
        const auto next = golden_sine_step(std::vector{3.0, -4.0}, std::vector{1.0, 1.0}, std::numbers::pi / 2, 0.0, b);
        CHECK(next == std::vector{3.0, -4.0});
    }
    SUBCASE("r1 = 0 collapses to zero, then clamps") {
        const auto next = golden_sine_step(std::vector{3.0, -4.0}, std::vector{1.0, 1.0}, 0.0, 2.0, b);
        CHECK(next == std::vector{0.0, 0.0});
        const auto clamped =
            golden_sine_step(std::vector{3.0, 4.0}, std::vector{1.0, 1.0}, 0.0, 2.0, Bounds::uniform(2, 1.0, 5.0));
        CHECK(clamped == std::vector{1.0, 1.0});
    }
}

TEST_CASE("run: constant objective keeps a flat trace") {
    const Objective obj(Bounds::uniform(3, -1.0, 1.0), [](std::span<const double>) { return 7.0; });
    for (Variant v : {Variant::BWO, Variant::IBWO}) {
        const auto trace = run(obj, small_config(1, v));
        CHECK(trace.best_fitness == 7.0);
        REQUIRE(trace.best_fitness_per_iteration.size() == 50);
        for (double f : trace.best_fitness_per_iteration) CHECK(f == 7.0);
    }
}

TEST_CASE("run: traces are non-increasing and evaluations stay inside the box") {
    for (Variant v : {Variant::BWO, Variant::IBWO}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            bool inside = true;
            const Bounds box = Bounds::uniform(5, -3.0, 2.0);
            const Objective obj(box, [&](std::span<const double> x) {
                inside = inside && box.contains(x);
                double s = 0.0;
                for (double c : x) s += std::abs(c - 1.0) + std::cos(3.0 * c);
                return s;
            });
            const auto trace = run(obj, small_config(seed, v));
            CHECK(inside);
            const auto& t = trace.best_fitness_per_iteration;
            for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] <= t[i - 1]);
            CHECK(trace.best_fitness == t.back());
            CHECK(obj(trace.best_position) == trace.best_fitness);
        }
    }
}

TEST_CASE("run: identical seeds give identical traces") {
    const Objective obj = sphere(4, -5.0, 5.0);
    const auto a = run(obj, small_config(99));
    const auto b = run(obj, small_config(99));
    CHECK(a.best_fitness_per_iteration == b.best_fitness_per_iteration);
    CHECK(a.best_position == b.best_position);
    CHECK(a.evaluations == b.evaluations);
    const auto c = run(obj, small_config(100));
    CHECK(c.best_fitness_per_iteration != a.best_fitness_per_iteration);
}

TEST_CASE("run: IBWO with every strategy disabled is BWO") {
    const Objective obj = sphere(3, -5.0, 5.0);
    OptimizerConfig ib = small_config(5, Variant::IBWO);
    ib.strategies = {false, false, false};
    const auto a = run(obj, ib);
    const auto b = run(obj, small_config(5, Variant::BWO));
    CHECK(a.best_fitness_per_iteration == b.best_fitness_per_iteration);
    CHECK(a.best_position == b.best_position);
}

TEST_CASE("run: 2-D sphere beats a 101 x 101 grid search") {
    const Objective obj = sphere(2, -1.0, 1.0);
    double grid_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const double x[2] = {-1.0 + 0.02 * i, -1.0 + 0.02 * j};
            grid_min = std::min(grid_min, obj(x));
        }
    }
    const auto trace = run(obj, small_config(2024));
    CHECK(trace.best_fitness <= grid_min + 1e-12);
}

TEST_CASE("run: degenerate bounds are a fixpoint") {
    const Objective obj = sphere(2, 5.0, 5.0);
    const auto trace = run(obj, small_config(3));
    CHECK(trace.best_position == std::vector{5.0, 5.0});
    CHECK(trace.best_fitness == 50.0);
}

TEST_CASE("run: non-finite fitness counts as +inf") {
    CHECK(sanitize_fitness(std::nan("")) == std::numeric_limits<double>::infinity());
    CHECK(sanitize_fitness(-std::numeric_limits<double>::infinity()) == std::numeric_limits<double>::infinity());
    CHECK(sanitize_fitness(1.5) == 1.5);
    const Objective obj(Bounds::uniform(2, -1.0, 1.0), [](std::span<const double> x) {
        return x[0] < 0.0 ? std::nan("") : x[0] * x[0] + x[1] * x[1];
    });
    const auto trace = run(obj, small_config(8));
    CHECK(std::isfinite(trace.best_fitness));
    CHECK(trace.best_position[0] >= 0.0);
}

TEST_CASE("run: configuration errors") {
    const Objective obj = sphere(2, -1.0, 1.0);
    CHECK_THROWS_AS(run(obj, Bounds::uniform(3, -1.0, 1.0), small_config(1)), ConfigError);
    OptimizerConfig cfg = small_config(1);
    cfg.population_size = 1;
    CHECK_THROWS_AS(run(obj, cfg), ConfigError);
    cfg = small_config(1);
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(run(obj, cfg), ConfigError);
    CHECK(parse_variant("IBWO") == Variant::IBWO);
    CHECK(parse_variant("bwo") == Variant::BWO);
    CHECK_THROWS_AS(parse_variant("pso"), ConfigError);
    CHECK(to_string(Variant::IBWO) == "ibwo");
}
