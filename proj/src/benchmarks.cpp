#include "swarmloc/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <regex>

#include "swarmloc/parallel.hpp"

namespace swarmloc::bench {

namespace {

using std::numbers::pi;

constexpr std::array<double, 11> kKowalikA = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                              0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
constexpr std::array<double, 11> kKowalikInvB = {0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16};

constexpr std::array<double, 4> kHartmannC = {1.0, 1.2, 3.0, 3.2};
constexpr double kHartmann3A[4][3] = {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}};
constexpr double kHartmann3P[4][3] = {
    {0.3689, 0.1170, 0.2673}, {0.4699, 0.4387, 0.7470}, {0.1091, 0.8732, 0.5547}, {0.03815, 0.5743, 0.8828}};
constexpr double kHartmann6A[4][6] = {
    {10, 3, 17, 3.5, 1.7, 8}, {0.05, 10, 17, 0.1, 8, 14}, {3, 3.5, 1.7, 10, 17, 8}, {17, 8, 0.05, 10, 0.1, 14}};
constexpr double kHartmann6P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                      {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                      {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                      {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

constexpr double kShekelA[10][4] = {{4, 4, 4, 4}, {1, 1, 1, 1}, {8, 8, 8, 8}, {6, 6, 6, 6}, {3, 7, 3, 7},
                                    {2, 9, 2, 9}, {5, 5, 3, 3}, {8, 1, 8, 1}, {6, 2, 6, 2}, {7, 3.6, 7, 3.6}};
constexpr std::array<double, 10> kShekelC = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};

constexpr std::array<double, 5> kFoxholeGrid = {-32, -16, 0, 16, 32};

// Penalty u(x, a, k, m).
double penalty(double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
}

template <std::size_t D>
double hartmann(std::span<const double> x, const double (&a)[4][D], const double (&p)[4][D]) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < D; ++j) inner += a[i][j] * (x[j] - p[i][j]) * (x[j] - p[i][j]);
        sum += kHartmannC[i] * std::exp(-inner);
    }
    return -sum;
}

double shekel(std::span<const double> x, std::size_t m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < 4; ++j) sq += (x[j] - kShekelA[i][j]) * (x[j] - kShekelA[i][j]);
        sum += 1.0 / (sq + kShekelC[i]);
    }
    return -sum;
}

double formula(int id, std::span<const double> x, Rng* noise) {
    const std::size_t n = x.size();
    const double dn = static_cast<double>(n);
    switch (id) {
        case 1: {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        }
        case 2: {
            double s = 0.0, p = 1.0;
            for (double v : x) {
                s += std::abs(v);
                p *= std::abs(v);
            }
            return s + p;
        }
        case 3: {
            double s = 0.0, prefix = 0.0;
            for (double v : x) {
                prefix += v;
                s += prefix * prefix;
            }
            return s;
        }
        case 4: {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            return m;
        }
        case 5: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double a = x[i + 1] - x[i] * x[i];
                const double b = x[i] - 1.0;
                s += 100.0 * a * a + b * b;
            }
            return s;
        }
        case 6: {
            double s = 0.0;
            for (double v : x) s += (v + 0.5) * (v + 0.5);
            return s;
        }
        case 7: {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(i + 1) * std::pow(x[i], 4);
            return noise ? s + noise->uniform() : s;
        }
        case 8: {
            double s = 0.0;
            for (double v : x) s += -v * std::sin(std::sqrt(std::abs(v)));
            return s;
        }
        case 9: {
            double s = 0.0;
            for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
            return s;
        }
        case 10: {
            double sq = 0.0, cs = 0.0;
            for (double v : x) {
                sq += v * v;
                cs += std::cos(2.0 * pi * v);
            }
            return -20.0 * std::exp(-0.2 * std::sqrt(sq / dn)) - std::exp(cs / dn) + 20.0 + std::numbers::e;
        }
        case 11: {
            double s = 0.0, p = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                s += x[i] * x[i];
                p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
            }
            return s / 4000.0 - p + 1.0;
        }
        case 12: {
            auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
            const double s0 = std::sin(pi * y(0));
            double body = 10.0 * s0 * s0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double si = std::sin(pi * y(i + 1));
                body += (y(i) - 1.0) * (y(i) - 1.0) * (1.0 + 10.0 * si * si);
            }
            body += (y(n - 1) - 1.0) * (y(n - 1) - 1.0);
            double pen = 0.0;
            for (double v : x) pen += penalty(v, 10.0, 100.0, 4.0);
            return pi / dn * body + pen;
        }
        case 13: {
            const double s0 = std::sin(3.0 * pi * x[0]);
            double body = s0 * s0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double si = std::sin(3.0 * pi * x[i + 1]);
                body += (x[i] - 1.0) * (x[i] - 1.0) * (1.0 + si * si);
            }
            const double sl = std::sin(2.0 * pi * x[n - 1]);
            body += (x[n - 1] - 1.0) * (x[n - 1] - 1.0) * (1.0 + sl * sl);
            double pen = 0.0;
            for (double v : x) pen += penalty(v, 5.0, 100.0, 4.0);
            return 0.1 * body + pen;
        }
        case 14: {
            double s = 0.0;
            for (std::size_t j = 0; j < 25; ++j) {
                const double a0 = kFoxholeGrid[j % 5];
                const double a1 = kFoxholeGrid[j / 5];
                s += 1.0 / (static_cast<double>(j + 1) + std::pow(x[0] - a0, 6) + std::pow(x[1] - a1, 6));
            }
            return 1.0 / (1.0 / 500.0 + s);
        }
        case 15: {
            double s = 0.0;
            for (std::size_t i = 0; i < kKowalikA.size(); ++i) {
                const double b = 1.0 / kKowalikInvB[i];
                const double r = kKowalikA[i] - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
                s += r * r;
            }
            return s;
        }
        case 16: {
            const double a = x[0], b = x[1];
            return 4 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b - 4 * b * b + 4 * std::pow(b, 4);
        }
        case 17: {
            const double a = x[0], b = x[1];
            const double q = b - 5.1 / (4.0 * pi * pi) * a * a + 5.0 / pi * a - 6.0;
            return q * q + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(a) + 10.0;
        }
        case 18: {
            const double a = x[0], b = x[1];
            const double s = a + b + 1.0;
            const double d = 2.0 * a - 3.0 * b;
            const double left = 1.0 + s * s * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
            const double right =
                30.0 + d * d * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
            return left * right;
        }
        case 19: return hartmann(x, kHartmann3A, kHartmann3P);
        case 20: return hartmann(x, kHartmann6A, kHartmann6P);
        case 21: return shekel(x, 5);
        case 22: return shekel(x, 7);
        case 23: return shekel(x, 10);
        default: throw ConfigError("benchmark: unknown function id " + std::to_string(id));
    }
}

std::vector<BenchmarkSpec> build_table() {
    using C = Category;
    const double schwefel = 418.9828872724338;
    std::vector<BenchmarkSpec> t;
    auto add = [&](int id, std::string name, std::size_t dim, double lo, double hi, double table, double known,
                   std::vector<double> xmin, C cat) {
        t.push_back({id, std::move(name), dim, lo, hi, table, known, std::move(xmin), cat});
    };
    auto fill = [](std::size_t d, double v) { return std::vector<double>(d, v); };
    add(1, "sphere", 30, -100, 100, 0, 0, fill(30, 0), C::Unimodal);
    add(2, "schwefel_2_22", 30, -10, 10, 0, 0, fill(30, 0), C::Unimodal);
    add(3, "schwefel_1_2", 30, -100, 100, 0, 0, fill(30, 0), C::Unimodal);
    add(4, "schwefel_2_21", 30, -100, 100, 0, 0, fill(30, 0), C::Unimodal);
    add(5, "rosenbrock", 30, -30, 30, 0, 0, fill(30, 1), C::Unimodal);
    add(6, "step", 30, -100, 100, 0, 0, fill(30, -0.5), C::Unimodal);
    add(7, "quartic_noise", 30, -1.28, 1.28, 0, 0, fill(30, 0), C::Unimodal);
    add(8, "schwefel_2_26", 30, -500, 500, -418.9829 * 5, -schwefel * 30, fill(30, 420.96874635998194),
        C::Multimodal);
    add(9, "rastrigin", 30, -5.12, 5.12, 0, 0, fill(30, 0), C::Multimodal);
    add(10, "ackley", 30, -32, 32, 0, 0, fill(30, 0), C::Multimodal);
    add(11, "griewank", 30, -600, 600, 0, 0, fill(30, 0), C::Multimodal);
    add(12, "penalized_1", 30, -50, 50, 0, 0, fill(30, -1), C::Multimodal);
    add(13, "penalized_2", 30, -50, 50, 0, 0, fill(30, 1), C::Multimodal);
    add(14, "shekel_foxholes", 2, -65, 65, 1, 0.998003837794451, {-31.9783299778, -31.9783299778},
        C::FixedDimensionMultimodal);
    add(15, "kowalik", 4, -5, 5, 0.00030, 0.000307485987806858,
        {0.1928334646, 0.1908355258, 0.1231170289, 0.1357656655}, C::FixedDimensionMultimodal);
    add(16, "six_hump_camel", 2, -5, 5, -1.0316, -1.03162845348988, {0.0898420109, -0.7126564073},
        C::FixedDimensionMultimodal);
    add(17, "branin", 2, -5, 5, 0.398, 0.397887357729738, {pi, 2.275}, C::FixedDimensionMultimodal);
    add(18, "goldstein_price", 2, -2, 2, 3, 3, {0, -1}, C::FixedDimensionMultimodal);
    add(19, "hartmann_3", 3, -1, 2, -3.86, -3.86278214782069, {0.1146140159, 0.5556488441, 0.8525469498},
        C::FixedDimensionMultimodal);
    add(20, "hartmann_6", 6, 0, 1, -3.32, -3.32236801141551,
        {0.2016895045, 0.1500106935, 0.4768739663, 0.2753324285, 0.3116516143, 0.6573005349},
        C::FixedDimensionMultimodal);
    add(21, "shekel_5", 4, 0, 10, -10.1532, -10.1531996790582, {4.0000371488, 4.0001332726, 4.0000371488, 4.0001332726},
        C::FixedDimensionMultimodal);
    add(22, "shekel_7", 4, 0, 10, -10.4028, -10.4029405668187, {4.0005729106, 4.0006893596, 3.9994897065, 3.9996061572},
        C::FixedDimensionMultimodal);
    add(23, "shekel_10", 4, 0, 10, -10.5363, -10.536409816692, {4.0007465266, 4.0005929287, 3.9996633942, 3.9995097956},
        C::FixedDimensionMultimodal);
    return t;
}

}  // namespace

const BenchmarkSpec& spec(int id) {
    static const std::vector<BenchmarkSpec> table = build_table();
    if (id < 1 || id > kFunctionCount) throw ConfigError("benchmark: unknown function id " + std::to_string(id));
    return table[static_cast<std::size_t>(id - 1)];
}

std::vector<int> parse_function_list(const std::string& text) {
    static const std::regex item(R"(\s*[Ff]?(\d+)\s*(?:-\s*[Ff]?(\d+))?\s*)");
    std::vector<int> ids;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::smatch m;
        if (!std::regex_match(token, m, item)) throw ConfigError("benchmark: cannot parse function list '" + text + "'");
        const int lo = std::stoi(m[1].str());
        const int hi = m[2].matched ? std::stoi(m[2].str()) : lo;
        if (lo > hi) throw ConfigError("benchmark: empty range in '" + token + "'");
        for (int id = lo; id <= hi; ++id) {
            spec(id);
            ids.push_back(id);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

double evaluate(int id, std::span<const double> x, Rng* noise) {
    const BenchmarkSpec& s = spec(id);
    if (x.size() != s.dimension)
        throw ConfigError("benchmark " + s.label() + ": expected dimension " + std::to_string(s.dimension) +
                          ", got " + std::to_string(x.size()));
    return formula(id, x, noise);
}

Objective make_objective(int id, std::uint64_t noise_seed, bool add_noise) {
    const BenchmarkSpec& s = spec(id);
    if (id == 7 && add_noise) {
        auto rng = std::make_shared<Rng>(noise_seed);
        return Objective(s.bounds(), [rng](std::span<const double> x) { return formula(7, x, rng.get()); });
    }
    return Objective(s.bounds(), [id](std::span<const double> x) { return formula(id, x, nullptr); });
}

std::uint64_t repetition_seed(std::uint64_t master_seed, int id, std::size_t rep) {
    return derive_seed(master_seed, {static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(rep)});
}

std::pair<double, double> mean_and_std(std::span<const double> values) {
    if (values.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

CampaignResult run_campaign(int id, const opt::OptimizerConfig& cfg, std::size_t repetitions,
                            std::uint64_t master_seed, std::size_t threads) {
    spec(id);
    cfg.validate();
    if (repetitions == 0) throw ConfigError("campaign: repetitions must be at least 1");

    CampaignResult result;
    result.id = id;
    result.variant = cfg.variant;
    result.runs.resize(repetitions);
    result.traces.resize(repetitions);
    parallel_for(repetitions, threads, [&](std::size_t rep) {
        opt::OptimizerConfig run_cfg = cfg;
        run_cfg.seed = repetition_seed(master_seed, id, rep);
        const Objective objective = make_objective(id, derive_seed(run_cfg.seed, {7u}));
        opt::OptimizationTrace trace = opt::run(objective, run_cfg);
        result.runs[rep] = trace.best_fitness;
        result.traces[rep] = std::move(trace.best_fitness_per_iteration);
    });

    std::tie(result.avg, result.std) = mean_and_std(result.runs);
    result.convergence.assign(cfg.max_iterations, 0.0);
    for (const auto& tr : result.traces) {
        for (std::size_t t = 0; t < tr.size(); ++t) result.convergence[t] += tr[t];
    }
    for (double& v : result.convergence) v /= static_cast<double>(repetitions);
    return result;
}

}  // namespace swarmloc::bench
