#include "swarmloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "swarmloc/csv.hpp"
#include "swarmloc/parallel.hpp"

namespace swarmloc::loc {

void LocalizationProblem::validate() const {
    if (anchors.size() != distances.size())
        throw ConfigError("localization: anchor and distance counts differ");
    if (anchors.size() < 3) throw ConfigError("localization: at least three anchors are required");
    for (double d : distances) {
        if (!(std::isfinite(d) && d >= 0.0))
            throw ConfigError("localization: distances must be finite and non-negative");
    }
}

double residual(const LocalizationProblem& problem, Point p) {
    double sum = 0.0;
    for (std::size_t j = 0; j < problem.anchors.size(); ++j) {
        sum += std::abs(net::distance(p, problem.anchors[j]) - problem.distances[j]);
    }
    return sum;
}

Objective objective(const LocalizationProblem& problem) {
    problem.validate();
    Bounds box({0.0, 0.0}, {problem.search_box.width, problem.search_box.height});
    // Captures the problem by value so the objective outlives its argument.
    return Objective(std::move(box), [problem](std::span<const double> x) { return residual(problem, {x[0], x[1]}); });
}

Point localize_node(const LocalizationProblem& problem, const opt::OptimizerConfig& cfg) {
    const opt::OptimizationTrace trace = opt::run(objective(problem), cfg);
    return {trace.best_position[0], trace.best_position[1]};
}

Point multilaterate(const LocalizationProblem& problem) {
    problem.validate();
    const std::size_t m = problem.anchors.size();
    const Point ref = problem.anchors[m - 1];
    const double dref = problem.distances[m - 1];
    double ata00 = 0.0, ata01 = 0.0, ata11 = 0.0, atb0 = 0.0, atb1 = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const Point a = problem.anchors[j];
        const double dj = problem.distances[j];
        const double r0 = 2.0 * (ref.x - a.x);
        const double r1 = 2.0 * (ref.y - a.y);
        const double b = dj * dj - dref * dref - a.x * a.x - a.y * a.y + ref.x * ref.x + ref.y * ref.y;
        ata00 += r0 * r0;
        ata01 += r0 * r1;
        ata11 += r1 * r1;
        atb0 += r0 * b;
        atb1 += r1 * b;
    }
    const double det = ata00 * ata11 - ata01 * ata01;
    const double scale = (ata00 + ata11) * (ata00 + ata11);
    if (!(scale > 0.0) || std::abs(det) <= 1e-12 * scale)
        throw DegenerateGeometryError("multilateration: anchors are collinear or coincident");
    return {(ata11 * atb0 - ata01 * atb1) / det, (ata00 * atb1 - ata01 * atb0) / det};
}

ErrorSummary evaluate_errors(std::span<const Point> estimates, std::span<const Point> truth, double comm_radius) {
    if (estimates.empty()) throw ConfigError("evaluate_errors: no nodes to evaluate");
    if (estimates.size() != truth.size()) throw ConfigError("evaluate_errors: estimate and truth counts differ");
    if (!(comm_radius > 0.0)) throw ConfigError("evaluate_errors: communication radius must be positive");
    ErrorSummary s;
    s.per_node_error.reserve(estimates.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double e = net::distance(estimates[i], truth[i]);
        s.per_node_error.push_back(e);
        sum += e;
    }
    s.ae = sum / static_cast<double>(estimates.size());
    s.nre = s.ae / comm_radius;
    return s;
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::IBWOL: return "IBWOL";
        case Method::BWOL: return "BWOL";
        case Method::Multilateration: return "Multilateration";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "ibwol" || lower == "ibwo") return Method::IBWOL;
    if (lower == "bwol" || lower == "bwo") return Method::BWOL;
    if (lower == "multilateration" || lower == "ml") return Method::Multilateration;
    throw ConfigError("unknown localization method '" + std::string(name) + "'");
}

LocalizationProblem problem_for(const net::Deployment& d, const net::HopTable& table,
                                const net::RangeEstimate& ranges, std::size_t unknown_row) {
    LocalizationProblem p;
    p.search_box = d.arena;
    for (std::size_t col = 0; col < ranges.anchor_count; ++col) {
        const double dist = ranges.distance(unknown_row, col);
        if (!std::isfinite(dist)) continue;
        p.anchors.push_back(d.positions[table.anchor_node(col)]);
        p.distances.push_back(dist);
    }
    return p;
}

std::uint64_t node_seed(std::uint64_t seed, std::size_t unknown_row) {
    return derive_seed(seed, {static_cast<std::uint32_t>(unknown_row)});
}

LocalizationResult localize_all(const net::Deployment& d, const net::HopTable& table,
                                const net::RangeEstimate& ranges, Method method, const opt::OptimizerConfig& base,
                                std::uint64_t seed, std::size_t threads) {
    LocalizationResult result;
    result.method = method;
    result.node_ids = ranges.unknown_nodes;
    const std::size_t n = result.node_ids.size();
    result.estimates.resize(n);
    result.truth.resize(n);
    for (std::size_t row = 0; row < n; ++row) result.truth[row] = d.positions[result.node_ids[row]];
    if (n == 0) return result;

    parallel_for(n, threads, [&](std::size_t row) {
        const LocalizationProblem problem = problem_for(d, table, ranges, row);
        Point est;
        if (method == Method::Multilateration) {
            est = multilaterate(problem);
            est.x = std::clamp(est.x, 0.0, d.arena.width);
            est.y = std::clamp(est.y, 0.0, d.arena.height);
        } else {
            opt::OptimizerConfig cfg = base;
            cfg.variant = method == Method::IBWOL ? opt::Variant::IBWO : opt::Variant::BWO;
            cfg.seed = node_seed(seed, row);
            est = localize_node(problem, cfg);
        }
        result.estimates[row] = est;
    });

    ErrorSummary s = evaluate_errors(result.estimates, result.truth, d.comm_radius);
    result.ae = s.ae;
    result.nre = s.nre;
    result.per_node_error = std::move(s.per_node_error);
    return result;
}

void write_result_csv(std::ostream& out, std::span<const LocalizationResult> results) {
    csv::row(out, {"node_id", "true_x", "true_y", "est_x", "est_y", "error_m", "method"});
    for (const auto& r : results) {
        for (std::size_t i = 0; i < r.node_ids.size(); ++i) {
            csv::row(out, {std::to_string(r.node_ids[i]), csv::number(r.truth[i].x), csv::number(r.truth[i].y),
                           csv::number(r.estimates[i].x), csv::number(r.estimates[i].y),
                           csv::number(r.per_node_error[i]), to_string(r.method)});
        }
    }
}

}  // namespace swarmloc::loc
