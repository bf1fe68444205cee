#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "swarmloc/netsim.hpp"
#include "swarmloc/objective.hpp"
#include "swarmloc/optimizer.hpp"

// Position estimation of unknown robots from anchor range estimates:
// residual minimization with BWO/IBWO, or linearized least squares.
namespace swarmloc::loc {

using net::Point;

// Raised when the anchor geometry makes multilateration rank-deficient.
class DegenerateGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LocalizationProblem {
    std::vector<Point> anchors;
    std::vector<double> distances;
    net::Arena search_box;

    // Throws ConfigError unless there are >= 3 anchors with one finite,
    // non-negative distance each.
    void validate() const;
};

// Sum over anchors of | ||p - anchor_j|| - d_j |.
double residual(const LocalizationProblem& problem, Point p);

// residual() as a 2-D objective bounded by the search box.
Objective objective(const LocalizationProblem& problem);

// Best agent of an optimizer run on objective(problem).
Point localize_node(const LocalizationProblem& problem, const opt::OptimizerConfig& cfg);

// Subtracts the last anchor's circle equation from the others and solves the
// resulting (M-1) x 2 system through its normal equations. The estimate is
// not clamped.
Point multilaterate(const LocalizationProblem& problem);

struct ErrorSummary {
    double ae = 0.0;
    double nre = 0.0;
    std::vector<double> per_node_error;
};

// AE = mean Euclidean error, NRE = AE / R. Throws ConfigError for empty or
// mismatched inputs.
ErrorSummary evaluate_errors(std::span<const Point> estimates, std::span<const Point> truth, double comm_radius);

enum class Method { IBWOL, BWOL, Multilateration };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct LocalizationResult {
    Method method = Method::IBWOL;
    std::vector<std::size_t> node_ids;
    std::vector<Point> estimates;
    std::vector<Point> truth;
    double ae = 0.0;
    double nre = 0.0;
    std::vector<double> per_node_error;
};

// Problem for one unknown node: every anchor with a finite range estimate.
LocalizationProblem problem_for(const net::Deployment& d, const net::HopTable& table,
                                const net::RangeEstimate& ranges, std::size_t unknown_row);

// Optimizer seed of one node; shared by IBWOL and BWOL so they are paired.
std::uint64_t node_seed(std::uint64_t seed, std::size_t unknown_row);

// Localizes every unknown node of the deployment. `base` supplies population
// size and iteration budget for the optimizer methods; its seed and variant
// are overridden. Multilateration estimates are clamped to the arena.
// Returns AE = NRE = 0 with empty lists when there are no unknown nodes.
LocalizationResult localize_all(const net::Deployment& d, const net::HopTable& table,
                                const net::RangeEstimate& ranges, Method method, const opt::OptimizerConfig& base,
                                std::uint64_t seed, std::size_t threads = 0);

// CSV: node_id,true_x,true_y,est_x,est_y,error_m,method (header included).
void write_result_csv(std::ostream& out, std::span<const LocalizationResult> results);

}  // namespace swarmloc::loc
