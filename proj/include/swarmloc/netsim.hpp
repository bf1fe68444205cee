#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "swarmloc/rng.hpp"

// Robot deployments, the unit-disk communication graph, minimum-hop tables
// and DV-Hop range estimates (classic integer hops or fractional 1/3, 2/3, 1
// hops by signal-strength band).
namespace swarmloc::net {

// Raised when a deployment cannot be generated or parsed, or a ranging step
// has no usable reference.
class DeploymentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

struct Arena {
    double width = 100.0;
    double height = 100.0;
};

struct Deployment {
    std::vector<Point> positions;
    std::vector<bool> is_anchor;
    Arena arena;
    double comm_radius = 30.0;

    std::size_t size() const { return positions.size(); }
    std::vector<std::size_t> anchors() const;
    std::vector<std::size_t> unknowns() const;

    // Throws DeploymentError if any invariant (positions inside the arena,
    // at least three anchors, positive radius) is violated.
    void validate() const;

    // Copy with positions, arena and radius multiplied by `factor`.
    Deployment scaled(double factor) const;
};

// Number of anchors for a node count and ratio: floor(n_total * ratio),
// tolerant to the representation error of decimal ratios.
std::size_t anchor_count(std::size_t n_total, double anchor_ratio);

// Uniform placement over the arena; the first anchor_count(...) nodes are
// anchors. Placement is redrawn until the graph is connected, at most
// `max_attempts` times.
Deployment deploy(std::size_t n_total, double anchor_ratio, Arena arena, double comm_radius, Rng& rng,
                  std::size_t max_attempts = 100);

// Neighbours within comm_radius, ascending node order.
std::vector<std::vector<std::size_t>> adjacency(const Deployment& d);
bool is_connected(const Deployment& d);

enum class HopMode { Classic, Optimized };

// Which edges carry fractional weights in Optimized mode.
enum class FractionalScope {
    AllEdges,
    AnchorAdjacent,  // only edges with at least one anchor endpoint
};

// Log-normal shadowing applied to the signal-strength band decision. The
// measured distance is dist * 10^(X / (10 * path_loss_exponent)) with
// X ~ N(0, sigma_db^2), drawn once per edge. sigma_db = 0 disables it.
struct RssiNoise {
    double sigma_db = 0.0;
    double path_loss_exponent = 2.0;
    std::uint64_t seed = 0;
};

struct HopOptions {
    HopMode mode = HopMode::Optimized;
    FractionalScope scope = FractionalScope::AllEdges;
    RssiNoise noise{};
};

// Hop weight of an edge in thirds of a hop: Classic -> 3; Optimized -> 1 for
// dist < R/3, 2 for R/3 <= dist < 2R/3, 3 for 2R/3 <= dist <= R.
// Throws std::invalid_argument when dist is negative or exceeds R.
int edge_hop_thirds(double dist, double comm_radius, HopMode mode);
double edge_hop_weight(double dist, double comm_radius, HopMode mode);

// Minimum cumulative hop count from every node to every anchor. Counts are
// stored exactly as integer thirds.
class HopTable {
public:
    static constexpr std::int64_t kUnreachable = -1;

    HopTable(std::size_t nodes, std::vector<std::size_t> anchor_nodes);

    std::size_t nodes() const { return nodes_; }
    std::size_t anchor_count() const { return anchor_nodes_.size(); }
    // Node index of the anchor in column `col`.
    std::size_t anchor_node(std::size_t col) const { return anchor_nodes_[col]; }
    const std::vector<std::size_t>& anchor_nodes() const { return anchor_nodes_; }

    bool reachable(std::size_t node, std::size_t col) const { return thirds(node, col) != kUnreachable; }
    std::int64_t thirds(std::size_t node, std::size_t col) const { return thirds_[node * anchor_count() + col]; }
    void set_thirds(std::size_t node, std::size_t col, std::int64_t value) {
        thirds_[node * anchor_count() + col] = value;
    }
    // Hop count as a real; +infinity when unreachable.
    double hops(std::size_t node, std::size_t col) const;

private:
    std::size_t nodes_;
    std::vector<std::size_t> anchor_nodes_;
    std::vector<std::int64_t> thirds_;
};

HopTable min_hop_table(const Deployment& d, const HopOptions& options);

// Average hop size of the anchor in column `col`: sum of Euclidean distances
// to the other reachable anchors over the sum of hop counts to them.
double hop_size(std::size_t col, const Deployment& d, const HopTable& table);
std::vector<double> hop_sizes(const Deployment& d, const HopTable& table);

struct RangeEstimate {
    std::vector<std::size_t> unknown_nodes;
    std::size_t anchor_count = 0;
    std::vector<double> distances;      // unknown-major, +infinity where unreachable
    std::vector<double> hop_size_used;  // per unknown node, NaN if no anchor reachable

    double distance(std::size_t unknown_row, std::size_t col) const {
        return distances[unknown_row * anchor_count + col];
    }
};

// Each unknown node scales its hop counts by the hop size of its nearest
// anchor in hops (ties to the lowest column).
RangeEstimate estimate_distances(const Deployment& d, const HopTable& table);

// Mean |estimated - true| distance over all finite unknown/anchor pairs.
double mean_range_error(const Deployment& d, const HopTable& table, const RangeEstimate& est);

// Flat text format:
//   arena <width> <height>
//   radius <R>
//   <index> <x> <y> <is_anchor 0|1>     one line per node
// Lines starting with '#' are comments.
void write_deployment(std::ostream& out, const Deployment& d);
Deployment read_deployment(std::istream& in);

}  // namespace swarmloc::net
