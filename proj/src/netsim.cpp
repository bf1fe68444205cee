#include "swarmloc/netsim.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

namespace swarmloc::net {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
    std::size_t to;
    int thirds;
};

std::vector<std::vector<Edge>> weighted_graph(const Deployment& d, const HopOptions& options) {
    const double r = d.comm_radius;
    const bool noisy = options.mode == HopMode::Optimized && options.noise.sigma_db > 0.0;
    Rng noise_rng(options.noise.seed);
    std::vector<std::vector<Edge>> g(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const double dist = distance(d.positions[i], d.positions[j]);
            if (dist > r) continue;
            HopMode mode = options.mode;
            if (mode == HopMode::Optimized && options.scope == FractionalScope::AnchorAdjacent &&
                !d.is_anchor[i] && !d.is_anchor[j])
                mode = HopMode::Classic;
            double measured = dist;
            if (noisy) {
                const double x = options.noise.sigma_db * noise_rng.normal();
                measured = dist * std::pow(10.0, x / (10.0 * options.noise.path_loss_exponent));
            }
            const int w = edge_hop_thirds(std::min(measured, r), r, mode);
            g[i].push_back({j, w});
            g[j].push_back({i, w});
        }
    }
    return g;
}

}  // namespace

std::vector<std::size_t> Deployment::anchors() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (is_anchor[i]) out.push_back(i);
    return out;
}

std::vector<std::size_t> Deployment::unknowns() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (!is_anchor[i]) out.push_back(i);
    return out;
}

void Deployment::validate() const {
    if (!(comm_radius > 0.0)) throw DeploymentError("deployment: communication radius must be positive");
    if (!(arena.width > 0.0 && arena.height > 0.0)) throw DeploymentError("deployment: arena must be non-empty");
    if (is_anchor.size() != positions.size()) throw DeploymentError("deployment: anchor flags do not match nodes");
    for (std::size_t i = 0; i < size(); ++i) {
        const Point p = positions[i];
        if (!(p.x >= 0.0 && p.x <= arena.width && p.y >= 0.0 && p.y <= arena.height))
            throw DeploymentError("deployment: node " + std::to_string(i) + " lies outside the arena");
    }
    if (anchors().size() < 3) throw DeploymentError("deployment: at least three anchors are required");
}

Deployment Deployment::scaled(double factor) const {
    Deployment out = *this;
    for (auto& p : out.positions) {
        p.x *= factor;
        p.y *= factor;
    }
    out.arena.width *= factor;
    out.arena.height *= factor;
    out.comm_radius *= factor;
    return out;
}

std::size_t anchor_count(std::size_t n_total, double anchor_ratio) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n_total) * anchor_ratio + 1e-9));
}

Deployment deploy(std::size_t n_total, double anchor_ratio, Arena arena, double comm_radius, Rng& rng,
                  std::size_t max_attempts) {
    if (!(anchor_ratio >= 0.0 && anchor_ratio <= 1.0))
        throw std::invalid_argument("deploy: anchor ratio must lie in [0, 1]");
    const std::size_t anchors = anchor_count(n_total, anchor_ratio);
    if (anchors < 3)
        throw std::invalid_argument("deploy: " + std::to_string(n_total) + " nodes at anchor ratio " +
                                    std::to_string(anchor_ratio) + " give fewer than three anchors");
    if (!(comm_radius > 0.0)) throw std::invalid_argument("deploy: communication radius must be positive");

    Deployment d;
    d.arena = arena;
    d.comm_radius = comm_radius;
    d.is_anchor.assign(n_total, false);
    for (std::size_t i = 0; i < anchors; ++i) d.is_anchor[i] = true;
    d.positions.resize(n_total);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        for (auto& p : d.positions) {
            p.x = rng.uniform(0.0, arena.width);
            p.y = rng.uniform(0.0, arena.height);
        }
        if (is_connected(d)) return d;
    }
    std::ostringstream msg;
    msg << "deploy: no connected placement of " << n_total << " nodes (anchor ratio " << anchor_ratio
        << ", radius " << comm_radius << " m, arena " << arena.width << "x" << arena.height << " m) in "
        << max_attempts << " attempts";
    throw DeploymentError(msg.str());
}

std::vector<std::vector<std::size_t>> adjacency(const Deployment& d) {
    std::vector<std::vector<std::size_t>> adj(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (distance(d.positions[i], d.positions[j]) <= d.comm_radius) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    return adj;
}

bool is_connected(const Deployment& d) {
    if (d.size() == 0) return true;
    const auto adj = adjacency(d);
    std::vector<bool> seen(d.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == d.size();
}

int edge_hop_thirds(double dist, double comm_radius, HopMode mode) {
    if (!(dist >= 0.0) || dist > comm_radius)
        throw std::invalid_argument("edge_hop_weight: distance " + std::to_string(dist) +
                                    " is not within the communication radius " + std::to_string(comm_radius));
    if (mode == HopMode::Classic) return 3;
    if (dist < comm_radius / 3.0) return 1;
    if (dist < 2.0 * comm_radius / 3.0) return 2;
    return 3;
}

double edge_hop_weight(double dist, double comm_radius, HopMode mode) {
    return edge_hop_thirds(dist, comm_radius, mode) / 3.0;
}

HopTable::HopTable(std::size_t nodes, std::vector<std::size_t> anchor_nodes)
    : nodes_(nodes), anchor_nodes_(std::move(anchor_nodes)), thirds_(nodes * anchor_nodes_.size(), kUnreachable) {}

double HopTable::hops(std::size_t node, std::size_t col) const {
    const std::int64_t t = thirds(node, col);
    return t == kUnreachable ? kInf : static_cast<double>(t) / 3.0;
}

HopTable min_hop_table(const Deployment& d, const HopOptions& options) {
    const auto graph = weighted_graph(d, options);
    HopTable table(d.size(), d.anchors());
    using Item = std::pair<std::int64_t, std::size_t>;
    std::vector<std::int64_t> dist(d.size());
    for (std::size_t col = 0; col < table.anchor_count(); ++col) {
        std::fill(dist.begin(), dist.end(), HopTable::kUnreachable);
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        const std::size_t source = table.anchor_node(col);
        dist[source] = 0;
        queue.push({0, source});
        while (!queue.empty()) {
            const auto [du, u] = queue.top();
            queue.pop();
            if (du != dist[u]) continue;
            for (const Edge& e : graph[u]) {
                const std::int64_t cand = du + e.thirds;
                if (dist[e.to] == HopTable::kUnreachable || cand < dist[e.to]) {
                    dist[e.to] = cand;
                    queue.push({cand, e.to});
                }
            }
        }
        for (std::size_t v = 0; v < d.size(); ++v) table.set_thirds(v, col, dist[v]);
    }
    return table;
}

double hop_size(std::size_t col, const Deployment& d, const HopTable& table) {
    const std::size_t self = table.anchor_node(col);
    double meters = 0.0;
    std::int64_t thirds = 0;
    for (std::size_t other = 0; other < table.anchor_count(); ++other) {
        if (other == col || !table.reachable(self, other)) continue;
        meters += distance(d.positions[self], d.positions[table.anchor_node(other)]);
        thirds += table.thirds(self, other);
    }
    if (thirds == 0)
        throw DeploymentError("hop_size: anchor node " + std::to_string(self) + " reaches no other anchor");
    return meters / (static_cast<double>(thirds) / 3.0);
}

std::vector<double> hop_sizes(const Deployment& d, const HopTable& table) {
    std::vector<double> out(table.anchor_count());
    for (std::size_t col = 0; col < out.size(); ++col) out[col] = hop_size(col, d, table);
    return out;
}

RangeEstimate estimate_distances(const Deployment& d, const HopTable& table) {
    const std::vector<double> sizes = hop_sizes(d, table);
    RangeEstimate est;
    est.unknown_nodes = d.unknowns();
    est.anchor_count = table.anchor_count();
    est.distances.assign(est.unknown_nodes.size() * est.anchor_count, kInf);
    est.hop_size_used.assign(est.unknown_nodes.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t row = 0; row < est.unknown_nodes.size(); ++row) {
        const std::size_t node = est.unknown_nodes[row];
        std::size_t nearest = table.anchor_count();
        for (std::size_t col = 0; col < table.anchor_count(); ++col) {
            if (!table.reachable(node, col)) continue;
            if (nearest == table.anchor_count() || table.thirds(node, col) < table.thirds(node, nearest))
                nearest = col;
        }
        if (nearest == table.anchor_count()) continue;
        const double size = sizes[nearest];
        est.hop_size_used[row] = size;
        for (std::size_t col = 0; col < table.anchor_count(); ++col) {
            if (table.reachable(node, col)) est.distances[row * est.anchor_count + col] = table.hops(node, col) * size;
        }
    }
    return est;
}

double mean_range_error(const Deployment& d, const HopTable& table, const RangeEstimate& est) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t row = 0; row < est.unknown_nodes.size(); ++row) {
        const Point p = d.positions[est.unknown_nodes[row]];
        for (std::size_t col = 0; col < est.anchor_count; ++col) {
            const double e = est.distance(row, col);
            if (!std::isfinite(e)) continue;
            sum += std::abs(e - distance(p, d.positions[table.anchor_node(col)]));
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

void write_deployment(std::ostream& out, const Deployment& d) {
    out << std::setprecision(17);
    out << "# index x y is_anchor\n";
    out << "arena " << d.arena.width << ' ' << d.arena.height << '\n';
    out << "radius " << d.comm_radius << '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        out << i << ' ' << d.positions[i].x << ' ' << d.positions[i].y << ' ' << (d.is_anchor[i] ? 1 : 0) << '\n';
    }
}

Deployment read_deployment(std::istream& in) {
    Deployment d;
    bool have_arena = false, have_radius = false;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw DeploymentError("deployment file line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "arena") {
            if (!(ls >> d.arena.width >> d.arena.height)) fail("malformed arena header");
            have_arena = true;
        } else if (head == "radius") {
            if (!(ls >> d.comm_radius)) fail("malformed radius header");
            have_radius = true;
        } else {
            std::size_t index = 0;
            Point p;
            int anchor = 0;
            std::istringstream ns(line);
            if (!(ns >> index >> p.x >> p.y >> anchor) || (anchor != 0 && anchor != 1)) fail("malformed node line");
            if (index != d.positions.size()) fail("node indices must be consecutive from 0");
            d.positions.push_back(p);
            d.is_anchor.push_back(anchor == 1);
        }
    }
    if (!have_arena || !have_radius) throw DeploymentError("deployment file: missing arena or radius header");
    d.validate();
    return d;
}

}  // namespace swarmloc::net
