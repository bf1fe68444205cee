#include "swarmloc/objective.hpp"

#include <algorithm>

namespace swarmloc {

Bounds::Bounds(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.empty() || lower.size() != upper.size())
        throw ConfigError("bounds: lower and upper must have the same non-zero length");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] <= upper[j]))
            throw ConfigError("bounds: lower[" + std::to_string(j) + "] exceeds upper");
    }
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi) {
    return Bounds(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

void Bounds::clamp(std::span<double> x) const {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], lower[j], upper[j]);
}

bool Bounds::contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
    }
    return true;
}

Objective::Objective(Bounds bounds, Function fn) : bounds_(std::move(bounds)), fn_(std::move(fn)) {
    if (bounds_.dimension() == 0) throw ConfigError("objective: dimension must be at least 1");
    if (!fn_) throw ConfigError("objective: empty callable");
}

double Objective::operator()(std::span<const double> x) const {
    if (x.size() != dimension())
        throw ConfigError("objective: expected dimension " + std::to_string(dimension()) + ", got " +
                          std::to_string(x.size()));
    return fn_(x);
}

}  // namespace swarmloc
