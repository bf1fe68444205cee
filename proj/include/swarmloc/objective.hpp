#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swarmloc {

// Raised for invalid configurations or mismatched dimensions.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Per-dimension box constraints.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    Bounds() = default;
    Bounds(std::vector<double> lo, std::vector<double> hi);

    // Same interval [lo, hi] in every one of `dim` coordinates.
    static Bounds uniform(std::size_t dim, double lo, double hi);

    std::size_t dimension() const { return lower.size(); }
    void clamp(std::span<double> x) const;
    bool contains(std::span<const double> x) const;
};

// Type-erased box-bounded objective. The callable must be safe to invoke
// concurrently unless documented otherwise by its factory.
class Objective {
public:
    using Function = std::function<double(std::span<const double>)>;

    Objective(Bounds bounds, Function fn);

    std::size_t dimension() const { return bounds_.dimension(); }
    const Bounds& bounds() const { return bounds_; }
    double operator()(std::span<const double> x) const;

private:
    Bounds bounds_;
    Function fn_;
};

}  // namespace swarmloc
