#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

namespace swarmloc {

// Deterministic random source. Every draw is defined here on top of the raw
// mt19937_64 stream rather than through the std:: distributions, whose output
// is implementation-defined; this keeps traces bit-identical across standard
// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0, 1); zero draws are resampled.
    double uniform_open() {
        for (;;) {
            const double u = uniform();
            if (u > 0.0) return u;
        }
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n) by rejection, n >= 1.
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x < limit) return static_cast<std::size_t>(x % bound);
        }
    }

    // Standard normal via Box-Muller; one pair of uniforms per draw.
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Fisher-Yates permutation of 0..n-1, drawing index(i + 1) for i = n-1 .. 1.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = index(i);
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

private:
    std::mt19937_64 engine_;
};

// Derives a child seed from a master seed and a list of 32-bit words through
// std::seed_seq, whose mixing algorithm is fixed by the standard.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint32_t> words) {
    std::vector<std::uint32_t> material;
    material.reserve(words.size() + 2);
    material.push_back(static_cast<std::uint32_t>(master));
    material.push_back(static_cast<std::uint32_t>(master >> 32));
    material.insert(material.end(), words.begin(), words.end());
    std::seed_seq seq(material.begin(), material.end());
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace swarmloc
