#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "monotone/vec.hpp"

namespace monotone {

/// splitmix64 step; used to derive independent streams from one user seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Seeded random source. All floating draws are produced by hand from raw
/// 64-bit engine output, so a (seed, stream) pair pins the exact sequence —
/// no dependence on std::*_distribution implementation details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Independent stream named after the consumer. Checkers never share a
    /// stream: each derives its own from (seed, stream id).
    static Rng derive(std::uint64_t seed, std::string_view stream) {
        std::uint64_t s = seed ^ fnv1a64(stream);
        splitmix64(s);
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(eng_() % span);
    }

    /// Standard normal via Marsaglia polar (deterministic, cached spare).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    Vec uniform_box(const Vec& lo, const Vec& hi) {
        Vec r = Vec::zero(lo.dim());
        for (int i = 0; i < lo.dim(); ++i) r[i] = uniform(lo[i], hi[i]);
        return r;
    }

    Vec uniform_cube(int dim, double half_width) {
        Vec r = Vec::zero(dim);
        for (int i = 0; i < dim; ++i) r[i] = uniform(-half_width, half_width);
        return r;
    }

    Vec unit_vector(int dim) {
        for (;;) {
            Vec g = Vec::zero(dim);
            double n2 = 0.0;
            for (int i = 0; i < dim; ++i) {
                g[i] = normal();
                n2 += g[i] * g[i];
            }
            if (n2 > 1e-24) return (1.0 / std::sqrt(n2)) * g;
        }
    }

    /// Uniform in the closed ball of radius r.
    Vec in_ball(int dim, double r) {
        const double u = std::pow(uniform01(), 1.0 / dim);
        return (r * u) * unit_vector(dim);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace monotone
