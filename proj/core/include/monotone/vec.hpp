#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "monotone/errors.hpp"

namespace monotone {

/// Hard cap on the ambient dimension. Everything in this library is
/// desk-scale; fixing the cap lets Vec live entirely on the stack.
inline constexpr int kMaxDim = 8;

/// A point of R^n, 1 <= n <= kMaxDim, with finite coordinates.
/// Primal and dual points share this type (dual pairing = dot product).
class Vec {
public:
    /// Dimension-0 placeholder; any real use requires a sized vector.
    Vec() = default;

    Vec(std::initializer_list<double> coords) { assign({coords.begin(), coords.size()}); }

    explicit Vec(std::span<const double> coords) { assign(coords); }

    explicit Vec(const std::vector<double>& coords)
        : Vec(std::span<const double>(coords.data(), coords.size())) {}

    static Vec zero(int dim) {
        check_dim(dim);
        Vec v;
        v.n_ = dim;
        v.c_.fill(0.0);
        return v;
    }

    /// Unit coordinate vector e_i.
    static Vec axis(int dim, int i, double scale = 1.0) {
        Vec v = zero(dim);
        if (i < 0 || i >= dim) throw InvalidInputError("Vec::axis: index out of range");
        v.c_[static_cast<std::size_t>(i)] = scale;
        return v;
    }

    int dim() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    const double* begin() const noexcept { return c_.data(); }
    const double* end() const noexcept { return c_.data() + n_; }

    std::span<const double> coords() const noexcept { return {c_.data(), static_cast<std::size_t>(n_)}; }

    std::vector<double> to_vector() const { return {begin(), end()}; }

    bool operator==(const Vec& o) const noexcept {
        if (n_ != o.n_) return false;
        for (int i = 0; i < n_; ++i)
            if (c_[static_cast<std::size_t>(i)] != o.c_[static_cast<std::size_t>(i)]) return false;
        return true;
    }

    Vec& operator+=(const Vec& o) {
        same_dim(o);
        for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] += o[i];
        return *this;
    }

    Vec& operator-=(const Vec& o) {
        same_dim(o);
        for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] -= o[i];
        return *this;
    }

    Vec& operator*=(double s) {
        for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < n_; ++i) {
            if (i) s += ", ";
            s += std::to_string(c_[static_cast<std::size_t>(i)]);
        }
        return s + ")";
    }

private:
    static void check_dim(int dim) {
        if (dim < 1 || dim > kMaxDim)
            throw InvalidInputError("Vec: dimension must be in [1, " + std::to_string(kMaxDim) +
                                    "], got " + std::to_string(dim));
    }

    void assign(std::span<const double> coords) {
        check_dim(static_cast<int>(coords.size()));
        n_ = static_cast<int>(coords.size());
        for (int i = 0; i < n_; ++i) {
            if (!std::isfinite(coords[static_cast<std::size_t>(i)]))
                throw InvalidInputError("Vec: non-finite coordinate");
            c_[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)];
        }
    }

    void same_dim(const Vec& o) const {
        if (n_ != o.n_) throw InvalidInputError("Vec: dimension mismatch");
    }

    std::array<double, kMaxDim> c_{};
    int n_ = 0;
};

inline double dot(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw InvalidInputError("dot: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double distance(const Vec& a, const Vec& b) { return norm(a - b); }

/// a / ||a||; throws if ||a|| <= eps.
inline Vec normalized(const Vec& a, double eps = 1e-300) {
    const double n = norm(a);
    if (n <= eps) throw InvalidInputError("normalized: vector too small");
    return (1.0 / n) * a;
}

}  // namespace monotone
