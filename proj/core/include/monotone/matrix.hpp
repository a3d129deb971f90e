#pragma once

#include <cmath>
#include <vector>

#include "monotone/vec.hpp"

namespace monotone {

/// Small dense square matrix, row-major, n <= kMaxDim.
class Matrix {
public:
    Matrix() = default;

    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1 || n > kMaxDim) throw InvalidInputError("Matrix: bad dimension");
    }

    Matrix(int n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
        if (n < 1 || n > kMaxDim) throw InvalidInputError("Matrix: bad dimension");
        if (a_.size() != static_cast<std::size_t>(n) * n)
            throw InvalidInputError("Matrix: entry count does not match dimension");
        for (double v : a_)
            if (!std::isfinite(v)) throw InvalidInputError("Matrix: non-finite entry");
    }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// 2x2 counterclockwise rotation by angle theta.
    static Matrix rotation2(double theta) {
        Matrix m(2);
        m(0, 0) = std::cos(theta);
        m(0, 1) = -std::sin(theta);
        m(1, 0) = std::sin(theta);
        m(1, 1) = std::cos(theta);
        return m;
    }

    int dim() const noexcept { return n_; }

    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    const std::vector<double>& data() const noexcept { return a_; }

    Vec apply(const Vec& x) const {
        if (x.dim() != n_) throw InvalidInputError("Matrix::apply: dimension mismatch");
        Vec y = Vec::zero(n_);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    Matrix transposed() const {
        Matrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double operator_norm_bound() const {
        // Frobenius norm bounds the spectral norm; enough for step sizing.
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Smallest eigenvalue of the symmetric part A + A^T (implemented in
/// operators.cpp on top of Eigen). Monotonicity check: result >= -tol.
double min_eigenvalue_symmetric_part(const Matrix& a);

}  // namespace monotone
