#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace gossipmf {

/// Dense row-major matrix of doubles. Everything in scope is tiny
/// (n <= 3*(gmax+1)), so there is no sparsity or blocking anywhere.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::span<const double> row(int i) const {
        return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
    }

    std::span<double> data() { return a_; }
    std::span<const double> data() const { return a_; }

    double row_sum(int i) const {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j);
        return s;
    }

    double max_abs_diff(const Matrix& other) const {
        assert(rows_ == other.rows_ && cols_ == other.cols_);
        double d = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) d = std::max(d, std::abs(a_[k] - other.a_[k]));
        return d;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.rows());
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

/// a * w * a^T for square matrices, used by the covariance recursion.
inline Matrix sandwich(const Matrix& a, const Matrix& w) {
    return matmul(matmul(a, w), transpose(a));
}

/// p x n x n tensor of second derivatives, symmetric in the last two indices.
class HessianTensor {
public:
    HessianTensor() = default;
    HessianTensor(int p, int n)
        : p_(p), n_(n), a_(static_cast<std::size_t>(p) * n * n, 0.0) {}

    int outputs() const { return p_; }
    int inputs() const { return n_; }

    double& operator()(int i, int j, int k) {
        return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
    }
    double operator()(int i, int j, int k) const {
        return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
    }

    std::span<const double> data() const { return a_; }

private:
    int p_ = 0;
    int n_ = 0;
    std::vector<double> a_;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Plenty for the PSD diagnostics on matrices this small.
inline std::vector<double> symmetric_eigenvalues(const Matrix& m, int max_sweeps = 64) {
    assert(m.rows() == m.cols());
    const int n = m.rows();
    Matrix a = m;
    // symmetrize so tiny asymmetry from accumulation cannot bias rotations
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = s;
            a(j, i) = s;
        }
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace gossipmf
