/* Copyright 2026 The cudtaus Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cudtaus {

/// Dense row-major square matrix of doubles; just big enough for the small
/// covariance and design-matrix systems the samplers need.
struct DMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // n * n, row major

    DMatrix() = default;
    explicit DMatrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static DMatrix identity(std::size_t n) {
        DMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

/// Lower Cholesky factor L with A = L L^T; throws std::invalid_argument when
/// A is not (numerically) symmetric positive-definite.
inline DMatrix cholesky(const DMatrix& A) {
    const std::size_t n = A.n;
    DMatrix L(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = A.at(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= L.at(i, k) * L.at(j, k);
            if (i == j) {
                if (sum <= 0.0) throw std::invalid_argument("matrix is not positive-definite");
                L.at(i, i) = std::sqrt(sum);
            } else {
                L.at(i, j) = sum / L.at(j, j);
            }
        }
    }
    return L;
}

/// Solves A x = b given the Cholesky factor L of A.
inline std::vector<double> chol_solve(const DMatrix& L, const std::vector<double>& b) {
    const std::size_t n = L.n;
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= L.at(i, k) * y[k];
        y[i] = sum / L.at(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double sum = y[i];
        for (std::size_t k = i + 1; k < n; ++k) sum -= L.at(k, i) * x[k];
        x[i] = sum / L.at(i, i);
    }
    return x;
}

/// Solves L^T x = z (back substitution); with A = L L^T this draws
/// correlated normals as x ~ N(0, A^{-1})-free transform: if z ~ N(0, I)
/// then x = L^{-T} z has covariance (L L^T)^{-1} = A^{-1}.
inline std::vector<double> upper_solve_transposed(const DMatrix& L, const std::vector<double>& z) {
    const std::size_t n = L.n;
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double sum = z[i];
        for (std::size_t k = i + 1; k < n; ++k) sum -= L.at(k, i) * x[k];
        x[i] = sum / L.at(i, i);
    }
    return x;
}

/// Gauss-Jordan solve with partial pivoting; an independent route from the
/// Cholesky path, used for cross-checks and the non-SPD fallback.
inline std::vector<double> gauss_solve(DMatrix A, std::vector<double> b) {
    const std::size_t n = A.n;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(A.at(r, col)) > std::fabs(A.at(piv, col))) piv = r;
        if (A.at(piv, col) == 0.0) throw std::invalid_argument("singular linear system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(col, j));
            std::swap(b[piv], b[col]);
        }
        const double d = A.at(col, col);
        for (std::size_t j = 0; j < n; ++j) A.at(col, j) /= d;
        b[col] /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = A.at(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) A.at(r, j) -= f * A.at(col, j);
            b[r] -= f * b[col];
        }
    }
    return b;
}

inline DMatrix spd_inverse(const DMatrix& A) {
    const DMatrix L = cholesky(A);
    const std::size_t n = A.n;
    DMatrix inv(n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e.assign(n, 0.0);
        e[j] = 1.0;
        const std::vector<double> col = chol_solve(L, e);
        for (std::size_t i = 0; i < n; ++i) inv.at(i, j) = col[i];
    }
    return inv;
}

inline std::vector<double> mat_vec(const DMatrix& A, const std::vector<double>& v) {
    std::vector<double> out(A.n, 0.0);
    for (std::size_t i = 0; i < A.n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < A.n; ++j) sum += A.at(i, j) * v[j];
        out[i] = sum;
    }
    return out;
}

/// Kahan-compensated accumulator for order-independent aggregation.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0, comp_ = 0.0;
};

}  // namespace cudtaus
