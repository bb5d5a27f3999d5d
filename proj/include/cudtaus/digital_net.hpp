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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cudtaus/fbpoly.hpp"
#include "cudtaus/gf.hpp"

namespace cudtaus {

/// Maximum modulus degree the net machinery supports (bounded by the
/// built-in factorization table).
inline constexpr unsigned kMaxNetDegree = 20;

template <unsigned B>
using NetRow = std::vector<Fb<B>>;

template <unsigned B>
struct NetMatrix {
    unsigned m = 0;
    std::vector<NetRow<B>> rows;  // m rows of m entries

    static NetMatrix identity(unsigned m) {
        NetMatrix a;
        a.m = m;
        a.rows.assign(m, NetRow<B>(m));
        for (unsigned i = 0; i < m; ++i) a.rows[i][i] = Fb<B>::one();
        return a;
    }
};

template <unsigned B>
NetMatrix<B> mat_mul(const NetMatrix<B>& a, const NetMatrix<B>& c) {
    if (a.m != c.m) throw std::invalid_argument("matrix size mismatch");
    NetMatrix<B> r;
    r.m = a.m;
    r.rows.assign(a.m, NetRow<B>(a.m));
    for (unsigned i = 0; i < a.m; ++i)
        for (unsigned k = 0; k < a.m; ++k) {
            const Fb<B> aik = a.rows[i][k];
            if (aik.is_zero()) continue;
            for (unsigned j = 0; j < a.m; ++j) r.rows[i][j] += aik * c.rows[k][j];
        }
    return r;
}

template <unsigned B>
NetMatrix<B> mat_pow(NetMatrix<B> a, std::uint64_t e) {
    NetMatrix<B> r = NetMatrix<B>::identity(a.m);
    while (e > 0) {
        if (e & 1u) r = mat_mul(r, a);
        a = mat_mul(a, a);
        e >>= 1;
    }
    return r;
}

/// Transpose companion matrix A_0 of a monic p(x) = x^m - c_1 x^{m-1} - ...
/// - c_m: ones on the superdiagonal and (c_m, ..., c_1) in the last row.
/// A_0 advances the recurrence state (a_n, ..., a_{n+m-1}) by one step.
template <unsigned B>
NetMatrix<B> transpose_companion(const Poly<B>& p) {
    if (!p.is_monic() || p.degree() < 1)
        throw std::invalid_argument("companion matrix needs a monic nonconstant polynomial");
    const unsigned m = static_cast<unsigned>(p.degree());
    NetMatrix<B> a;
    a.m = m;
    a.rows.assign(m, NetRow<B>(m));
    for (unsigned i = 0; i + 1 < m; ++i) a.rows[i][i + 1] = Fb<B>::one();
    for (unsigned j = 0; j < m; ++j) a.rows[m - 1][j] = -p.coeff(static_cast<int>(j));
    return a;
}

/// The s generating matrices (I_m, A, A^2, ..., A^{s-1}) of the polynomial
/// Korobov point set of (p, q). Row r of the j-th matrix holds the
/// coefficients of q^j x^r mod p, which equals row r of A_0^{sigma j} when
/// q = x^sigma mod p. Every matrix is nonsingular.
template <unsigned B>
struct GeneratingMatrices {
    unsigned m = 0;
    std::vector<NetMatrix<B>> mats;

    unsigned dimensions() const { return static_cast<unsigned>(mats.size()); }
};

template <unsigned B>
GeneratingMatrices<B> korobov_matrices(const Poly<B>& p, const Poly<B>& q, unsigned s) {
    if (p.degree() < 1) throw std::invalid_argument("modulus must have degree >= 1");
    if (!p.is_monic()) throw std::invalid_argument("modulus must be monic");
    if (s < 1) throw std::invalid_argument("dimension must be >= 1");
    if (Poly<B>::gcd(p, q) != Poly<B>::one())
        throw std::invalid_argument("generating matrices need coprime (p, q)");
    const unsigned m = static_cast<unsigned>(p.degree());
    GeneratingMatrices<B> g;
    g.m = m;
    g.mats.reserve(s);
    Poly<B> qj = Poly<B>::one();  // q^j mod p
    for (unsigned j = 0; j < s; ++j) {
        NetMatrix<B> mat;
        mat.m = m;
        mat.rows.assign(m, NetRow<B>(m));
        Poly<B> f = qj;  // q^j x^r mod p
        for (unsigned r = 0; r < m; ++r) {
            for (unsigned k = 0; k < m; ++k) mat.rows[r][k] = f.coeff(static_cast<int>(k));
            f = Poly<B>::mod_mul(f, Poly<B>::x(), p);
        }
        g.mats.push_back(std::move(mat));
        qj = Poly<B>::mod_mul(qj, q, p);
    }
    return g;
}

namespace detail {

// Incremental Gaussian elimination over F_B on rows of length m <= 20.
// Rows are normalized to pivot 1 as they enter so later reductions are a
// single scaled subtraction per basis row.
template <unsigned B>
class RowEliminator {
  public:
    explicit RowEliminator(unsigned m) : m_(m) {}

    bool add_row(const std::array<std::uint8_t, kMaxNetDegree>& row) {
        std::array<std::uint8_t, kMaxNetDegree> r = row;
        for (unsigned bi = 0; bi < size_; ++bi) {
            const unsigned pc = pivot_[bi];
            const std::uint8_t c = r[pc];
            if (c == 0) continue;
            const auto& base = basis_[bi];
            for (unsigned j = pc; j < m_; ++j)
                r[j] = field_traits<B>::add(r[j], field_traits<B>::neg(field_traits<B>::mul(c, base[j])));
        }
        unsigned pc = m_;
        for (unsigned j = 0; j < m_; ++j)
            if (r[j] != 0) {
                pc = j;
                break;
            }
        if (pc == m_) return false;  // linearly dependent
        const std::uint8_t inv = Fb<B>(r[pc]).inverse().code();
        for (unsigned j = pc; j < m_; ++j) r[j] = field_traits<B>::mul(r[j], inv);
        basis_[size_] = r;
        pivot_[size_] = pc;
        ++size_;
        return true;
    }

    void pop() { --size_; }
    unsigned size() const { return size_; }

  private:
    unsigned m_;
    unsigned size_ = 0;
    std::array<std::array<std::uint8_t, kMaxNetDegree>, kMaxNetDegree + 1> basis_{};
    std::array<unsigned, kMaxNetDegree + 1> pivot_{};
};

// Depth-first search for the smallest number of leading rows, taken d_j from
// matrix dims[j] with d_0 >= 1 when require_first is set, that are linearly
// dependent. Only configurations strictly smaller than `bound` are explored;
// returns min(bound, smallest dependent size).
template <unsigned B>
class DependenceSearch {
  public:
    DependenceSearch(const GeneratingMatrices<B>& g, std::vector<unsigned> dims, bool require_first,
                     unsigned bound)
        : g_(g), dims_(std::move(dims)), require_first_(require_first), best_(bound), elim_(g.m) {
        packed_.resize(g_.mats.size());
        for (std::size_t j = 0; j < g_.mats.size(); ++j) {
            packed_[j].resize(g_.m);
            for (unsigned r = 0; r < g_.m; ++r) {
                packed_[j][r].fill(0);
                for (unsigned k = 0; k < g_.m; ++k)
                    packed_[j][r][k] = static_cast<std::uint8_t>(g_.mats[j].rows[r][k].code());
            }
        }
    }

    unsigned run() {
        dfs(0, 0);
        return best_;
    }

  private:
    void dfs(std::size_t oi, unsigned used) {
        if (oi == dims_.size()) return;
        const unsigned j = dims_[oi];
        unsigned pushed = 0;
        const unsigned dmin = (oi == 0 && require_first_) ? 1u : 0u;
        for (unsigned d = dmin;; ++d) {
            if (d > 0) {
                if (d > g_.m || used + pushed + 1 >= best_) break;
                if (!elim_.add_row(packed_[j][d - 1])) {
                    best_ = used + pushed + 1;
                    break;
                }
                ++pushed;
            }
            dfs(oi + 1, used + pushed);
        }
        while (pushed-- > 0) elim_.pop();
    }

    const GeneratingMatrices<B>& g_;
    std::vector<std::vector<std::array<std::uint8_t, kMaxNetDegree>>> packed_;
    std::vector<unsigned> dims_;
    bool require_first_;
    unsigned best_;
    RowEliminator<B> elim_;
};

}  // namespace detail

/// Per-dimension t-values t^{(s)} of one point set, s = 1..size().
struct TValueProfile {
    unsigned b = 0;
    unsigned m = 0;
    std::vector<int> t;  // t[s-1] = t-value in dimension s

    int at(unsigned s) const { return t.at(s - 1); }
};

/// Exact t-values for s = 1..s_max by rank elimination: t^(s) = m - rho_s + 1
/// where rho_s is the smallest total number of leading rows of the first s
/// matrices that is linearly dependent. Dimension s reuses rho_{s-1} as an
/// upper bound and only searches configurations that involve matrix s-1.
template <unsigned B>
TValueProfile t_value_profile(const GeneratingMatrices<B>& g, unsigned s_max) {
    if (s_max < 1 || s_max > g.dimensions())
        throw std::invalid_argument("profile dimension out of range");
    if (g.m > kMaxNetDegree) throw std::invalid_argument("modulus degree too large");
    TValueProfile prof;
    prof.b = B;
    prof.m = g.m;
    unsigned rho = g.m + 1;  // matrices[0] = I_m: no dependent leading rows
    prof.t.push_back(0);
    for (unsigned s = 2; s <= s_max; ++s) {
        std::vector<unsigned> dims;
        dims.push_back(s - 1);
        for (unsigned j = 0; j + 1 < s; ++j) dims.push_back(j);
        detail::DependenceSearch<B> search(g, std::move(dims), /*require_first=*/true, rho);
        rho = search.run();
        prof.t.push_back(static_cast<int>(g.m + 1 - rho));
    }
    return prof;
}

template <unsigned B>
int t_value(const GeneratingMatrices<B>& g, unsigned s) {
    return t_value_profile(g, s).at(s);
}

/// Theorem-based shortcut for s = 2: the t-value of the two-dimensional
/// Korobov point set of (p, q) equals K(q/p) - 1.
template <unsigned B>
int t_value_via_cf(const Poly<B>& q, const Poly<B>& p) {
    if (q.is_zero() || q.degree() >= p.degree())
        throw std::invalid_argument("t_value_via_cf needs 0 <= deg q < deg p");
    return cf_expand(q, p).K() - 1;
}

/// A point for the brute-force net oracle: one radix-B numerator per
/// coordinate, each carrying `digits` base-B digits (most significant
/// first), i.e. the coordinate value is numerator / B^digits.
struct OraclePoint {
    std::vector<std::uint64_t> coords;
};

/// Exact t-value by exhaustive enumeration of every elementary-interval
/// shape. Exponential in m and s; intended for b^m <= 3125 and s <= 5.
inline int oracle_t_value(const std::vector<OraclePoint>& points, unsigned b, unsigned m,
                          unsigned s, unsigned digits) {
    if (digits < m) throw std::invalid_argument("oracle points need at least m digits");
    std::uint64_t bm = 1;
    for (unsigned i = 0; i < m; ++i) bm *= b;
    if (points.size() != bm)
        throw std::invalid_argument("oracle expects exactly b^m points");
    for (const auto& pt : points)
        if (pt.coords.size() != s) throw std::invalid_argument("point dimension mismatch");

    // digit[i][j][k]: k-th most significant digit of coordinate j of point i
    std::vector<std::vector<std::vector<std::uint8_t>>> digit(
        points.size(), std::vector<std::vector<std::uint8_t>>(s, std::vector<std::uint8_t>(m)));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (unsigned j = 0; j < s; ++j) {
            std::uint64_t v = points[i].coords[j];
            for (unsigned k = digits; k-- > 0;) {
                if (k < m) digit[i][j][k] = static_cast<std::uint8_t>(v % b);
                v /= b;
            }
        }

    std::vector<std::uint32_t> counts;
    std::vector<unsigned> comp(s);
    for (unsigned t = 0; t <= m; ++t) {
        const unsigned total = m - t;
        std::uint64_t cells = 1;
        for (unsigned i = 0; i < total; ++i) cells *= b;
        const std::uint32_t expect = static_cast<std::uint32_t>(bm / cells);
        bool balanced = true;
        // enumerate compositions d_1 + ... + d_s = total
        auto rec = [&](auto&& self, unsigned j, unsigned rem) -> void {
            if (!balanced) return;
            if (j + 1 == s) {
                comp[j] = rem;
                counts.assign(cells, 0);
                for (std::size_t i = 0; i < points.size(); ++i) {
                    std::uint64_t cell = 0;
                    for (unsigned jj = 0; jj < s; ++jj)
                        for (unsigned k = 0; k < comp[jj]; ++k) cell = cell * b + digit[i][jj][k];
                    ++counts[cell];
                }
                for (std::uint32_t c : counts)
                    if (c != expect) {
                        balanced = false;
                        return;
                    }
                return;
            }
            for (unsigned d = 0; d <= rem && balanced; ++d) {
                comp[j] = d;
                self(self, j + 1, rem - d);
            }
        };
        rec(rec, 0, total);
        if (balanced) return static_cast<int>(t);
    }
    throw std::logic_error("oracle found no t-value");  // unreachable: t = m always balances
}

}  // namespace cudtaus
