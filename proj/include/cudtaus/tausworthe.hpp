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

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cudtaus/digital_net.hpp"
#include "cudtaus/fbpoly.hpp"
#include "cudtaus/gf.hpp"

namespace cudtaus {

/// Default digit count w per field: enough resolution for at least 32 bits
/// of output (b^w >= 2^32) while numerators stay exact in a double.
template <unsigned B>
constexpr unsigned default_digit_count() {
    if constexpr (B == 2) return 32;
    else if constexpr (B == 4) return 16;
    else return 20;
}

/// Parameters (b, m, w, p, q, sigma) of one maximal-period Tausworthe
/// generator. p(x) = x^m - c_1 x^{m-1} - ... - c_m must be primitive,
/// q = x^sigma mod p, 0 < sigma < b^m - 1 with gcd(sigma, b^m - 1) = 1,
/// and w >= m.
template <unsigned B>
struct GeneratorParams {
    unsigned m = 0;
    unsigned w = 0;
    Poly<B> p;
    Poly<B> q;
    std::uint64_t sigma = 0;

    std::uint64_t period() const { return field_power<B>(m) - 1; }

    static GeneratorParams create(Poly<B> p, Poly<B> q, std::uint64_t sigma,
                                  unsigned w = default_digit_count<B>()) {
        GeneratorParams g;
        if (p.degree() < 1) throw std::invalid_argument("modulus must have degree >= 1");
        g.m = static_cast<unsigned>(p.degree());
        if (w < g.m) throw std::invalid_argument("digit count w must satisfy w >= m");
        if (g.m > kMaxNetDegree) throw std::invalid_argument("modulus degree too large");
        if (!p.is_monic()) throw std::invalid_argument("modulus must be monic");
        if (!is_primitive(p)) throw std::invalid_argument("modulus is not primitive");
        const std::uint64_t n = field_power<B>(g.m) - 1;
        if (sigma == 0 || sigma >= n)
            throw std::invalid_argument("step size must satisfy 0 < sigma < b^m - 1");
        if (gcd_u64(sigma, n) != 1)
            throw std::invalid_argument("step size is not coprime to b^m - 1");
        if (Poly<B>::divmod(q, p).second != Poly<B>::mod_pow(Poly<B>::x(), sigma, p))
            throw std::invalid_argument("multiplier q does not equal x^sigma mod p");
        g.w = w;
        g.p = std::move(p);
        g.q = std::move(q);
        g.sigma = sigma;
        return g;
    }

    /// Builds params from (p, q), computing sigma by discrete logarithm.
    static GeneratorParams from_pq(Poly<B> p, Poly<B> q, unsigned w = default_digit_count<B>()) {
        if (!is_primitive(p)) throw std::invalid_argument("modulus is not primitive");
        const std::uint64_t sigma = discrete_log(q, p, /*check_primitive=*/false);
        return create(std::move(p), std::move(q), sigma, w);
    }
};

/// Generating matrices (I, A, ..., A^{s-1}) with A = A_0^sigma for a
/// validated parameter set; the (p, q, sigma) consistency was checked at
/// construction, so this is the korobov_matrices build applied to a
/// maximal-period pair.
template <unsigned B>
GeneratingMatrices<B> build_matrices(const GeneratorParams<B>& params, unsigned s) {
    return korobov_matrices(params.p, params.q, s);
}

/// The w x w state transition matrix of Eq-style form: only the first m
/// columns are nonzero; column k lists how state digit k of the current
/// block feeds every digit of the next block. Row j holds the coefficients
/// of x^{sigma + j} mod p, i.e. the linear form giving digit j of the next
/// state in terms of the current leading m digits.
template <unsigned B>
struct Transition {
    unsigned m = 0;
    unsigned w = 0;
    std::vector<std::vector<Fb<B>>> rows;  // w rows of m entries

    // For B = 4: bit-plane packing of the m columns and their alpha
    // multiples. Bit j of each word corresponds to state digit j.
    std::vector<std::uint64_t> col_hi, col_lo;            // planes of column k
    std::vector<std::uint64_t> alpha_col_hi, alpha_col_lo;  // planes of alpha * column k

    /// Full w x w matrix (first m columns then zeros), for tests.
    std::vector<std::vector<Fb<B>>> dense() const {
        std::vector<std::vector<Fb<B>>> d(w, std::vector<Fb<B>>(w));
        for (unsigned j = 0; j < w; ++j)
            for (unsigned k = 0; k < m; ++k) d[j][k] = rows[j][k];
        return d;
    }
};

template <unsigned B>
Transition<B> build_transition(const GeneratorParams<B>& params) {
    const unsigned m = params.m, w = params.w;
    if (w < m) throw std::invalid_argument("transition needs w >= m");
    Transition<B> t;
    t.m = m;
    t.w = w;
    t.rows.assign(w, std::vector<Fb<B>>(m));
    Poly<B> f = Poly<B>::divmod(params.q, params.p).second;  // x^{sigma + j} mod p
    for (unsigned j = 0; j < w; ++j) {
        for (unsigned k = 0; k < m; ++k) t.rows[j][k] = f.coeff(static_cast<int>(k));
        f = Poly<B>::mod_mul(f, Poly<B>::x(), params.p);
    }
    if constexpr (B == 4) {
        t.col_hi.assign(m, 0);
        t.col_lo.assign(m, 0);
        t.alpha_col_hi.assign(m, 0);
        t.alpha_col_lo.assign(m, 0);
        const Fb<4> alpha(2);
        for (unsigned k = 0; k < m; ++k)
            for (unsigned j = 0; j < w; ++j) {
                const auto [hi, lo] = f2_decompose(t.rows[j][k]);
                t.col_hi[k] |= static_cast<std::uint64_t>(hi) << j;
                t.col_lo[k] |= static_cast<std::uint64_t>(lo) << j;
                const auto [ahi, alo] = f2_decompose(alpha * t.rows[j][k]);
                t.alpha_col_hi[k] |= static_cast<std::uint64_t>(ahi) << j;
                t.alpha_col_lo[k] |= static_cast<std::uint64_t>(alo) << j;
            }
    }
    return t;
}

/// Reference generator: keeps the w state digits (a_{i sigma}, ...,
/// a_{i sigma + w - 1}) as bytes and advances with a dense column-sweep
/// product by the transition matrix. One instance is single-threaded.
template <unsigned B>
class Generator {
  public:
    Generator(const GeneratorParams<B>& params, const Transition<B>& trans,
              std::optional<std::vector<unsigned>> seed_digits = std::nullopt)
        : m_(params.m), w_(params.w), trans_(&trans) {
        std::vector<unsigned> seed;
        if (seed_digits) {
            seed = *seed_digits;
            if (seed.size() != m_) throw std::invalid_argument("seed needs exactly m digits");
        } else {
            seed.assign(m_, 0);
            seed[0] = 1;
        }
        bool nonzero = false;
        for (unsigned d : seed) nonzero |= (d != 0);
        if (!nonzero) throw std::invalid_argument("degenerate all-zero seed");
        // expand the m seed digits to the first w digits via the recurrence
        // a_n = c_1 a_{n-1} + ... + c_m a_{n-m}
        state_.assign(w_, Fb<B>::zero());
        for (unsigned i = 0; i < m_; ++i) state_[i] = Fb<B>(seed[i]);
        for (unsigned n = m_; n < w_; ++n) {
            Fb<B> acc;
            for (unsigned i = 1; i <= m_; ++i)
                acc += (-params.p.coeff(static_cast<int>(m_ - i))) * state_[n - i];
            state_[n] = acc;
        }
    }

    /// Current output value as a radix-B numerator with w digits, most
    /// significant digit first: u = numerator / B^w.
    std::uint64_t numerator() const {
        std::uint64_t v = 0;
        for (unsigned j = 0; j < w_; ++j) v = v * B + state_[j].eta();
        return v;
    }

    /// Returns the current output and advances the state by sigma steps.
    std::uint64_t next_numerator() {
        const std::uint64_t out = numerator();
        advance();
        return out;
    }

    double next_u() {
        return static_cast<double>(next_numerator()) / static_cast<double>(field_power<B>(w_));
    }

    const std::vector<Fb<B>>& state() const { return state_; }

    void advance() {
        std::vector<Fb<B>> next(w_, Fb<B>::zero());
        for (unsigned k = 0; k < m_; ++k) {
            const Fb<B> c = state_[k];
            if (c.is_zero()) continue;
            for (unsigned j = 0; j < w_; ++j) next[j] += c * trans_->rows[j][k];
        }
        state_ = std::move(next);
    }

  private:
    unsigned m_, w_;
    const Transition<B>* trans_;
    std::vector<Fb<B>> state_;
};

/// Fast generator over F4: the state is held as two w-bit planes (alpha
/// coordinates and unit coordinates) and a step XORs the precomputed column
/// masks selected by the state bits, so the F4 update runs as plain F2 word
/// arithmetic.
class F4FastGenerator {
  public:
    F4FastGenerator(const GeneratorParams<4>& params, const Transition<4>& trans,
                    std::optional<std::vector<unsigned>> seed_digits = std::nullopt)
        : m_(params.m), w_(params.w), trans_(&trans) {
        Generator<4> ref(params, trans, std::move(seed_digits));
        hi_ = lo_ = 0;
        for (unsigned j = 0; j < w_; ++j) {
            const auto [hi, lo] = f2_decompose(ref.state()[j]);
            hi_ |= static_cast<std::uint64_t>(hi) << j;
            lo_ |= static_cast<std::uint64_t>(lo) << j;
        }
    }

    std::uint64_t numerator() const {
        std::uint64_t v = 0;
        for (unsigned j = 0; j < w_; ++j)
            v = (v << 2) | (((hi_ >> j) & 1u) << 1) | ((lo_ >> j) & 1u);
        return v;
    }

    std::uint64_t next_numerator() {
        const std::uint64_t out = numerator();
        advance();
        return out;
    }

    void advance() {
        std::uint64_t nh = 0, nl = 0;
        for (unsigned k = 0; k < m_; ++k) {
            if ((hi_ >> k) & 1u) {
                nh ^= trans_->alpha_col_hi[k];
                nl ^= trans_->alpha_col_lo[k];
            }
            if ((lo_ >> k) & 1u) {
                nh ^= trans_->col_hi[k];
                nl ^= trans_->col_lo[k];
            }
        }
        hi_ = nh;
        lo_ = nl;
    }

  private:
    unsigned m_, w_;
    const Transition<4>* trans_;
    std::uint64_t hi_, lo_;
};

/// All b^m - 1 outputs of one period as radix-B numerators, starting from
/// the given seed (default (1, 0, ..., 0)). Uses the bit-plane path for F4.
template <unsigned B>
std::vector<std::uint64_t> full_period_numerators(
    const GeneratorParams<B>& params, std::optional<std::vector<unsigned>> seed_digits = std::nullopt) {
    const Transition<B> trans = build_transition(params);
    const std::uint64_t n = params.period();
    std::vector<std::uint64_t> out;
    out.reserve(n);
    if constexpr (B == 4) {
        F4FastGenerator gen(params, trans, std::move(seed_digits));
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(gen.next_numerator());
    } else {
        Generator<B> gen(params, trans, std::move(seed_digits));
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(gen.next_numerator());
    }
    return out;
}

/// Digit-wise field addition of two w-digit radix-B numerators through the
/// output bijection eta: digit d maps to eta(eta^{-1}(d_x) + eta^{-1}(d_z)).
/// In characteristic 2 (B = 2, 4) this is a plain XOR of numerators.
template <unsigned B>
std::uint64_t digital_shift_numerator(std::uint64_t x, std::uint64_t z, unsigned w) {
    if constexpr (B == 2 || B == 4) {
        (void)w;
        return x ^ z;
    } else {
        std::uint64_t out = 0, scale = 1;
        for (unsigned j = 0; j < w; ++j) {
            const unsigned dx = static_cast<unsigned>(x % B), dz = static_cast<unsigned>(z % B);
            const unsigned d = (Fb<B>::eta_inv(dx) + Fb<B>::eta_inv(dz)).eta();
            out += scale * d;
            x /= B;
            z /= B;
            scale *= B;
        }
        return out;
    }
}

/// Block assembly scheme for CUD driving sequences.
enum class BlockScheme {
    kLoops,     // d = gcd(s, N-1) short loops concatenated after the origin
    kBalanced,  // stride r = min{r >= s : gcd(r, N-1) = 1}, discarding r - s values
};

/// Index map for s-dimensional points assembled from one full period of
/// outputs. Point 0 is the origin; points 1..b^m-1 follow the selected
/// scheme. Coordinate r of point i is u[index(i, r)].
class BlockIndexer {
  public:
    BlockIndexer(std::uint64_t period, unsigned s, BlockScheme scheme)
        : n1_(period), s_(s), scheme_(scheme) {
        if (s < 1) throw std::invalid_argument("dimension must be >= 1");
        if (scheme == BlockScheme::kLoops) {
            stride_ = s;
            d_ = gcd_u64(s, n1_);
            loop_len_ = n1_ / d_;
        } else {
            stride_ = s;
            while (gcd_u64(stride_, n1_) != 1) ++stride_;
            d_ = 1;
            loop_len_ = n1_;
        }
    }

    std::uint64_t point_count() const { return n1_ + 1; }

    /// Stream index of coordinate r of point i (i >= 1).
    std::uint64_t index(std::uint64_t i, unsigned r) const {
        const std::uint64_t k = i - 1;
        if (scheme_ == BlockScheme::kLoops) {
            const std::uint64_t loop = k / loop_len_, pos = k % loop_len_;
            return (loop + pos * s_ + r) % n1_;
        }
        return (k * stride_ + r) % n1_;
    }

    std::uint64_t loops() const { return d_; }
    std::uint64_t stride() const { return stride_; }

  private:
    std::uint64_t n1_;
    unsigned s_;
    BlockScheme scheme_;
    std::uint64_t stride_ = 0, d_ = 0, loop_len_ = 0;
};

/// A materialized CUD driving sequence: b^m s-dimensional points (origin
/// first, pre-shift), optionally digitally shifted. Points are stored as
/// w-digit radix-B numerators; value(i, r) converts to [0, 1).
template <unsigned B>
struct DrivingSequence {
    unsigned s = 0;
    unsigned w = 0;
    BlockScheme scheme = BlockScheme::kLoops;
    std::vector<std::uint64_t> shift;               // empty = unshifted
    std::vector<std::vector<std::uint64_t>> points;  // point -> s numerators

    double value(std::size_t i, unsigned r) const {
        return static_cast<double>(points[i][r]) / static_cast<double>(field_power<B>(w));
    }
};

template <unsigned B>
DrivingSequence<B> assemble_driving_sequence(const GeneratorParams<B>& params, unsigned s,
                                             BlockScheme scheme = BlockScheme::kLoops,
                                             std::vector<std::uint64_t> shift = {},
                                             std::optional<std::uint64_t> count = std::nullopt) {
    if (!shift.empty() && shift.size() != s)
        throw std::invalid_argument("digital shift must have one entry per coordinate");
    const std::vector<std::uint64_t> u = full_period_numerators(params);
    const BlockIndexer idx(params.period(), s, scheme);
    const std::uint64_t total = count.value_or(idx.point_count());
    if (total > idx.point_count())
        throw std::invalid_argument("requested more points than one period provides");
    DrivingSequence<B> seq;
    seq.s = s;
    seq.w = params.w;
    seq.scheme = scheme;
    seq.shift = shift;
    seq.points.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) {
        std::vector<std::uint64_t> pt(s, 0);
        if (i > 0)
            for (unsigned r = 0; r < s; ++r) pt[r] = u[idx.index(i, r)];
        if (!shift.empty())
            for (unsigned r = 0; r < s; ++r)
                pt[r] = digital_shift_numerator<B>(pt[r], shift[r], params.w);
        seq.points.push_back(std::move(pt));
    }
    return seq;
}

/// The s-dimensional QMC point set of overlapping blocks plus the origin:
/// {0} union {(u_i, ..., u_{i+s-1}) : i = 0..b^m-2}, as oracle points.
template <unsigned B>
std::vector<OraclePoint> overlapping_net(const GeneratorParams<B>& params, unsigned s,
                                         std::vector<std::uint64_t> shift = {}) {
    if (!shift.empty() && shift.size() != s)
        throw std::invalid_argument("digital shift must have one entry per coordinate");
    const std::vector<std::uint64_t> u = full_period_numerators(params);
    const std::uint64_t n1 = params.period();
    std::vector<OraclePoint> pts;
    pts.reserve(n1 + 1);
    auto shifted = [&](std::uint64_t v, unsigned r) {
        return shift.empty() ? v : digital_shift_numerator<B>(v, shift[r], params.w);
    };
    OraclePoint origin;
    origin.coords.assign(s, 0);
    for (unsigned r = 0; r < s; ++r) origin.coords[r] = shifted(0, r);
    pts.push_back(std::move(origin));
    for (std::uint64_t i = 0; i < n1; ++i) {
        OraclePoint pt;
        pt.coords.resize(s);
        for (unsigned r = 0; r < s; ++r) pt.coords[r] = shifted(u[(i + r) % n1], r);
        pts.push_back(std::move(pt));
    }
    return pts;
}

}  // namespace cudtaus
