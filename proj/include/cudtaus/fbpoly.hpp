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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cudtaus/gf.hpp"

namespace cudtaus {

/// Raised when a computation needs data outside the built-in configuration
/// (e.g. the factorization of b^m - 1 for an unsupported (b, m)).
class ConfigurationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dense polynomial over F_B, coefficients stored constant term first with no
/// trailing zeros (the zero polynomial has an empty coefficient vector).
template <unsigned B>
class Poly {
  public:
    /// Degree sentinel for the zero polynomial ("negative infinity"). Chosen
    /// far below any real degree so degree comparisons stay meaningful.
    static constexpr int kNegInfDegree = std::numeric_limits<int>::min() / 4;

    Poly() = default;
    explicit Poly(std::vector<Fb<B>> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<unsigned> codes) {
        c_.reserve(codes.size());
        for (unsigned code : codes) c_.push_back(Fb<B>(code));
        trim();
    }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly({1u}); }
    static Poly x() { return Poly({0u, 1u}); }
    static Poly constant(Fb<B> c) { return c.is_zero() ? Poly() : Poly(std::vector<Fb<B>>{c}); }
    /// x^k
    static Poly monomial(unsigned k, Fb<B> coeff = Fb<B>::one()) {
        if (coeff.is_zero()) return Poly();
        std::vector<Fb<B>> c(k + 1);
        c[k] = coeff;
        return Poly(std::move(c));
    }
    static Poly from_codes(const std::vector<unsigned>& codes) {
        std::vector<Fb<B>> c;
        c.reserve(codes.size());
        for (unsigned code : codes) c.push_back(Fb<B>(code));
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
    const std::vector<Fb<B>>& coeffs() const { return c_; }

    Fb<B> coeff(int i) const {
        if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) return Fb<B>::zero();
        return c_[static_cast<std::size_t>(i)];
    }
    Fb<B> leading_coeff() const { return c_.empty() ? Fb<B>::zero() : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == Fb<B>::one(); }

    Poly made_monic() const {
        if (is_zero()) throw std::domain_error("cannot normalize the zero polynomial");
        return *this * constant(leading_coeff().inverse());
    }

    friend Poly operator+(const Poly& f, const Poly& g) {
        std::vector<Fb<B>> c(std::max(f.c_.size(), g.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeff(static_cast<int>(i)) + g.coeff(static_cast<int>(i));
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& f, const Poly& g) {
        std::vector<Fb<B>> c(std::max(f.c_.size(), g.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeff(static_cast<int>(i)) - g.coeff(static_cast<int>(i));
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& f, const Poly& g) {
        if (f.is_zero() || g.is_zero()) return Poly();
        std::vector<Fb<B>> c(f.c_.size() + g.c_.size() - 1);
        for (std::size_t i = 0; i < f.c_.size(); ++i)
            for (std::size_t j = 0; j < g.c_.size(); ++j) c[i + j] += f.c_[i] * g.c_[j];
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly& f, const Poly& g) {
        if (f.c_.size() != g.c_.size()) return false;
        for (std::size_t i = 0; i < f.c_.size(); ++i)
            if (f.c_[i] != g.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const Poly& f, const Poly& g) { return !(f == g); }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor).
    static std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
        if (g.is_zero()) throw std::domain_error("polynomial division by zero");
        if (f.degree() < g.degree()) return {Poly(), f};
        const Fb<B> lg_inv = g.leading_coeff().inverse();
        std::vector<Fb<B>> rem = f.c_;
        std::vector<Fb<B>> quot(static_cast<std::size_t>(f.degree() - g.degree()) + 1);
        for (int d = f.degree(); d >= g.degree(); --d) {
            const Fb<B> top = rem[static_cast<std::size_t>(d)];
            if (top.is_zero()) continue;
            const Fb<B> q = top * lg_inv;
            quot[static_cast<std::size_t>(d - g.degree())] = q;
            for (int i = 0; i <= g.degree(); ++i)
                rem[static_cast<std::size_t>(d - g.degree() + i)] -= q * g.coeff(i);
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    /// Monic greatest common divisor; gcd(f, 0) = monic f.
    static Poly gcd(Poly f, Poly g) {
        if (f.is_zero() && g.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
        while (!g.is_zero()) {
            Poly r = divmod(f, g).second;
            f = std::move(g);
            g = std::move(r);
        }
        return f.made_monic();
    }

    static Poly mod_mul(const Poly& f, const Poly& g, const Poly& p) {
        if (p.is_zero()) throw std::domain_error("reduction modulo the zero polynomial");
        return divmod(f * g, p).second;
    }

    static Poly mod_pow(Poly base, std::uint64_t e, const Poly& p) {
        if (p.is_zero()) throw std::domain_error("reduction modulo the zero polynomial");
        Poly acc = one();
        base = divmod(base, p).second;
        while (e > 0) {
            if (e & 1u) acc = mod_mul(acc, base, p);
            base = mod_mul(base, base, p);
            e >>= 1;
        }
        return divmod(acc, p).second;
    }

    /// Packs the coefficient codes into a radix-B integer (constant term in
    /// the least significant digit). Requires B^(deg+1) to fit in 64 bits.
    std::uint64_t encode() const {
        std::uint64_t v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * B + it->code();
        return v;
    }
    static Poly decode(std::uint64_t v) {
        std::vector<Fb<B>> c;
        while (v > 0) {
            c.push_back(Fb<B>(static_cast<unsigned>(v % B)));
            v /= B;
        }
        return Poly(std::move(c));
    }

    /// Whitespace-separated coefficient tokens, constant term first, e.g.
    /// "a2 1 1" for alpha^2 + x + x^2 over F4. The zero polynomial prints "0".
    std::string to_token_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) out += ' ';
            out += element_token<B>(c_[i]);
        }
        return out;
    }
    static Poly parse(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::vector<Fb<B>> c;
        std::string tok;
        while (in >> tok) c.push_back(parse_element_token<B>(tok));
        if (c.empty()) throw std::invalid_argument("empty polynomial text");
        return Poly(std::move(c));
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Fb<B>> c_;
};

/// Regular continued fraction expansion of a rational function q/p:
/// q/p = polynomial_part + 1/(A_v + 1/(... + 1/A_1)), quotients stored in
/// expansion order A_v, ..., A_1, every quotient of degree >= 1. The
/// expansion is degenerate (v = 0, K undefined) when the fraction is a
/// polynomial, e.g. q = 0.
template <unsigned B>
struct ContinuedFraction {
    Poly<B> polynomial_part;
    std::vector<Poly<B>> quotients;

    unsigned v() const { return static_cast<unsigned>(quotients.size()); }
    bool degenerate() const { return quotients.empty(); }

    /// K(q/p) = max quotient degree; throws on a degenerate expansion.
    int K() const {
        if (degenerate()) throw std::domain_error("K is undefined for a degenerate expansion");
        int k = 0;
        for (const auto& a : quotients) k = std::max(k, a.degree());
        return k;
    }
};

template <unsigned B>
ContinuedFraction<B> cf_expand(const Poly<B>& q, const Poly<B>& p) {
    if (p.is_zero()) throw std::invalid_argument("cf_expand: zero denominator");
    if (q.is_zero()) return ContinuedFraction<B>{Poly<B>::zero(), {}};
    if (Poly<B>::gcd(p, q) != Poly<B>::one())
        throw std::invalid_argument("cf_expand: arguments are not coprime");
    auto [head, r] = Poly<B>::divmod(q, p);
    ContinuedFraction<B> cf;
    cf.polynomial_part = std::move(head);
    Poly<B> a = p, b = std::move(r);
    while (!b.is_zero()) {
        auto [quot, rem] = Poly<B>::divmod(a, b);
        cf.quotients.push_back(std::move(quot));
        a = std::move(b);
        b = std::move(rem);
    }
    return cf;
}

/// True iff all partial quotients of q/p have degree one. Equivalent to
/// cf_expand(q, p).K() == 1 but without the coprimality pre-check or
/// quotient storage; used by the multiplicity scans.
template <unsigned B>
bool k_value_is_one(const Poly<B>& q, const Poly<B>& p) {
    if (q.is_zero() || q.degree() >= p.degree()) return false;
    Poly<B> a = p, b = q;
    while (!b.is_zero()) {
        if (a.degree() - b.degree() != 1) return false;
        auto [quot, rem] = Poly<B>::divmod(a, b);
        (void)quot;
        a = std::move(b);
        b = std::move(rem);
    }
    return a.degree() == 0;  // ended at a unit: p and q were coprime
}

namespace detail {

struct OrderFactorization {
    unsigned b;
    unsigned m;
    std::uint64_t n;  // b^m - 1
    std::array<std::uint64_t, 6> primes;
};

// Distinct prime factors of b^m - 1 for every (b, m) the search supports.
inline constexpr OrderFactorization kOrderFactorTable[] = {
    {2, 1, 1ull, {}},
    {2, 2, 3ull, {3ull}},
    {2, 3, 7ull, {7ull}},
    {2, 4, 15ull, {3ull, 5ull}},
    {2, 5, 31ull, {31ull}},
    {2, 6, 63ull, {3ull, 7ull}},
    {2, 7, 127ull, {127ull}},
    {2, 8, 255ull, {3ull, 5ull, 17ull}},
    {2, 9, 511ull, {7ull, 73ull}},
    {2, 10, 1023ull, {3ull, 11ull, 31ull}},
    {2, 11, 2047ull, {23ull, 89ull}},
    {2, 12, 4095ull, {3ull, 5ull, 7ull, 13ull}},
    {2, 13, 8191ull, {8191ull}},
    {2, 14, 16383ull, {3ull, 43ull, 127ull}},
    {2, 15, 32767ull, {7ull, 31ull, 151ull}},
    {2, 16, 65535ull, {3ull, 5ull, 17ull, 257ull}},
    {2, 17, 131071ull, {131071ull}},
    {2, 18, 262143ull, {3ull, 7ull, 19ull, 73ull}},
    {2, 19, 524287ull, {524287ull}},
    {2, 20, 1048575ull, {3ull, 5ull, 11ull, 31ull, 41ull}},
    {3, 1, 2ull, {2ull}},
    {3, 2, 8ull, {2ull}},
    {3, 3, 26ull, {2ull, 13ull}},
    {3, 4, 80ull, {2ull, 5ull}},
    {3, 5, 242ull, {2ull, 11ull}},
    {3, 6, 728ull, {2ull, 7ull, 13ull}},
    {3, 7, 2186ull, {2ull, 1093ull}},
    {3, 8, 6560ull, {2ull, 5ull, 41ull}},
    {3, 9, 19682ull, {2ull, 13ull, 757ull}},
    {3, 10, 59048ull, {2ull, 11ull, 61ull}},
    {3, 11, 177146ull, {2ull, 23ull, 3851ull}},
    {3, 12, 531440ull, {2ull, 5ull, 7ull, 13ull, 73ull}},
    {3, 13, 1594322ull, {2ull, 797161ull}},
    {3, 14, 4782968ull, {2ull, 547ull, 1093ull}},
    {3, 15, 14348906ull, {2ull, 11ull, 13ull, 4561ull}},
    {4, 1, 3ull, {3ull}},
    {4, 2, 15ull, {3ull, 5ull}},
    {4, 3, 63ull, {3ull, 7ull}},
    {4, 4, 255ull, {3ull, 5ull, 17ull}},
    {4, 5, 1023ull, {3ull, 11ull, 31ull}},
    {4, 6, 4095ull, {3ull, 5ull, 7ull, 13ull}},
    {4, 7, 16383ull, {3ull, 43ull, 127ull}},
    {4, 8, 65535ull, {3ull, 5ull, 17ull, 257ull}},
    {4, 9, 262143ull, {3ull, 7ull, 19ull, 73ull}},
    {4, 10, 1048575ull, {3ull, 5ull, 11ull, 31ull, 41ull}},
    {4, 11, 4194303ull, {3ull, 23ull, 89ull, 683ull}},
    {4, 12, 16777215ull, {3ull, 5ull, 7ull, 13ull, 17ull, 241ull}},
    {5, 1, 4ull, {2ull}},
    {5, 2, 24ull, {2ull, 3ull}},
    {5, 3, 124ull, {2ull, 31ull}},
    {5, 4, 624ull, {2ull, 3ull, 13ull}},
    {5, 5, 3124ull, {2ull, 11ull, 71ull}},
    {5, 6, 15624ull, {2ull, 3ull, 7ull, 31ull}},
    {5, 7, 78124ull, {2ull, 19531ull}},
    {5, 8, 390624ull, {2ull, 3ull, 13ull, 313ull}},
    {5, 9, 1953124ull, {2ull, 19ull, 31ull, 829ull}},
    {5, 10, 9765624ull, {2ull, 3ull, 11ull, 71ull, 521ull}},
};

inline const OrderFactorization* find_order_factorization(unsigned b, unsigned m) {
    for (const auto& e : kOrderFactorTable)
        if (e.b == b && e.m == m) return &e;
    return nullptr;
}

}  // namespace detail

/// Largest degree m for which the factorization of b^m - 1 is built in.
inline unsigned max_supported_degree(unsigned b) {
    unsigned best = 0;
    for (const auto& e : detail::kOrderFactorTable)
        if (e.b == b) best = std::max(best, e.m);
    return best;
}

/// Distinct prime factors of b^m - 1 from the built-in table.
inline const detail::OrderFactorization& order_factorization(unsigned b, unsigned m) {
    const auto* e = detail::find_order_factorization(b, m);
    if (e == nullptr)
        throw ConfigurationError("no built-in factorization of " + std::to_string(b) + "^" +
                                 std::to_string(m) + " - 1 (supported: m <= " +
                                 std::to_string(max_supported_degree(b)) + ")");
    return *e;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

template <unsigned B>
std::uint64_t field_power(unsigned m) {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < m; ++i) n *= B;
    return n;
}

/// Rabin irreducibility test over F_B.
template <unsigned B>
bool is_irreducible(const Poly<B>& p) {
    const int m = p.degree();
    if (m < 1) throw std::invalid_argument("irreducibility is undefined for constants");
    if (m == 1) return true;
    const Poly<B> x = Poly<B>::x();
    // frob[k] = x^(B^k) mod p, built by repeated Frobenius steps.
    Poly<B> t = x;
    std::vector<Poly<B>> frob(static_cast<std::size_t>(m) + 1);
    frob[0] = x;
    for (int k = 1; k <= m; ++k) {
        t = Poly<B>::mod_pow(t, B, p);
        frob[static_cast<std::size_t>(k)] = t;
    }
    if (frob[static_cast<std::size_t>(m)] != Poly<B>::divmod(x, p).second) return false;
    for (int ell = 2; ell <= m; ++ell) {
        if (m % ell != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= ell; ++d)
            if (ell % d == 0) prime = false;
        if (!prime) continue;
        const Poly<B> diff = frob[static_cast<std::size_t>(m / ell)] - x;
        if (diff.is_zero() || Poly<B>::gcd(p, diff).degree() > 0) return false;
    }
    return true;
}

/// True iff p is irreducible and x has multiplicative order B^m - 1 in
/// F_B[x]/(p). Uses the built-in factorization of B^m - 1; throws
/// ConfigurationError when (B, m) lies outside the table.
template <unsigned B>
bool is_primitive(const Poly<B>& p) {
    const int m = p.degree();
    if (m < 1) throw std::invalid_argument("primitivity is undefined for constants");
    if (p.coeff(0).is_zero()) return false;  // x divides p
    const auto& fac = order_factorization(B, static_cast<unsigned>(m));
    if (fac.n == 1) return true;  // trivial group (B = 2, m = 1)
    if (m > 1 && !is_irreducible(p)) return false;
    const Poly<B> x = Poly<B>::x();
    for (std::uint64_t ell : fac.primes) {
        if (ell == 0) break;
        if (Poly<B>::mod_pow(x, fac.n / ell, p) == Poly<B>::one()) return false;
    }
    return true;
}

/// Baby-step/giant-step discrete logarithm: the unique sigma in [0, B^m - 1)
/// with x^sigma = q mod p, for p primitive. The table is rebuilt per call.
template <unsigned B>
std::uint64_t discrete_log(const Poly<B>& q, const Poly<B>& p, bool check_primitive = true) {
    if (Poly<B>::divmod(q, p).second.is_zero())
        throw std::domain_error("discrete_log: q is divisible by p");
    if (check_primitive && !is_primitive(p))
        throw std::invalid_argument("discrete_log: modulus is not primitive");
    const unsigned m = static_cast<unsigned>(p.degree());
    const std::uint64_t n = field_power<B>(m) - 1;
    const Poly<B> x = Poly<B>::x();
    const std::uint64_t t = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;

    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(static_cast<std::size_t>(t) * 2);
    Poly<B> cur = Poly<B>::one();
    for (std::uint64_t j = 0; j < t; ++j) {
        baby.emplace(cur.encode(), j);
        cur = Poly<B>::mod_mul(cur, x, p);
    }
    // giant factor x^{-t} = x^{n - t}
    const Poly<B> giant = Poly<B>::mod_pow(x, n - (t % n), p);
    Poly<B> gamma = Poly<B>::divmod(q, p).second;
    for (std::uint64_t i = 0; i * t <= n; ++i) {
        const auto it = baby.find(gamma.encode());
        if (it != baby.end()) {
            const std::uint64_t sigma = (i * t + it->second) % n;
            return sigma;
        }
        gamma = Poly<B>::mod_mul(gamma, giant, p);
    }
    throw std::domain_error("discrete_log: no solution (modulus not primitive?)");
}

/// True when gcd(sigma, B^m - 1) = 1, the step-size condition for maximal
/// period.
template <unsigned B>
bool step_size_coprime(std::uint64_t sigma, unsigned m) {
    return gcd_u64(sigma, field_power<B>(m) - 1) == 1;
}

}  // namespace cudtaus
