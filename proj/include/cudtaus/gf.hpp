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
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace cudtaus {

/// Runtime description of one of the supported coefficient fields.
struct FieldSpec {
    unsigned b;               // field order, one of 2, 3, 4, 5
    unsigned characteristic;  // prime characteristic
    bool is_extension;        // true only for b = 4
};

namespace detail {

// F4 in the polynomial basis {1, alpha} with alpha^2 = alpha + 1.
// Element codes pack the alpha-coefficient in bit 1 and the 1-coefficient in
// bit 0, so codes 0,1,2,3 denote 0, 1, alpha, alpha+1.
constexpr std::uint8_t f4_mul_code(unsigned a, unsigned c) {
    const unsigned a1 = (a >> 1) & 1u, a0 = a & 1u;
    const unsigned c1 = (c >> 1) & 1u, c0 = c & 1u;
    const unsigned hi = (a1 & c1) ^ (a1 & c0) ^ (a0 & c1);
    const unsigned lo = (a1 & c1) ^ (a0 & c0);
    return static_cast<std::uint8_t>((hi << 1) | lo);
}

}  // namespace detail

template <unsigned B>
struct field_traits;

template <unsigned B>
struct prime_field_traits {
    static_assert(B == 2 || B == 3 || B == 5);
    static constexpr unsigned order = B;
    static constexpr unsigned characteristic = B;
    static constexpr bool is_extension = false;

    static constexpr std::uint8_t add(unsigned a, unsigned c) {
        return static_cast<std::uint8_t>((a + c) % B);
    }
    static constexpr std::uint8_t mul(unsigned a, unsigned c) {
        return static_cast<std::uint8_t>((a * c) % B);
    }
    static constexpr std::uint8_t neg(unsigned a) {
        return static_cast<std::uint8_t>((B - a) % B);
    }
};

template <>
struct field_traits<2> : prime_field_traits<2> {};
template <>
struct field_traits<3> : prime_field_traits<3> {};
template <>
struct field_traits<5> : prime_field_traits<5> {};

template <>
struct field_traits<4> {
    static constexpr unsigned order = 4;
    static constexpr unsigned characteristic = 2;
    static constexpr bool is_extension = true;

    static constexpr std::uint8_t add(unsigned a, unsigned c) {
        return static_cast<std::uint8_t>(a ^ c);
    }
    static constexpr std::uint8_t mul(unsigned a, unsigned c) {
        return detail::f4_mul_code(a, c);
    }
    static constexpr std::uint8_t neg(unsigned a) { return static_cast<std::uint8_t>(a); }
};

/// An element of F_B for B in {2, 3, 4, 5}.
///
/// Elements are stored as integer codes in {0, ..., B-1}. Code 0 is the
/// additive identity and code 1 the multiplicative identity. For B = 4 the
/// code is the 2-bit vector hi*alpha + lo with alpha^2 = alpha + 1, so the
/// codes 0,1,2,3 denote 0, 1, alpha, alpha+1. Values are immutable and all
/// operations are pure.
template <unsigned B>
class Fb {
    static_assert(B == 2 || B == 3 || B == 4 || B == 5, "unsupported field order");

  public:
    using traits = field_traits<B>;

    constexpr Fb() = default;
    constexpr explicit Fb(unsigned code) : code_(static_cast<std::uint8_t>(code)) {
        if (code >= B) throw std::invalid_argument("element code out of range for F_" + std::to_string(B));
    }

    static constexpr Fb zero() { return Fb(); }
    static constexpr Fb one() { return Fb(1u); }
    static constexpr FieldSpec spec() {
        return FieldSpec{B, traits::characteristic, traits::is_extension};
    }

    constexpr unsigned code() const { return code_; }
    constexpr bool is_zero() const { return code_ == 0; }

    friend constexpr Fb operator+(Fb a, Fb c) { return from_code(traits::add(a.code_, c.code_)); }
    friend constexpr Fb operator-(Fb a, Fb c) {
        return from_code(traits::add(a.code_, traits::neg(c.code_)));
    }
    friend constexpr Fb operator*(Fb a, Fb c) { return from_code(traits::mul(a.code_, c.code_)); }
    constexpr Fb operator-() const { return from_code(traits::neg(code_)); }

    constexpr Fb& operator+=(Fb c) { return *this = *this + c; }
    constexpr Fb& operator-=(Fb c) { return *this = *this - c; }
    constexpr Fb& operator*=(Fb c) { return *this = *this * c; }

    friend constexpr bool operator==(Fb a, Fb c) { return a.code_ == c.code_; }
    friend constexpr bool operator!=(Fb a, Fb c) { return a.code_ != c.code_; }

    constexpr Fb inverse() const {
        if (code_ == 0) throw std::domain_error("inversion of zero field element");
        for (unsigned c = 1; c < B; ++c)
            if (traits::mul(code_, c) == 1u) return from_code(static_cast<std::uint8_t>(c));
        throw std::logic_error("field element without inverse");  // unreachable
    }

    /// The fixed output bijection eta: F_b -> Z_b with eta(0) = 0. For prime
    /// b it is the identity; for b = 4 it maps 0,1,alpha,alpha+1 to 0,1,2,3,
    /// which coincides with the integer code.
    constexpr unsigned eta() const { return code_; }
    static constexpr Fb eta_inv(unsigned digit) { return Fb(digit); }

  private:
    static constexpr Fb from_code(std::uint8_t code) {
        Fb e;
        e.code_ = code;
        return e;
    }

    std::uint8_t code_ = 0;
};

/// Splits an F4 element a = hi*alpha + lo into its F2 coordinates (hi, lo).
constexpr std::pair<unsigned, unsigned> f2_decompose(Fb<4> a) {
    return {(a.code() >> 1) & 1u, a.code() & 1u};
}

constexpr Fb<4> f2_compose(unsigned hi, unsigned lo) {
    return Fb<4>(((hi & 1u) << 1) | (lo & 1u));
}

/// Canonical text token for an element: decimal digits for prime fields and
/// 0, 1, a, a2 for F4 (a2 denotes alpha^2 = alpha + 1).
template <unsigned B>
inline std::string element_token(Fb<B> e) {
    if constexpr (B == 4) {
        static constexpr const char* tokens[4] = {"0", "1", "a", "a2"};
        return tokens[e.code()];
    } else {
        return std::to_string(e.code());
    }
}

/// Parses an element token. Digit codes are accepted for every field; F4
/// additionally accepts the symbolic tokens a and a2.
template <unsigned B>
inline Fb<B> parse_element_token(std::string_view tok) {
    if constexpr (B == 4) {
        if (tok == "a") return Fb<4>(2);
        if (tok == "a2") return Fb<4>(3);
    }
    if (tok.size() == 1 && tok[0] >= '0' && tok[0] <= '9') {
        const unsigned code = static_cast<unsigned>(tok[0] - '0');
        if (code < B) return Fb<B>(code);
    }
    throw std::invalid_argument("bad element token '" + std::string(tok) + "' for F_" +
                                std::to_string(B));
}

/// Calls fn with std::integral_constant<unsigned, B> for the runtime order b.
template <class Fn>
decltype(auto) with_field_order(unsigned b, Fn&& fn) {
    switch (b) {
        case 2: return fn(std::integral_constant<unsigned, 2>{});
        case 3: return fn(std::integral_constant<unsigned, 3>{});
        case 4: return fn(std::integral_constant<unsigned, 4>{});
        case 5: return fn(std::integral_constant<unsigned, 5>{});
        default: throw std::invalid_argument("unsupported field order " + std::to_string(b));
    }
}

}  // namespace cudtaus
