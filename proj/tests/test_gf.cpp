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

#include <catch2/catch_amalgamated.hpp>

#include "cudtaus/gf.hpp"

using namespace cudtaus;

namespace {

// Exhaustive field-axiom check: at most 25 element pairs per field.
template <unsigned B>
void check_field_axioms() {
    using F = Fb<B>;
    for (unsigned a = 0; a < B; ++a) {
        const F fa(a);
        CHECK(fa + F::zero() == fa);
        CHECK(fa * F::one() == fa);
        CHECK(fa - fa == F::zero());
        if (a != 0) {
            CHECK(fa * fa.inverse() == F::one());
        }
        for (unsigned c = 0; c < B; ++c) {
            const F fc(c);
            CHECK(fa + fc == fc + fa);
            CHECK(fa * fc == fc * fa);
            for (unsigned d = 0; d < B; ++d) {
                const F fd(d);
                CHECK((fa + fc) + fd == fa + (fc + fd));
                CHECK((fa * fc) * fd == fa * (fc * fd));
                CHECK(fa * (fc + fd) == fa * fc + fa * fd);
            }
        }
    }
}

template <unsigned B>
void check_eta_roundtrip() {
    for (unsigned a = 0; a < B; ++a) {
        CHECK(Fb<B>::eta_inv(Fb<B>(a).eta()) == Fb<B>(a));
        CHECK(Fb<B>::eta_inv(a).eta() == a);
    }
    CHECK(Fb<B>::zero().eta() == 0u);
}

}  // namespace

TEST_CASE("field axioms hold exhaustively for every supported order") {
    check_field_axioms<2>();
    check_field_axioms<3>();
    check_field_axioms<4>();
    check_field_axioms<5>();
}

TEST_CASE("F4 arithmetic matches the alpha^2 = alpha + 1 presentation") {
    const Fb<4> alpha(2), alpha2(3), one(1);
    CHECK(alpha + alpha == Fb<4>::zero());  // characteristic 2
    CHECK(alpha * alpha == alpha2);         // alpha^2 = alpha + 1
    CHECK(alpha * alpha2 == one);           // alpha^3 = 1
    CHECK(alpha2 == alpha + one);
}

TEST_CASE("F5 inversion") {
    CHECK(Fb<5>(2).inverse() == Fb<5>(3));  // 2 * 3 = 6 = 1 mod 5
    CHECK_THROWS_AS(Fb<5>::zero().inverse(), std::domain_error);
}

TEST_CASE("eta is a bijection with eta(0) = 0") {
    check_eta_roundtrip<2>();
    check_eta_roundtrip<3>();
    check_eta_roundtrip<4>();
    check_eta_roundtrip<5>();
    // the fixed F4 table: 0 -> 0, 1 -> 1, alpha -> 2, alpha^2 -> 3
    CHECK(Fb<4>(2).eta() == 2u);
    CHECK(Fb<4>(3).eta() == 3u);
    // prime fields use the identity map
    CHECK(Fb<3>(2).eta() == 2u);
}

TEST_CASE("f2_decompose splits F4 into bit planes") {
    CHECK(f2_decompose(Fb<4>(2)) == std::pair<unsigned, unsigned>{1, 0});  // alpha
    CHECK(f2_decompose(Fb<4>(3)) == std::pair<unsigned, unsigned>{1, 1});  // alpha + 1
    CHECK(f2_decompose(Fb<4>::zero()) == std::pair<unsigned, unsigned>{0, 0});
    // decomposition respects addition: XOR of planes, exhaustively
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned c = 0; c < 4; ++c) {
            const auto [ah, al] = f2_decompose(Fb<4>(a));
            const auto [ch, cl] = f2_decompose(Fb<4>(c));
            const auto [sh, sl] = f2_decompose(Fb<4>(a) + Fb<4>(c));
            CHECK(sh == (ah ^ ch));
            CHECK(sl == (al ^ cl));
            CHECK(f2_compose(ah, al) == Fb<4>(a));
        }
}

TEST_CASE("element tokens round-trip, with symbolic names for F4") {
    CHECK(element_token(Fb<4>(3)) == "a2");
    CHECK(parse_element_token<4>("a") == Fb<4>(2));
    CHECK(parse_element_token<4>("3") == Fb<4>(3));
    CHECK(parse_element_token<5>("4") == Fb<5>(4));
    CHECK_THROWS_AS(parse_element_token<3>("7"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element_token<2>("a"), std::invalid_argument);
    CHECK_THROWS_AS(Fb<3>(5), std::invalid_argument);
}

TEST_CASE("field specs") {
    CHECK(Fb<4>::spec().characteristic == 2u);
    CHECK(Fb<4>::spec().is_extension);
    CHECK_FALSE(Fb<5>::spec().is_extension);
    CHECK(Fb<5>::spec().characteristic == 5u);
}
