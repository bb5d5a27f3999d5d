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

#include <random>

#include "cudtaus/digital_net.hpp"
#include "cudtaus/tausworthe.hpp"

using namespace cudtaus;

namespace {

template <unsigned B>
bool nonsingular(const NetMatrix<B>& a) {
    detail::RowEliminator<B> elim(a.m);
    for (unsigned r = 0; r < a.m; ++r) {
        std::array<std::uint8_t, kMaxNetDegree> row{};
        for (unsigned k = 0; k < a.m; ++k) row[k] = static_cast<std::uint8_t>(a.rows[r][k].code());
        if (!elim.add_row(row)) return false;
    }
    return true;
}

template <unsigned B>
Poly<B> random_coprime_numerator(std::mt19937_64& rng, const Poly<B>& p) {
    const std::uint64_t bm = field_power<B>(static_cast<unsigned>(p.degree()));
    std::uniform_int_distribution<std::uint64_t> dist(1, bm - 1);
    for (;;) {
        const Poly<B> q = Poly<B>::decode(dist(rng));
        if (Poly<B>::gcd(p, q) == Poly<B>::one()) return q;
    }
}

template <unsigned B>
Poly<B> random_monic(std::mt19937_64& rng, unsigned m) {
    const std::uint64_t bm = field_power<B>(m);
    std::uniform_int_distribution<std::uint64_t> dist(0, bm - 1);
    return Poly<B>::decode(bm + dist(rng));
}

}  // namespace

TEST_CASE("generating matrices for the published F4 m=2 parameters") {
    const Poly<4> p({3, 1, 1}), q({2, 1});
    const auto g = korobov_matrices(p, q, 3);
    REQUIRE(g.m == 2);
    // matrices[0] = I
    CHECK(g.mats[0].rows[0][0] == Fb<4>::one());
    CHECK(g.mats[0].rows[0][1] == Fb<4>::zero());
    CHECK(g.mats[0].rows[1][1] == Fb<4>::one());

    // matrices[1] = A_0^sigma with sigma = 8, via an independent matrix power
    const NetMatrix<4> a0 = transpose_companion(p);
    const NetMatrix<4> a8 = mat_pow(a0, 8);
    for (unsigned r = 0; r < 2; ++r)
        for (unsigned k = 0; k < 2; ++k) CHECK(g.mats[1].rows[r][k] == a8.rows[r][k]);

    // row r of matrices[1] holds the coefficients of x^{8+r} mod p
    for (unsigned r = 0; r < 2; ++r) {
        const Poly<4> xr = Poly<4>::mod_pow(Poly<4>::x(), 8 + r, p);
        for (unsigned k = 0; k < 2; ++k) CHECK(g.mats[1].rows[r][k] == xr.coeff(static_cast<int>(k)));
    }

    // every generating matrix stays nonsingular
    for (const auto& mat : g.mats) CHECK(nonsingular<4>(mat));
}

TEST_CASE("t-values of the published F4 m=2 generator") {
    const Poly<4> p({3, 1, 1}), q({2, 1});
    const auto g = korobov_matrices(p, q, 20);
    const TValueProfile prof = t_value_profile(g, 20);
    const int expected[20] = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    for (unsigned s = 1; s <= 20; ++s) CHECK(prof.at(s) == expected[s - 1]);
    CHECK(t_value(g, 3) == 0);
    CHECK(t_value(g, 1) == 0);
}

TEST_CASE("t-value profile is nondecreasing in s") {
    std::mt19937_64 rng(414);
    for (int trial = 0; trial < 20; ++trial) {
        const unsigned m = 2 + static_cast<unsigned>(rng() % 4);
        const Poly<3> p = random_monic<3>(rng, m);
        if (p.coeff(0).is_zero()) continue;
        const Poly<3> q = random_coprime_numerator(rng, p);
        const auto prof = t_value_profile(korobov_matrices(p, q, 12), 12);
        for (unsigned s = 1; s < 12; ++s) CHECK(prof.at(s) <= prof.at(s + 1));
        for (unsigned s = 1; s <= 12; ++s) {
            CHECK(prof.at(s) >= 0);
            CHECK(prof.at(s) <= static_cast<int>(m));
        }
    }
}

TEMPLATE_TEST_CASE_SIG("s = 2 rank t-value equals K(q/p) - 1 on random coprime pairs", "",
                       ((unsigned B), B), 2, 3, 4, 5) {
    std::mt19937_64 rng(5150 + B);
    int tested = 0;
    while (tested < 200) {
        const unsigned m = 1 + static_cast<unsigned>(rng() % 8);
        const Poly<B> p = random_monic<B>(rng, m);
        const Poly<B> q = random_coprime_numerator(rng, p);
        if (q.degree() >= p.degree()) continue;
        ++tested;
        const int via_cf = t_value_via_cf(q, p);
        const int via_rank = t_value(korobov_matrices(p, q, 2), 2);
        CHECK(via_cf == via_rank);
    }
}

TEST_CASE("t-value via cf edge cases") {
    // q = 1: single quotient of degree m, so t = m - 1
    for (unsigned m = 1; m <= 5; ++m) {
        const Poly<5> p = Poly<5>::monomial(m) + Poly<5>({2});
        CHECK(t_value_via_cf(Poly<5>::one(), p) == static_cast<int>(m) - 1);
    }
    CHECK(t_value_via_cf(Poly<2>::x(), Poly<2>({1, 1, 1})) == 0);
}

TEST_CASE("oracle t-value on hand-built point sets") {
    SECTION("full one-dimensional grid at m = 1") {
        for (unsigned b : {2u, 3u, 4u, 5u}) {
            std::vector<OraclePoint> pts;
            for (unsigned r = 0; r < b; ++r) pts.push_back(OraclePoint{{r}});  // r / b
            CHECK(oracle_t_value(pts, b, 1, 1, 1) == 0);
        }
    }
    SECTION("perturbing a (0,2,2)-net forces t >= 1") {
        // the 2-d net of the F2 generator (x^2+x+1, x), m = 2
        const auto params = GeneratorParams<2>::create(Poly<2>({1, 1, 1}), Poly<2>::x(), 1, 4);
        auto pts = overlapping_net(params, 2);
        REQUIRE(pts.size() == 4);
        CHECK(oracle_t_value(pts, 2, 2, 2, 4) == 0);
        pts[1] = pts[2];  // duplicate one point, drop another
        CHECK(oracle_t_value(pts, 2, 2, 2, 4) >= 1);
    }
    SECTION("cardinality precondition") {
        std::vector<OraclePoint> pts(3, OraclePoint{{0}});
        CHECK_THROWS_AS(oracle_t_value(pts, 2, 2, 1, 2), std::invalid_argument);
    }
}

TEST_CASE("rank t-values agree with the brute-force oracle") {
    SECTION("published F4 m=2 parameters, s = 2..4") {
        const Poly<4> p({3, 1, 1}), q({2, 1});
        const auto params = GeneratorParams<4>::create(p, q, 8, 4);
        const auto g = build_matrices(params, 4);
        for (unsigned s = 2; s <= 4; ++s) {
            const auto pts = overlapping_net(params, s);
            CHECK(oracle_t_value(pts, 4, 2, s, 4) == t_value(g, s));
        }
    }
    SECTION("random maximal-period generators across fields") {
        // (b, m) kept small so the oracle stays cheap; b^m <= 3125
        std::mt19937_64 rng(1234);
        auto check_field = [&](auto tag, unsigned m) {
            constexpr unsigned B = decltype(tag)::value;
            const std::uint64_t bm = field_power<B>(m);
            for (std::uint64_t pv = bm;; ++pv) {
                const Poly<B> p = Poly<B>::decode(bm + (pv % bm));
                if (p.coeff(0).is_zero() || !is_primitive(p)) continue;
                std::uint64_t sigma = 1 + rng() % (bm - 2);
                while (gcd_u64(sigma, bm - 1) != 1) sigma = 1 + rng() % (bm - 2);
                const Poly<B> q = Poly<B>::mod_pow(Poly<B>::x(), sigma, p);
                const auto params = GeneratorParams<B>::create(p, q, sigma, m + 2);
                const auto g = korobov_matrices(p, q, 4);
                for (unsigned s = 2; s <= 4; ++s) {
                    const auto pts = overlapping_net(params, s);
                    CHECK(oracle_t_value(pts, B, m, s, m + 2) == t_value(g, s));
                }
                break;
            }
        };
        check_field(std::integral_constant<unsigned, 2>{}, 4u);
        check_field(std::integral_constant<unsigned, 3>{}, 3u);
        check_field(std::integral_constant<unsigned, 4>{}, 3u);
        check_field(std::integral_constant<unsigned, 5>{}, 2u);
    }
}

TEST_CASE("korobov matrices validate their inputs") {
    // p = (x+1)^2 over F3 shares the factor x+1 with q
    CHECK_THROWS_AS(korobov_matrices(Poly<3>({1, 2, 1}), Poly<3>({1, 1}), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(korobov_matrices(Poly<3>({1}), Poly<3>::one(), 2), std::invalid_argument);
    CHECK_THROWS_AS(korobov_matrices(Poly<3>({1, 2, 2}), Poly<3>::one(), 2), std::invalid_argument);
}
