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
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cudtaus/cud_search.hpp"
#include "cudtaus/digital_net.hpp"
#include "cudtaus/io.hpp"
#include "cudtaus/tausworthe.hpp"

namespace cudtaus {

// ---------------------------------------------------------------------------
// Known-good reference data for the supported fields: survivor counts of the
// search (t-value zero at s = 3), the published F4 parameter set, and its
// per-dimension t-value profiles. verify-tables recomputes against these.
// ---------------------------------------------------------------------------

struct SurvivorCount {
    unsigned b;
    unsigned m;
    std::uint64_t count;
    bool desk_scale;  // cheap enough for the default verification run
};

inline constexpr SurvivorCount kSurvivorCounts[] = {
    {3, 2, 8, true},    {3, 3, 6, true},    {3, 4, 0, true},    {3, 5, 0, true},
    {3, 6, 8, true},    {3, 7, 6, true},    {3, 8, 0, false},   {3, 9, 0, false},
    {3, 10, 0, false},  {3, 11, 0, false},  {3, 12, 0, false},  {3, 13, 0, false},
    {4, 2, 32, true},   {4, 3, 72, true},   {4, 4, 128, true},  {4, 5, 1296, true},
    {4, 6, 2016, false},{4, 7, 7648, false},{4, 8, 4640, false},{4, 9, 5328, false},
    {4, 10, 4176, false},{4, 11, 4560, false},
    {5, 2, 32, true},   {5, 3, 480, true},  {5, 4, 1056, false},{5, 5, 16800, false},
    {5, 6, 38720, false},{5, 7, 514640, false},{5, 8, 706496, false},
};

/// Published F4 generator rows (coefficients constant term first) and their
/// step sizes, m = 2..11.
struct F4ReferenceRow {
    unsigned m;
    const char* p_tokens;
    const char* q_tokens;
    std::uint64_t sigma;
    std::array<int, 20> t;  // t-values for s = 1..20
};

inline const F4ReferenceRow kF4ReferenceRows[] = {
    {2, "a2 1 1", "a 1", 8,
     {0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}},
    {3, "a2 a2 a2 1", "1 a a2", 47,
     {0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}},
    {4, "a2 a2 a2 0 1", "a2 1 1 a2", 131,
     {0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}},
    {5, "a2 a2 a 1 0 1", "a a2 a2 a2 a2", 724,
     {0, 0, 0, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}},
    {6, "a2 1 0 1 1 0 1", "1 1 a2 a2 1 a", 2267,
     {0, 0, 0, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3}},
    {7, "a a2 0 a a2 a a 1", "0 0 a2 a2 a a2 1", 1633,
     {0, 0, 0, 1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4}},
    {8, "a a2 1 1 0 a 0 0 1", "1 1 1 1 0 0 a a2", 16423,
     {0, 0, 0, 1, 2, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4}},
    {9, "a2 a2 a 0 1 a a 1 0 1", "a 1 1 a2 a2 a2 a 0 1", 36887,
     {0, 0, 0, 1, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5}},
    {10, "a a2 a 0 1 a2 0 0 a2 0 1", "a2 0 0 a 1 0 1 1 1 1", 1030108,
     {0, 0, 0, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 6, 6, 6, 6, 6, 6, 6}},
    {11, "a2 a 1 a2 a a2 1 a2 a2 1 a 1", "a2 a a2 a a a2 1 a2 1 1 a", 3144209,
     {0, 0, 0, 2, 3, 3, 3, 4, 5, 5, 5, 5, 5, 5, 5, 5, 5, 6, 6, 6}},
};

inline const F4ReferenceRow& f4_reference_row(unsigned m) {
    for (const auto& row : kF4ReferenceRows)
        if (row.m == m) return row;
    throw std::invalid_argument("no published F4 parameters for m = " + std::to_string(m));
}

inline GeneratorParams<4> f4_reference_params(unsigned m, unsigned w = default_digit_count<4>()) {
    const auto& row = f4_reference_row(m);
    return GeneratorParams<4>::create(Poly<4>::parse(row.p_tokens), Poly<4>::parse(row.q_tokens),
                                      row.sigma, w);
}

// ---------------------------------------------------------------------------
// Verification: recompute and diff against the reference data. Mismatches
// accumulate as printable lines so the CLI can list them all.
// ---------------------------------------------------------------------------

struct VerifyReport {
    std::vector<std::string> checks;     // human-readable pass lines
    std::vector<std::string> mismatches; // populated on failure

    bool ok() const { return mismatches.empty(); }
};

/// Recomputes the survivor counts (desk-scale rows by default).
inline VerifyReport verify_survivor_counts(bool extended = false, unsigned threads = 0,
                                           const std::function<void(const std::string&)>& note = {}) {
    VerifyReport report;
    for (const auto& row : kSurvivorCounts) {
        if (!row.desk_scale && !(extended && row.m <= 6)) continue;
        SearchOptions opt;
        opt.threads = threads;
        const std::uint64_t got = with_field_order(row.b, [&](auto tag) {
            return run_algorithm1<decltype(tag)::value>(row.m, opt).step5_count;
        });
        std::ostringstream line;
        line << "counts b=" << row.b << " m=" << row.m << " expected=" << row.count
             << " got=" << got;
        if (note) note(line.str());
        if (got == row.count) report.checks.push_back(line.str());
        else report.mismatches.push_back(line.str());
    }
    return report;
}

/// Validates every published F4 row: p primitive, q = x^sigma mod p,
/// gcd(sigma, 4^m - 1) = 1, and K(q/p) = 1.
inline VerifyReport verify_reference_parameters() {
    VerifyReport report;
    for (const auto& row : kF4ReferenceRows) {
        const Poly<4> p = Poly<4>::parse(row.p_tokens);
        const Poly<4> q = Poly<4>::parse(row.q_tokens);
        std::vector<std::string> bad;
        if (!is_primitive(p)) bad.push_back("p not primitive");
        if (Poly<4>::mod_pow(Poly<4>::x(), row.sigma, p) != q) bad.push_back("q != x^sigma mod p");
        const std::uint64_t n = field_power<4>(row.m) - 1;
        if (row.sigma == 0 || row.sigma >= n || gcd_u64(row.sigma, n) != 1)
            bad.push_back("sigma fails the maximal-period condition");
        if (cf_expand(q, p).K() != 1) bad.push_back("K(q/p) != 1");
        std::ostringstream line;
        line << "params m=" << row.m;
        if (bad.empty()) {
            report.checks.push_back(line.str() + " valid");
        } else {
            for (const auto& b : bad) report.mismatches.push_back(line.str() + " " + b);
        }
    }
    return report;
}

/// Recomputes the t-value profiles of the published F4 rows; rows with
/// m <= 8 by default, all rows when extended.
inline VerifyReport verify_reference_profiles(bool extended = false,
                                              const std::function<void(const std::string&)>& note = {}) {
    VerifyReport report;
    for (const auto& row : kF4ReferenceRows) {
        if (row.m > 8 && !extended) continue;
        const Poly<4> p = Poly<4>::parse(row.p_tokens);
        const Poly<4> q = Poly<4>::parse(row.q_tokens);
        const auto prof = t_value_profile(korobov_matrices(p, q, 20), 20);
        bool ok = true;
        for (unsigned s = 1; s <= 20; ++s) {
            if (prof.at(s) != row.t[s - 1]) {
                std::ostringstream line;
                line << "profile m=" << row.m << " s=" << s << " expected=" << row.t[s - 1]
                     << " got=" << prof.at(s);
                report.mismatches.push_back(line.str());
                ok = false;
            }
        }
        std::ostringstream line;
        line << "profile m=" << row.m << (ok ? " matches" : " differs");
        if (note) note(line.str());
        if (ok) report.checks.push_back(line.str());
    }
    return report;
}

}  // namespace cudtaus
