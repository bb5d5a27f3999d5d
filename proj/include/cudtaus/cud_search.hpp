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
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cudtaus/digital_net.hpp"
#include "cudtaus/fbpoly.hpp"
#include "cudtaus/gf.hpp"
#include "cudtaus/tausworthe.hpp"

namespace cudtaus {

/// One node of the Fibonacci-polynomial tree: F_k = A_k F_{k-1} + F_{k-2}
/// with F_{-1} = 0, F_0 = 1 and degree-one quotients A_k = beta x + gamma.
/// path[k-1] holds the (beta, gamma) codes of A_k. By construction
/// K(F_{m-1}/F_m) = 1.
template <unsigned B>
struct FibPair {
    Poly<B> fm;
    Poly<B> fm1;
    std::vector<std::pair<std::uint8_t, std::uint8_t>> path;  // (beta, gamma) for A_1..A_m
};

inline std::uint64_t fib_pair_count(unsigned b, unsigned m) {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < m; ++i) n *= static_cast<std::uint64_t>((b - 1) * b);
    return n;
}

/// Enumerates all {(b-1)b}^m Fibonacci pairs (F_m, F_{m-1}) in lexicographic
/// order over quotient paths ((beta_1, gamma_1), ..., (beta_m, gamma_m)),
/// beta before gamma, codes ascending. fn receives each FibPair.
template <unsigned B, class Fn>
void enumerate_fib_pairs(unsigned m, Fn&& fn) {
    if (m < 1) throw std::invalid_argument("enumeration needs m >= 1");
    FibPair<B> pair;
    pair.path.resize(m);
    // prev2 = F_{k-2}, prev1 = F_{k-1} along the DFS stack
    std::vector<Poly<B>> stack(m + 2);
    stack[0] = Poly<B>::zero();  // F_{-1}
    stack[1] = Poly<B>::one();   // F_0
    auto rec = [&](auto&& self, unsigned k) -> void {
        if (k > m) {
            pair.fm = stack[m + 1];
            pair.fm1 = stack[m];
            fn(const_cast<const FibPair<B>&>(pair));
            return;
        }
        for (unsigned beta = 1; beta < B; ++beta)
            for (unsigned gamma = 0; gamma < B; ++gamma) {
                const Poly<B> a({gamma, beta});
                stack[k + 1] = a * stack[k] + stack[k - 1];
                pair.path[k - 1] = {static_cast<std::uint8_t>(beta), static_cast<std::uint8_t>(gamma)};
                self(self, k + 1);
            }
    };
    rec(rec, 1);
}

/// Memoized primitivity lookups for monic degree-m polynomials over F_B,
/// optionally persisted as a cache file under `dir`. Entries are write-once;
/// lookups are safe from multiple threads.
template <unsigned B>
class PrimitivityCache {
  public:
    explicit PrimitivityCache(unsigned m, std::optional<std::filesystem::path> dir = std::nullopt)
        : m_(m) {
        if (dir) {
            file_ = *dir / ("primitive_b" + std::to_string(B) + "_m" + std::to_string(m_) + ".cache");
            load();
        }
    }

    ~PrimitivityCache() {
        try {
            save();
        } catch (...) {
        }
    }

    bool is_primitive(const Poly<B>& p) {
        const std::uint64_t key = p.encode();
        {
            std::lock_guard<std::mutex> lock(mu_);
            const auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        const bool result = cudtaus::is_primitive(p);
        {
            std::lock_guard<std::mutex> lock(mu_);
            memo_.emplace(key, result);
            dirty_ = true;
        }
        return result;
    }

    void save() {
        std::lock_guard<std::mutex> lock(mu_);
        if (!file_ || !dirty_) return;
        std::ofstream out(*file_, std::ios::trunc);
        if (!out) return;
        for (const auto& [key, value] : memo_) out << key << ' ' << (value ? 1 : 0) << '\n';
        dirty_ = false;
    }

    std::size_t size() const { return memo_.size(); }

  private:
    void load() {
        std::ifstream in(*file_);
        if (!in) return;
        std::uint64_t key;
        int value;
        while (in >> key >> value) memo_.emplace(key, value != 0);
    }

    unsigned m_;
    std::optional<std::filesystem::path> file_;
    std::unordered_map<std::uint64_t, bool> memo_;
    std::mutex mu_;
    bool dirty_ = false;
};

template <unsigned B>
struct SearchResult {
    Poly<B> p;
    Poly<B> q;
    std::uint64_t sigma = 0;
    TValueProfile profile;  // s = 1..s_max
};

template <unsigned B>
struct SearchOutput {
    std::uint64_t path_count = 0;      // quotient paths enumerated
    std::uint64_t distinct_pairs = 0;  // distinct monic-normalized (p, q)
    std::uint64_t primitive_pairs = 0; // survivors of the primitivity filter
    std::uint64_t step4_pairs = 0;     // survivors of the sigma range/gcd filter
    std::uint64_t step5_count = 0;     // survivors with t-value 0 at s = 3
    std::vector<SearchResult<B>> results;
};

struct SearchOptions {
    unsigned s_max = 20;
    bool keep_all = false;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::optional<std::filesystem::path> cache_dir;
    std::function<void(std::uint64_t done, std::uint64_t total)> progress;  // per subtree
};

namespace detail {

template <unsigned B>
bool lex_less(const Poly<B>& a, const Poly<B>& c) {
    const int da = a.degree(), dc = c.degree();
    if (da != dc) return da < dc;
    for (int i = 0; i <= da; ++i) {
        const unsigned ca = a.coeff(i).code(), cc = c.coeff(i).code();
        if (ca != cc) return ca < cc;
    }
    return false;
}

template <unsigned B>
bool result_less(const SearchResult<B>& a, const SearchResult<B>& c) {
    const std::size_t smax = a.profile.t.size();
    for (std::size_t s = 3; s < smax; ++s) {  // rank key starts at dimension 4
        if (a.profile.t[s] != c.profile.t[s]) return a.profile.t[s] < c.profile.t[s];
    }
    if (a.p != c.p) return lex_less(a.p, c.p);
    if (a.q != c.q) return lex_less(a.q, c.q);
    return false;
}

}  // namespace detail

/// Runs the full search pipeline for degree m over F_B: enumerate Fibonacci
/// pairs, normalize both polynomials by lc(F_m), keep pairs with primitive
/// modulus and a valid step size (0 < sigma < b^m - 1, gcd(sigma, b^m-1) =
/// 1), keep pairs whose t-value is zero for s = 3, extend the t-value
/// profile up to s_max, and sort ascending by (t^(4), ..., t^(s_max)) with
/// ties broken lexicographically by (p, q) coefficient codes. Returns every
/// survivor when keep_all is set, otherwise just the best pair. Enumeration
/// subtrees (split below quotient depth 2) run concurrently; the merge order
/// is fixed by subtree index, so the output is deterministic.
template <unsigned B>
SearchOutput<B> run_algorithm1(unsigned m, const SearchOptions& opt = {}) {
    if (opt.s_max < 4) throw std::invalid_argument("s_max must be at least 4");
    order_factorization(B, m);  // fail fast when the factorization is missing

    struct Local {
        std::uint64_t paths = 0, primitive = 0, step4 = 0, step5 = 0;
        std::vector<std::uint64_t> pair_keys;  // encode(p) * shift + encode(q)
        std::vector<SearchResult<B>> results;
    };

    PrimitivityCache<B> cache(m, opt.cache_dir);
    const std::uint64_t n = field_power<B>(m) - 1;

    // Work on one enumerated pair; appends into the local accumulator.
    auto process_pair = [&](const FibPair<B>& fib, Local& local) {
        ++local.paths;
        const Fb<B> lc_inv = fib.fm.leading_coeff().inverse();
        const Poly<B> p = fib.fm * Poly<B>::constant(lc_inv);
        const Poly<B> q = fib.fm1 * Poly<B>::constant(lc_inv);
        local.pair_keys.push_back(p.encode() * (field_power<B>(m) + 1) + q.encode());
        if (!cache.is_primitive(p)) return;
        ++local.primitive;
        const std::uint64_t sigma = discrete_log(q, p, /*check_primitive=*/false);
        if (sigma == 0 || gcd_u64(sigma, n) != 1) return;
        ++local.step4;
        const GeneratingMatrices<B> mats = korobov_matrices(p, q, opt.s_max);
        const TValueProfile prof = t_value_profile(mats, opt.s_max);
        if (prof.at(3) != 0) return;
        ++local.step5;
        local.results.push_back(SearchResult<B>{p, q, sigma, prof});
    };

    SearchOutput<B> out;
    std::vector<Local> locals;

    if (m <= 2) {
        locals.resize(1);
        enumerate_fib_pairs<B>(m, [&](const FibPair<B>& fib) { process_pair(fib, locals[0]); });
    } else {
        // Split the quotient tree at depth 2: every (A_1, A_2) prefix is an
        // independent subtree of depth m - 2.
        struct Prefix {
            Poly<B> f1, f2;
        };
        std::vector<Prefix> prefixes;
        for (unsigned b1 = 1; b1 < B; ++b1)
            for (unsigned g1 = 0; g1 < B; ++g1)
                for (unsigned b2 = 1; b2 < B; ++b2)
                    for (unsigned g2 = 0; g2 < B; ++g2) {
                        const Poly<B> a1({g1, b1}), a2({g2, b2});
                        const Poly<B> f1 = a1;                          // F_1
                        const Poly<B> f2 = a2 * f1 + Poly<B>::one();    // F_2
                        prefixes.push_back(Prefix{f1, f2});
                    }
        locals.resize(prefixes.size());
        std::atomic<std::uint64_t> done{0};
        std::mutex progress_mu;
        auto run_subtree = [&](std::size_t idx) {
            const Prefix& pre = prefixes[idx];
            Local& local = locals[idx];
            // stack[i] holds F_{i-1}, matching enumerate_fib_pairs
            std::vector<Poly<B>> stack(m + 2);
            stack[2] = pre.f1;
            stack[3] = pre.f2;
            FibPair<B> pair;  // path omitted: process_pair only reads the polynomials
            auto rec = [&](auto&& self, unsigned k) -> void {
                if (k > m) {
                    pair.fm = stack[m + 1];
                    pair.fm1 = stack[m];
                    process_pair(pair, local);
                    return;
                }
                for (unsigned beta = 1; beta < B; ++beta)
                    for (unsigned gamma = 0; gamma < B; ++gamma) {
                        const Poly<B> a({gamma, beta});
                        stack[k + 1] = a * stack[k] + stack[k - 1];
                        self(self, k + 1);
                    }
            };
            rec(rec, 3);
            if (opt.progress) {
                std::lock_guard<std::mutex> lock(progress_mu);
                opt.progress(++done, prefixes.size());
            } else {
                ++done;
            }
        };
        const unsigned threads =
            opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> futures;
        const unsigned nworkers = std::min<std::size_t>(threads, prefixes.size());
        futures.reserve(nworkers);
        for (unsigned t = 0; t < nworkers; ++t)
            futures.push_back(std::async(std::launch::async, [&] {
                for (std::size_t idx = next.fetch_add(1); idx < prefixes.size();
                     idx = next.fetch_add(1))
                    run_subtree(idx);
            }));
        for (auto& f : futures) f.get();
    }

    std::unordered_set<std::uint64_t> distinct;
    for (Local& local : locals) {
        out.path_count += local.paths;
        out.primitive_pairs += local.primitive;
        out.step4_pairs += local.step4;
        out.step5_count += local.step5;
        distinct.insert(local.pair_keys.begin(), local.pair_keys.end());
        out.results.insert(out.results.end(), std::make_move_iterator(local.results.begin()),
                           std::make_move_iterator(local.results.end()));
    }
    out.distinct_pairs = distinct.size();
    std::sort(out.results.begin(), out.results.end(), detail::result_less<B>);
    if (!opt.keep_all && out.results.size() > 1) out.results.resize(1);
    return out;
}

/// Enumerates all monic irreducible polynomials of degree m over F_B.
template <unsigned B, class Fn>
void for_each_monic_irreducible(unsigned m, Fn&& fn) {
    if (m < 1) throw std::invalid_argument("degree must be >= 1");
    const std::uint64_t bm = field_power<B>(m);
    for (std::uint64_t t = 0; t < bm; ++t) {
        Poly<B> p = Poly<B>::decode(bm + t);  // monic of degree m
        if (is_irreducible(p)) fn(const_cast<const Poly<B>&>(p));
    }
}

/// Number of monic irreducible polynomials of degree m over F_b
/// (necklace-counting formula with the Moebius function).
inline std::uint64_t monic_irreducible_count(unsigned b, unsigned m) {
    auto moebius = [](unsigned d) -> int {
        int mu = 1;
        for (unsigned f = 2; f * f <= d; ++f) {
            if (d % f != 0) continue;
            d /= f;
            if (d % f == 0) return 0;
            mu = -mu;
        }
        if (d > 1) mu = -mu;
        return mu;
    };
    std::int64_t total = 0;
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        std::uint64_t bp = 1;
        for (unsigned i = 0; i < m / d; ++i) bp *= b;
        total += moebius(d) * static_cast<std::int64_t>(bp);
    }
    return static_cast<std::uint64_t>(total) / m;
}

/// Orthogonal multiplicity M(p): the number of q with deg q < deg p whose
/// partial quotients in q/p all have degree one. Direct scan over all q;
/// requires p irreducible.
template <unsigned B>
std::uint64_t orthogonal_multiplicity(const Poly<B>& p) {
    if (p.degree() < 1 || !is_irreducible(p))
        throw std::invalid_argument("orthogonal multiplicity needs an irreducible polynomial");
    const unsigned m = static_cast<unsigned>(p.degree());
    const std::uint64_t bm = field_power<B>(m);
    std::uint64_t count = 0;
    for (std::uint64_t v = 1; v < bm; ++v)
        if (k_value_is_one(Poly<B>::decode(v), p)) ++count;
    return count;
}

/// Histogram of M(p) over every monic irreducible of degree m. The counts
/// sum to the necklace count of monic irreducibles.
template <unsigned B>
std::map<std::uint64_t, std::uint64_t> multiplicity_histogram(unsigned m) {
    std::map<std::uint64_t, std::uint64_t> hist;
    for_each_monic_irreducible<B>(m, [&](const Poly<B>& p) { ++hist[orthogonal_multiplicity(p)]; });
    return hist;
}

}  // namespace cudtaus
