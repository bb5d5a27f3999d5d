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
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "cudtaus/mcqmc/drivers.hpp"
#include "cudtaus/mcqmc/linalg.hpp"

namespace cudtaus {

/// A labeled functional with an optional analytic truth. Estimands without a
/// truth report variances instead of RMSEs.
struct EstimandSpec {
    std::string name;
    std::optional<double> truth;
};

/// Factory producing one fresh driver per replication. Replication r of a
/// CUD run applies the r-th digital shift; an IID run uses substream r.
using DriverFactory = std::function<std::unique_ptr<PointDriver>(unsigned replication)>;

/// A CUD factory over F_B: shares one full-period output stream across
/// replications and draws each replication's shift from a generator seeded
/// by `master_seed`.
template <unsigned B>
DriverFactory make_cud_factory(const GeneratorParams<B>& params, unsigned s, BlockScheme scheme,
                               std::uint64_t master_seed) {
    auto stream =
        std::make_shared<const std::vector<std::uint64_t>>(full_period_numerators(params));
    const unsigned w = params.w;
    return [stream, w, s, scheme, master_seed](unsigned replication) -> std::unique_ptr<PointDriver> {
        std::mt19937_64 rng(master_seed + 0x9e3779b97f4a7c15ull * (replication + 1));
        std::vector<std::uint64_t> shift = draw_shift<B>(rng, s, w);
        return std::make_unique<CudDriver<B>>(stream, w, s, scheme, std::move(shift));
    };
}

inline DriverFactory make_iid_factory(unsigned s, std::uint64_t master_seed) {
    return [s, master_seed](unsigned replication) -> std::unique_ptr<PointDriver> {
        return std::make_unique<IidDriver>(s, master_seed + 0x9e3779b97f4a7c15ull * (replication + 1));
    };
}

/// Runs `replications` independent repetitions of an experiment, each with
/// its own driver, in parallel. Returns estimates[r][e]. Rows are written by
/// replication index, so the result does not depend on scheduling.
inline std::vector<std::vector<double>> run_replications(
    const DriverFactory& factory,
    const std::function<std::vector<double>(PointDriver&)>& experiment, unsigned replications,
    unsigned threads = 0) {
    std::vector<std::vector<double>> estimates(replications);
    const unsigned nworkers =
        std::min(replications, threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<unsigned> next{0};
    auto work = [&] {
        for (unsigned r = next.fetch_add(1); r < replications; r = next.fetch_add(1)) {
            std::unique_ptr<PointDriver> driver = factory(r);
            estimates[r] = experiment(*driver);
        }
    };
    if (nworkers <= 1) {
        work();
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(nworkers);
        for (unsigned t = 0; t < nworkers; ++t) futures.push_back(std::async(std::launch::async, work));
        for (auto& f : futures) f.get();
    }
    return estimates;
}

/// Root-mean-square error over replications against a known truth.
inline double rmse_of(const std::vector<std::vector<double>>& estimates, std::size_t e,
                      double truth) {
    KahanSum sq;
    for (const auto& row : estimates) {
        const double err = row[e] - truth;
        sq.add(err * err);
    }
    return std::sqrt(sq.value() / static_cast<double>(estimates.size()));
}

/// Unbiased sample variance of the replication estimates.
inline double variance_of(const std::vector<std::vector<double>>& estimates, std::size_t e) {
    const std::size_t r = estimates.size();
    KahanSum sum;
    for (const auto& row : estimates) sum.add(row[e]);
    const double mean = sum.value() / static_cast<double>(r);
    KahanSum sq;
    for (const auto& row : estimates) {
        const double d = row[e] - mean;
        sq.add(d * d);
    }
    return sq.value() / static_cast<double>(r > 1 ? r - 1 : 1);
}

/// Lag-k sample autocorrelation of a chain series (mean-centered, with the
/// standard biased normalization by the lag-0 sum of squares).
inline double sample_autocorrelation(std::span<const double> series, std::size_t lag) {
    const std::size_t n = series.size();
    if (lag >= n) throw std::invalid_argument("autocorrelation lag exceeds the series length");
    KahanSum total;
    for (double v : series) total.add(v);
    const double mean = total.value() / static_cast<double>(n);
    KahanSum num, den;
    for (std::size_t i = 0; i + lag < n; ++i)
        num.add((series[i] - mean) * (series[i + lag] - mean));
    for (std::size_t i = 0; i < n; ++i) den.add((series[i] - mean) * (series[i] - mean));
    if (den.value() == 0.0) throw std::invalid_argument("autocorrelation of a constant series");
    return num.value() / den.value();
}

/// Least-squares slope of log2(y) against log2(N).
inline double fit_log2_slope(const std::vector<std::uint64_t>& ns, const std::vector<double>& ys) {
    const std::size_t k = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = std::log2(static_cast<double>(ns[i]));
        const double y = std::log2(ys[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(k);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace cudtaus
