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

#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cudtaus/io.hpp"
#include "cudtaus/mcqmc/experiments.hpp"
#include "cudtaus/mcqmc/rmse.hpp"

namespace cudtaus {

/// The named functionals estimated in the Gaussian Gibbs study, with their
/// analytic truths under the configured covariance.
inline std::vector<EstimandSpec> gaussian_estimand_specs(const GaussianGibbsSpec& spec) {
    return {
        {"E[X1]", 0.0},
        {"E[X2]", 0.0},
        {"E[X3]", 0.0},
        {"E[X1X2]", spec.sigma.at(0, 1)},
        {"E[X1X3]", spec.sigma.at(0, 2)},
        {"E[X2X3]", spec.sigma.at(1, 2)},
        {"E[X1X2X3]", 0.0},  // odd moment of a centered Gaussian
    };
}

inline std::vector<std::function<double(std::span<const double>)>> gaussian_estimand_fns() {
    return {
        [](std::span<const double> x) { return x[0]; },
        [](std::span<const double> x) { return x[1]; },
        [](std::span<const double> x) { return x[2]; },
        [](std::span<const double> x) { return x[0] * x[1]; },
        [](std::span<const double> x) { return x[0] * x[2]; },
        [](std::span<const double> x) { return x[1] * x[2]; },
        [](std::span<const double> x) { return x[0] * x[1] * x[2]; },
    };
}

namespace detail {

inline std::string format_metric(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10e", v);
    return buf;
}

struct DriverSetup {
    DriverFactory factory;
    std::string label;
};

template <unsigned B>
DriverSetup make_cud_setup(const ExperimentConfig& cfg, unsigned s, std::uint64_t seed) {
    const std::string path = cfg.get("params");
    const auto records = load_param_records(path);
    const std::size_t index = cfg.get_u64_or("index", 0);
    if (index >= records.size()) throw std::invalid_argument("params index out of range");
    const auto params = params_from_record<B>(records[index]);
    const BlockScheme scheme =
        cfg.get_or("scheme", "loops") == "balanced" ? BlockScheme::kBalanced : BlockScheme::kLoops;
    const std::uint64_t n = cfg.get_u64("n");
    if (n > field_power<B>(params.m))
        throw std::invalid_argument(
            "chain length n = " + std::to_string(n) + " exceeds the b^m = " +
            std::to_string(field_power<B>(params.m)) +
            " points one period provides; use a larger m or a shorter chain");
    return DriverSetup{make_cud_factory<B>(params, s, scheme, seed), "cud"};
}

inline DriverSetup make_driver_setup(const ExperimentConfig& cfg, unsigned s, std::uint64_t seed) {
    const std::string driver = cfg.get("driver");
    if (driver == "iid") return DriverSetup{make_iid_factory(s, seed), "iid"};
    if (driver == "cud") {
        const std::string path = cfg.get("params");
        const auto records = load_param_records(path);
        const std::size_t index = cfg.get_u64_or("index", 0);
        if (index >= records.size()) throw std::invalid_argument("params index out of range");
        return with_field_order(records[index].b, [&](auto tag) {
            return make_cud_setup<decltype(tag)::value>(cfg, s, seed);
        });
    }
    throw std::invalid_argument("unknown driver '" + driver + "' (use cud or iid)");
}

}  // namespace detail

/// Runs the experiment described by a flat key-value config and writes CSV
/// rows (driver, n, r, estimand, rmse-or-variance). Deterministic for a
/// fixed config and seed.
inline void run_experiment_from_config(const ExperimentConfig& cfg, std::ostream& out,
                                       unsigned threads = 0) {
    const std::string kind = cfg.get("experiment");
    const std::uint64_t n = cfg.get_u64("n");
    const unsigned r = static_cast<unsigned>(cfg.get_u64_or("r", 1));
    const std::uint64_t seed = cfg.get_u64_or("seed", 20260801);

    if (kind == "gaussian") {
        GaussianGibbsSpec spec;
        const auto& rows = cfg.get_all("sigma_row");
        if (rows.empty()) {
            spec.mu = {0.0, 0.0, 0.0};
            spec.sigma = DMatrix(3);
            const double vals[9] = {1.0, 0.3, -0.2, 0.3, 1.0, 0.5, -0.2, 0.5, 1.0};
            for (int i = 0; i < 9; ++i) spec.sigma.a[i] = vals[i];
        } else {
            const unsigned s = static_cast<unsigned>(rows.size());
            spec.sigma = DMatrix(s);
            for (unsigned i = 0; i < s; ++i) {
                std::istringstream ls(rows[i]);
                for (unsigned j = 0; j < s; ++j)
                    if (!(ls >> spec.sigma.at(i, j)))
                        throw std::invalid_argument("sigma_row needs s entries per row");
            }
            spec.mu.assign(s, 0.0);
            if (cfg.has("mu")) {
                std::istringstream ls(cfg.get("mu"));
                for (unsigned j = 0; j < s; ++j)
                    if (!(ls >> spec.mu[j])) throw std::invalid_argument("mu needs s entries");
            }
        }
        const auto setup = detail::make_driver_setup(cfg, spec.dim(), seed);
        if (cfg.has("chain_out")) {
            // raw state series of the first replication, for external
            // histogram/autocorrelation diagnostics
            std::ofstream chain(cfg.get("chain_out"), std::ios::trunc);
            if (!chain) throw std::invalid_argument("cannot open chain_out file");
            for (unsigned k = 1; k <= spec.dim(); ++k) chain << (k > 1 ? "," : "") << 'x' << k;
            chain << '\n';
            auto driver = setup.factory(0);
            gibbs_gaussian(spec, *driver, n, [&](std::span<const double> x) {
                for (unsigned k = 0; k < spec.dim(); ++k)
                    chain << (k > 0 ? "," : "") << detail::format_metric(x[k]);
                chain << '\n';
            });
        }
        const auto fns = spec.dim() == 3
                             ? gaussian_estimand_fns()
                             : std::vector<std::function<double(std::span<const double>)>>{
                                   [](std::span<const double> x) { return x[0]; }};
        const auto specs = spec.dim() == 3
                               ? gaussian_estimand_specs(spec)
                               : std::vector<EstimandSpec>{{"E[X1]", spec.mu[0]}};
        const auto estimates = run_replications(
            setup.factory,
            [&](PointDriver& d) { return gibbs_gaussian_estimates(spec, d, n, fns); }, r, threads);
        out << "driver,n,r,estimand,rmse\n";
        for (std::size_t e = 0; e < specs.size(); ++e)
            out << setup.label << ',' << n << ',' << r << ',' << specs[e].name << ','
                << detail::format_metric(rmse_of(estimates, e, *specs[e].truth)) << '\n';
        return;
    }

    if (kind == "queue") {
        QueueSpec spec;
        spec.lambda = cfg.get_double_or("lambda", 0.5);
        spec.mu_rate = cfg.get_double_or("mu_rate", 1.0);
        const auto setup = detail::make_driver_setup(cfg, 2, seed);
        const auto estimates = run_replications(
            setup.factory, [&](PointDriver& d) { return std::vector<double>{mm1_waiting(spec, d, n)}; },
            r, threads);
        out << "driver,n,r,estimand,rmse\n";
        out << setup.label << ',' << n << ',' << r << ",E[W],"
            << detail::format_metric(rmse_of(estimates, 0, spec.stationary_mean_wait())) << '\n';
        return;
    }

    if (kind == "regression") {
        RegressionSpec spec;
        std::vector<std::string> names;
        if (cfg.has("data")) {
            const auto data = load_regression_csv_file(cfg.get("data"), cfg.get("response"));
            spec.X = data.X;
            spec.y = data.y;
            names.push_back("beta0");
            for (std::size_t j = 0; j < data.names.size(); ++j)
                names.push_back("beta" + std::to_string(j + 1));
        } else {
            const std::size_t sn = cfg.get_u64_or("synthetic_n", 100);
            const std::size_t sk = cfg.get_u64_or("synthetic_k", 3);
            std::vector<double> beta_true(sk + 1, 1.0);
            if (cfg.has("synthetic_beta")) {
                std::istringstream ls(cfg.get("synthetic_beta"));
                for (auto& bval : beta_true)
                    if (!(ls >> bval)) throw std::invalid_argument("synthetic_beta needs k+1 values");
            }
            const auto gen = make_synthetic_regression(
                sn, sk, beta_true, cfg.get_double_or("synthetic_noise", 0.5),
                cfg.get_u64_or("synthetic_seed", 4242));
            spec = gen;
            for (std::size_t j = 0; j <= sk; ++j) names.push_back("beta" + std::to_string(j));
        }
        spec.b0.assign(spec.coefs(), cfg.get_double_or("b0", 0.0));
        spec.B0 = DMatrix(spec.coefs());
        const double prior_var = cfg.get_double_or("prior_variance", 100.0);
        for (std::size_t j = 0; j < spec.coefs(); ++j) spec.B0.at(j, j) = prior_var;
        spec.n0 = cfg.get_double_or("n0", 5.0);
        spec.s0 = cfg.get_double_or("s0", 0.01);
        names.push_back("tau2");

        const std::uint64_t burn_in = cfg.get_u64_or("burn_in", 5000);
        const auto setup = detail::make_driver_setup(cfg, spec.state_dim(), seed);
        if (cfg.has("chain_out")) {
            std::ofstream chain(cfg.get("chain_out"), std::ios::trunc);
            if (!chain) throw std::invalid_argument("cannot open chain_out file");
            for (std::size_t e = 0; e < names.size(); ++e) chain << (e > 0 ? "," : "") << names[e];
            chain << '\n';
            const auto work = detail::regression_precompute(spec);
            std::vector<double> beta(spec.coefs(), 0.0);
            double tau2 = 1.0;
            std::vector<double> u(spec.state_dim());
            IidDriver warmup(spec.state_dim(), seed ^ 0xb5ad4eceda1ce2a9ull);
            for (std::uint64_t it = 0; it < burn_in; ++it) {
                warmup.next(u);
                regression_sweep(spec, work, u, beta, tau2);
            }
            auto driver = setup.factory(0);
            for (std::uint64_t it = 0; it < n; ++it) {
                driver->next(u);
                regression_sweep(spec, work, u, beta, tau2);
                for (std::size_t a = 0; a < spec.coefs(); ++a)
                    chain << detail::format_metric(beta[a]) << ',';
                chain << detail::format_metric(tau2) << '\n';
            }
        }
        const auto estimates = run_replications(
            setup.factory,
            [&](PointDriver& d) {
                return gibbs_regression_estimates(spec, d, n, burn_in, seed ^ 0xb5ad4eceda1ce2a9ull);
            },
            r, threads);

        if (cfg.has("truth_ref_n")) {
            // RMSE against a long IID reference run (replication-free)
            IidDriver ref(spec.state_dim(), seed ^ 0x94d049bb133111ebull);
            const auto truth =
                gibbs_regression_estimates(spec, ref, cfg.get_u64("truth_ref_n"), burn_in,
                                           seed ^ 0xbf58476d1ce4e5b9ull);
            out << "driver,n,r,estimand,rmse\n";
            for (std::size_t e = 0; e < names.size(); ++e)
                out << setup.label << ',' << n << ',' << r << ',' << names[e] << ','
                    << detail::format_metric(rmse_of(estimates, e, truth[e])) << '\n';
        } else {
            out << "driver,n,r,estimand,variance\n";
            for (std::size_t e = 0; e < names.size(); ++e)
                out << setup.label << ',' << n << ',' << r << ',' << names[e] << ','
                    << detail::format_metric(variance_of(estimates, e)) << '\n';
        }
        return;
    }

    throw std::invalid_argument("unknown experiment '" + kind +
                                "' (use gaussian, queue, or regression)");
}

}  // namespace cudtaus
