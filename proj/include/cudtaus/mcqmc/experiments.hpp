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

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cudtaus/mcqmc/drivers.hpp"
#include "cudtaus/mcqmc/linalg.hpp"
#include "cudtaus/mcqmc/samplers.hpp"

namespace cudtaus {

// ---------------------------------------------------------------------------
// Systematic Gibbs sampling of a multivariate normal
// ---------------------------------------------------------------------------

struct GaussianGibbsSpec {
    std::vector<double> mu;
    DMatrix sigma;  // symmetric positive-definite covariance

    unsigned dim() const { return static_cast<unsigned>(mu.size()); }
};

/// Conditional law of component k given the rest: X_k | X_{-k} is normal
/// with mean mu_k + w . (X_{-k} - mu_{-k}) and a constant variance, the
/// weights solving Sigma_{-k,-k} w = Sigma_{-k,k}.
struct GaussianConditional {
    std::vector<double> weights;  // s-1 entries, indexed by the remaining components
    double sd = 0.0;
};

inline std::vector<GaussianConditional> gaussian_conditionals(const GaussianGibbsSpec& spec) {
    const unsigned s = spec.dim();
    if (spec.sigma.n != s) throw std::invalid_argument("covariance size mismatch");
    std::vector<GaussianConditional> cond(s);
    for (unsigned k = 0; k < s; ++k) {
        DMatrix rest(s - 1);
        std::vector<double> cross(s - 1);
        unsigned ri = 0;
        for (unsigned i = 0; i < s; ++i) {
            if (i == k) continue;
            unsigned rj = 0;
            for (unsigned j = 0; j < s; ++j) {
                if (j == k) continue;
                rest.at(ri, rj) = spec.sigma.at(i, j);
                ++rj;
            }
            cross[ri] = spec.sigma.at(i, k);
            ++ri;
        }
        const DMatrix L = cholesky(rest);  // throws unless Sigma_{-k,-k} is PD
        cond[k].weights = chol_solve(L, cross);
        double var = spec.sigma.at(k, k);
        for (unsigned i = 0; i < s - 1; ++i) var -= cond[k].weights[i] * cross[i];
        if (var <= 0.0) throw std::invalid_argument("covariance is not positive-definite");
        cond[k].sd = std::sqrt(var);
    }
    return cond;
}

/// Runs N systematic sweeps (components k = 1..s in order, one driver
/// coordinate per component update) and hands every post-sweep state to
/// `visit`. The chain starts at the mean.
inline void gibbs_gaussian(const GaussianGibbsSpec& spec, PointDriver& driver, std::uint64_t n,
                           const std::function<void(std::span<const double>)>& visit) {
    const unsigned s = spec.dim();
    if (driver.dim() != s) throw std::invalid_argument("driver dimension mismatch");
    const std::vector<GaussianConditional> cond = gaussian_conditionals(spec);
    std::vector<double> x = spec.mu;
    std::vector<double> u(s);
    for (std::uint64_t it = 0; it < n; ++it) {
        driver.next(u);
        for (unsigned k = 0; k < s; ++k) {
            double mean = spec.mu[k];
            unsigned ri = 0;
            for (unsigned i = 0; i < s; ++i) {
                if (i == k) continue;
                mean += cond[k].weights[ri] * (x[i] - spec.mu[i]);
                ++ri;
            }
            x[k] = mean + cond[k].sd * inv_normal_cdf(u[k]);
        }
        visit(x);
    }
}

/// Sample means of the requested functionals over one Gibbs run.
inline std::vector<double> gibbs_gaussian_estimates(
    const GaussianGibbsSpec& spec, PointDriver& driver, std::uint64_t n,
    const std::vector<std::function<double(std::span<const double>)>>& estimands) {
    std::vector<KahanSum> sums(estimands.size());
    gibbs_gaussian(spec, driver, n, [&](std::span<const double> x) {
        for (std::size_t e = 0; e < estimands.size(); ++e) sums[e].add(estimands[e](x));
    });
    std::vector<double> out(estimands.size());
    for (std::size_t e = 0; e < estimands.size(); ++e)
        out[e] = sums[e].value() / static_cast<double>(n);
    return out;
}

// ---------------------------------------------------------------------------
// M/M/1 waiting times via the Lindley recurrence
// ---------------------------------------------------------------------------

struct QueueSpec {
    double lambda = 0.5;   // arrival intensity
    double mu_rate = 1.0;  // service intensity; stability needs mu_rate > lambda

    double stationary_mean_wait() const { return lambda / (mu_rate * (mu_rate - lambda)); }
};

/// Mean waiting time (W_1 + ... + W_N)/N with W_0 = 0 and
/// W_j = max(W_{j-1} + S_{j-1} - T_j, 0); customer j consumes one 2-d point
/// (u for S_{j-1}, u for T_j) through the exponential inverse transform.
inline double mm1_waiting(const QueueSpec& spec, PointDriver& driver, std::uint64_t n) {
    if (!(spec.mu_rate > spec.lambda) || spec.lambda <= 0.0)
        throw std::invalid_argument("queue needs mu_rate > lambda > 0");
    if (driver.dim() != 2) throw std::invalid_argument("queue driver must be 2-dimensional");
    double w = 0.0, u[2];
    KahanSum total;
    for (std::uint64_t j = 0; j < n; ++j) {
        driver.next(std::span<double>(u, 2));
        const double service = exp_inv(u[0], spec.mu_rate);
        const double gap = exp_inv(u[1], spec.lambda);
        w = std::max(w + service - gap, 0.0);
        total.add(w);
    }
    return total.value() / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Bayesian linear regression (semi-conjugate Gibbs)
// ---------------------------------------------------------------------------

struct RegressionSpec {
    // design matrix including the leading intercept column; n rows, k+1 cols
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    std::vector<double> b0;  // prior mean of beta
    DMatrix B0;              // prior covariance of beta (positive-definite)
    double n0 = 5.0;         // prior shape*2 of tau^2
    double s0 = 0.01;        // prior rate*2 of tau^2

    std::size_t rows() const { return X.size(); }
    std::size_t coefs() const { return X.empty() ? 0 : X.front().size(); }
    /// Chain state dimension: k+1 coefficients plus tau^2.
    unsigned state_dim() const { return static_cast<unsigned>(coefs()) + 1; }
};

namespace detail {

struct RegressionWork {
    DMatrix xtx;               // X^T X
    std::vector<double> xty;   // X^T y
    DMatrix b0_inv;            // B0^{-1}
    std::vector<double> b0_inv_b0;
    double n1 = 0.0;
};

inline RegressionWork regression_precompute(const RegressionSpec& spec) {
    const std::size_t n = spec.rows(), p = spec.coefs();
    if (n == 0 || p == 0 || p >= n) throw std::invalid_argument("design matrix must have rank k+1 < n");
    if (spec.y.size() != n || spec.b0.size() != p || spec.B0.n != p)
        throw std::invalid_argument("regression dimensions are inconsistent");
    if (spec.n0 <= 0.0 || spec.s0 <= 0.0)
        throw std::invalid_argument("prior hyperparameters must be positive");
    RegressionWork w;
    w.xtx = DMatrix(p);
    w.xty.assign(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < p; ++a) {
            w.xty[a] += spec.X[i][a] * spec.y[i];
            for (std::size_t b = 0; b < p; ++b) w.xtx.at(a, b) += spec.X[i][a] * spec.X[i][b];
        }
    }
    cholesky(w.xtx);  // rank check: throws on rank-deficient X
    w.b0_inv = spd_inverse(spec.B0);
    w.b0_inv_b0 = mat_vec(w.b0_inv, spec.b0);
    w.n1 = spec.n0 + static_cast<double>(n);
    return w;
}

}  // namespace detail

/// One Gibbs sweep of (beta, tau^2): draws beta | tau^2 ~ N(b_1, B_1) with
/// B_1^{-1} = B_0^{-1} + X^T X / tau^2 and b_1 = B_1 (B_0^{-1} b_0 +
/// X^T y / tau^2) through a Cholesky transform of k+1 normal quantiles, then
/// tau^2 | beta ~ InvGamma(n_1/2, s_1/2) with n_1 = n_0 + n and
/// s_1 = s_0 + ||y - X beta||^2 through its quantile. Consumes the k+2
/// coordinates of `u` in that order.
inline void regression_sweep(const RegressionSpec& spec, const detail::RegressionWork& work,
                             std::span<const double> u, std::vector<double>& beta, double& tau2) {
    const std::size_t p = spec.coefs();
    DMatrix b1_inv = work.b0_inv;
    const double inv_t2 = 1.0 / tau2;
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) b1_inv.at(a, b) += work.xtx.at(a, b) * inv_t2;
    const DMatrix C = cholesky(b1_inv);
    std::vector<double> rhs(p);
    for (std::size_t a = 0; a < p; ++a) rhs[a] = work.b0_inv_b0[a] + work.xty[a] * inv_t2;
    const std::vector<double> b1 = chol_solve(C, rhs);
    std::vector<double> z(p);
    for (std::size_t a = 0; a < p; ++a) z[a] = inv_normal_cdf(u[a]);
    const std::vector<double> dev = upper_solve_transposed(C, z);  // N(0, B_1)
    for (std::size_t a = 0; a < p; ++a) beta[a] = b1[a] + dev[a];

    double rss = 0.0;
    for (std::size_t i = 0; i < spec.rows(); ++i) {
        double fit = 0.0;
        for (std::size_t a = 0; a < p; ++a) fit += spec.X[i][a] * beta[a];
        const double r = spec.y[i] - fit;
        rss += r * r;
    }
    const double s1 = spec.s0 + rss;
    tau2 = invgamma_inv(u[p], work.n1 / 2.0, s1 / 2.0);
}

/// Posterior-mean estimates of (beta_0..beta_k, tau^2) from N driver-fed
/// sweeps after `burn_in` sweeps driven by IID points.
inline std::vector<double> gibbs_regression_estimates(const RegressionSpec& spec,
                                                      PointDriver& driver, std::uint64_t n,
                                                      std::uint64_t burn_in,
                                                      std::uint64_t burn_in_seed) {
    const std::size_t p = spec.coefs();
    if (driver.dim() != spec.state_dim())
        throw std::invalid_argument("regression driver must supply k+2 coordinates");
    const detail::RegressionWork work = detail::regression_precompute(spec);
    std::vector<double> beta(p, 0.0);
    double tau2 = 1.0;
    std::vector<double> u(p + 1);
    IidDriver warmup(static_cast<unsigned>(p + 1), burn_in_seed);
    for (std::uint64_t it = 0; it < burn_in; ++it) {
        warmup.next(u);
        regression_sweep(spec, work, u, beta, tau2);
    }
    std::vector<KahanSum> sums(p + 1);
    for (std::uint64_t it = 0; it < n; ++it) {
        driver.next(u);
        regression_sweep(spec, work, u, beta, tau2);
        for (std::size_t a = 0; a < p; ++a) sums[a].add(beta[a]);
        sums[p].add(tau2);
    }
    std::vector<double> out(p + 1);
    for (std::size_t a = 0; a <= p; ++a) out[a] = sums[a].value() / static_cast<double>(n);
    return out;
}

/// Synthetic regression data with known coefficients: standard-normal
/// covariates behind an intercept column and N(0, noise_sd^2) errors.
inline RegressionSpec make_synthetic_regression(std::size_t n, std::size_t k,
                                                const std::vector<double>& beta_true,
                                                double noise_sd, std::uint64_t seed) {
    if (beta_true.size() != k + 1) throw std::invalid_argument("need k+1 true coefficients");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    RegressionSpec spec;
    spec.X.assign(n, std::vector<double>(k + 1, 1.0));
    spec.y.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 1; j <= k; ++j) spec.X[i][j] = normal(rng);
        double fit = 0.0;
        for (std::size_t j = 0; j <= k; ++j) fit += spec.X[i][j] * beta_true[j];
        spec.y[i] = fit + noise_sd * normal(rng);
    }
    spec.b0.assign(k + 1, 0.0);
    spec.B0 = DMatrix(k + 1);
    for (std::size_t j = 0; j <= k; ++j) spec.B0.at(j, j) = 100.0;
    spec.n0 = 5.0;
    spec.s0 = 0.01;
    return spec;
}

}  // namespace cudtaus
