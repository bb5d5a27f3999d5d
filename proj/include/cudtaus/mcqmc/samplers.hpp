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
#include <limits>
#include <stdexcept>

namespace cudtaus {

/// Clamps u into the open interval (0, 1); the inverse transforms below are
/// undefined at the endpoints, so 0 and 1 map to the nearest representable
/// interior values.
inline double clamp_unit_open(double u) {
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
    if (u <= 0.0) return lo;
    if (u >= 1.0) return hi;
    return u;
}

/// Inverse standard normal CDF (Wichura's PPND16 rational approximation,
/// absolute error well below 1e-9 on [1e-12, 1 - 1e-12]).
inline double inv_normal_cdf(double u) {
    u = clamp_unit_open(u);
    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = q < 0.0 ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

/// Exponential quantile with the given rate: -log(1 - u) / rate.
inline double exp_inv(double u, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential rate must be positive");
    u = clamp_unit_open(u);
    return -std::log1p(-u) / rate;
}

/// Regularized lower incomplete gamma P(a, x), series for x < a + 1 and
/// continued fraction for the complement otherwise.
inline double reg_lower_gamma(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("reg_lower_gamma domain");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q(a, x)
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

inline double reg_upper_gamma(double a, double x) { return 1.0 - reg_lower_gamma(a, x); }

/// Inverse of P(a, .): the x with P(a, x) = p, via bracketed Newton with
/// bisection fallback, tolerance 1e-10.
inline double inv_reg_lower_gamma(double a, double p) {
    if (a <= 0.0) throw std::invalid_argument("gamma shape must be positive");
    p = clamp_unit_open(p);
    // Wilson-Hilferty starting point
    const double g = inv_normal_cdf(p);
    const double c = 1.0 - 1.0 / (9.0 * a);
    double x = a * std::pow(c + g / (3.0 * std::sqrt(a)), 3);
    if (!(x > 0.0) || !std::isfinite(x)) x = a;
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    const double lg = std::lgamma(a);
    for (int it = 0; it < 200; ++it) {
        const double f = reg_lower_gamma(a, x) - p;
        if (f > 0.0) hi = x;
        else lo = x;
        const double logpdf = -x + (a - 1.0) * std::log(x) - lg;
        double step = f / std::exp(logpdf);
        double next = x - step;
        if (!(next > lo && (next < hi || !std::isfinite(hi))))
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : x * 2.0;
        if (std::fabs(next - x) <= 1e-10 * std::max(1.0, std::fabs(x))) return next;
        x = next;
    }
    return x;
}

/// Inverse-gamma quantile for shape alpha and rate beta: the v with
/// P(InvGamma <= v) = u, i.e. Q(alpha, beta / v) = u.
inline double invgamma_inv(double u, double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0)
        throw std::invalid_argument("inverse-gamma parameters must be positive");
    u = clamp_unit_open(u);
    // Q(shape, rate / v) = u  <=>  P(shape, rate / v) = 1 - u
    const double g = inv_reg_lower_gamma(shape, 1.0 - u);
    return rate / g;
}

}  // namespace cudtaus
