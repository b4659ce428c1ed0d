#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "irsradar/core.hpp"

namespace irsradar {
namespace stats {

namespace detail {
inline std::atomic<long>& clamp_counter() {
    static std::atomic<long> n{0};
    return n;
}
} // namespace detail

/// Number of times marcum_q had to clamp a result more than 1e-12 outside [0,1].
inline long clamp_events() { return detail::clamp_counter().load(); }

/// Survival function of the central chi-square: P(X > x) for X ~ chi2(dof).
inline double chi2_sf(double x, double dof) {
    if (x < 0.0) throw std::domain_error("chi2_sf: x must be nonnegative");
    require(dof > 0.0, "chi2_sf: dof must be positive");
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

/// Inverse survival function: the x with chi2_sf(x, dof) == p.
inline double chi2_isf(double p, double dof) {
    require(p > 0.0 && p < 1.0, "chi2_isf: p must be in (0, 1)");
    require(dof > 0.0, "chi2_isf: dof must be positive");
    return 2.0 * boost::math::gamma_q_inv(dof / 2.0, p);
}

/**
 * @brief Generalized Marcum Q-function of real order mu > 0.
 *
 * Q_mu(a, b) is the survival function of a noncentral chi-square with 2*mu
 * degrees of freedom and noncentrality a^2, evaluated at b^2. Computed as a
 * Poisson mixture of central chi-square tails, summed outward from the
 * Poisson mode with log-space weights; terms stop once below 1e-14 of the
 * running sum. Result clamped to [0, 1].
 */
inline double marcum_q(double order, double a, double b) {
    require(order > 0.0, "marcum_q: order must be positive");
    require(a >= 0.0 && b >= 0.0, "marcum_q: a and b must be nonnegative");
    if (b == 0.0) return 1.0;
    const double lambda = a * a;      // noncentrality
    const double x = b * b;           // evaluation point
    if (lambda == 0.0) return chi2_sf(x, 2.0 * order);

    const double half_lambda = lambda / 2.0;
    const auto log_weight = [&](long k) {
        return -half_lambda + k * std::log(half_lambda) - std::lgamma(k + 1.0);
    };
    const auto term = [&](long k) {
        return std::exp(log_weight(k)) * chi2_sf(x, 2.0 * (order + k));
    };

    const long mode = static_cast<long>(half_lambda);
    double sum = term(mode);
    constexpr double kRelTol = 1e-14;
    for (long k = mode + 1;; ++k) {
        const double t = term(k);
        sum += t;
        if (t < kRelTol * sum) break;
    }
    for (long k = mode - 1; k >= 0; --k) {
        const double t = term(k);
        sum += t;
        if (t < kRelTol * sum) break;
    }

    if (sum > 1.0 + 1e-12 || sum < -1e-12) detail::clamp_counter()++;
    return std::clamp(sum, 0.0, 1.0);
}

/// Two-sided Kolmogorov-Smirnov distance of a sample against a CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    require(!sample.empty(), "ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

/// Asymptotic KS p-value with the Stephens small-sample correction.
inline double ks_pvalue(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double t = (sn + 0.12 + 0.11 / sn) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double piece = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * t * t);
        p += piece;
        if (std::abs(piece) < 1e-16) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

/// 95% Wilson score interval for k successes out of n.
inline std::pair<double, double> wilson_interval(std::size_t k, std::size_t n) {
    require(n > 0, "wilson_interval: n must be positive");
    constexpr double z = 1.959963984540054;  // Phi^{-1}(0.975)
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

} // namespace stats
} // namespace irsradar
