#pragma once

// Double-exponential quadrature: tanh-sinh on a finite interval, exp-sinh on
// (0, inf). Step halving until two successive trapezoid sums agree.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace oracle {

namespace detail {

// Trapezoid sums of g over t in (-inf, inf), halving h until converged.
inline double de_sum(const std::function<double(double)>& g, double tol) {
    double h = 0.5;
    double previous = std::numeric_limits<double>::quiet_NaN();
    double sum = g(0.0);
    for (double t = h; t <= 6.0; t += h) sum += g(t) + g(-t);
    double estimate = h * sum;
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        for (double t = h; t <= 6.0; t += 2.0 * h) sum += g(t) + g(-t);
        previous = estimate;
        estimate = h * sum;
        if (std::abs(estimate - previous) <= tol * std::abs(estimate)) break;
    }
    return estimate;
}

}  // namespace detail

inline double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
    const double r = 0.5 * (b - a);
    const double half_pi = std::numbers::pi / 2.0;
    return detail::de_sum(
        [&](double t) {
            const double u = half_pi * std::sinh(t);
            const double cu = std::cosh(u);
            // distance from the nearer endpoint, computed without cancellation
            const double gap = r / (std::exp(std::abs(u)) * cu);
            const double x = t < 0.0 ? a + gap : b - gap;
            if (!(x > a && x < b)) return 0.0;
            const double w = r * half_pi * std::cosh(t) / (cu * cu);
            const double v = f(x) * w;
            return std::isfinite(v) ? v : 0.0;
        },
        tol);
}

inline double exp_sinh(const std::function<double(double)>& f, double tol = 1e-14) {
    const double half_pi = std::numbers::pi / 2.0;
    return detail::de_sum(
        [&](double t) {
            const double x = std::exp(half_pi * std::sinh(t));
            if (!(x > 0.0) || !std::isfinite(x)) return 0.0;
            const double v = f(x) * x * half_pi * std::cosh(t);
            return std::isfinite(v) ? v : 0.0;
        },
        tol);
}

}  // namespace oracle
