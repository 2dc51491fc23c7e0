#pragma once

// Adaptive Gauss-Kronrod quadrature on finite intervals and on the positive
// half-line.

#include <cstddef>
#include <functional>

namespace pathwaykit::quad {

struct QuadOptions {
    double abs_tol = 1e-15;
    double rel_tol = 1e-13;
    std::size_t max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Endpoints are never
/// evaluated, so integrable endpoint singularities are allowed.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& options = {});

/// Location of the maximum of `log_f` on (0, inf): geometric grid scan over
/// 1e-12..1e12 followed by golden-section refinement in ln x. Returns 0 when
/// the maximum sits at the lower edge of the scan.
double find_log_peak(const Integrand& log_f);

/// Integral of exp(log_f(x)) over (0, inf).
///
/// The range is split at the peak m (or, when the integrand decreases from
/// the origin, at the peak of x f(x)); [0, m] is integrated directly and
/// [m, inf) through x = m + L t/(1-t), with L the distance over which the
/// log-integrand falls by one unit.
QuadResult integrate_half_line_log(const Integrand& log_f, const QuadOptions& options = {});

/// Integral of a (possibly signed) f over (0, inf), split at the peak of |f|.
QuadResult integrate_half_line(const Integrand& f, const QuadOptions& options = {});

}  // namespace pathwaykit::quad
