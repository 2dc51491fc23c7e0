#pragma once

// Scalar special functions: log-gamma (real and complex), rising factorials,
// the real matrix-variate gamma, and the Mittag-Leffler family.

#include <complex>
#include <cstddef>
#include <vector>

namespace pathwaykit::specfun {

/// ln Gamma(x) for x > 0. Throws DomainError for x <= 0 or non-finite x.
double log_gamma(double x);

/// Principal-sheet-agnostic ln Gamma(z) for complex z away from the poles.
///
/// Only exp(log_gamma(z)) is meaningful; the imaginary part may differ from
/// the principal branch by multiples of 2*pi. Accurate to a few ulp of the
/// real part across |Im z| up to ~1e6.
std::complex<double> log_gamma(std::complex<double> z);

/// Rising factorial (b)_k = b (b+1) ... (b+k-1), with (b)_0 = 1.
/// Returns 0 when b is a non-positive integer and k > -b.
double pochhammer(double b, unsigned k);

/// Partition K = (k_1, ..., k_p) with weight k_1 + ... + k_p.
struct Partition {
    std::vector<unsigned> parts;

    unsigned weight() const noexcept;
};

/// Generalized Pochhammer symbol (a)_K = prod_j (a - (j-1)/2)_{k_j}.
double gen_pochhammer(double a, const Partition& K);

/// Real matrix-variate gamma
///   Gamma_p(a) = pi^(p(p-1)/4) * prod_{j=0}^{p-1} Gamma(a - j/2),
/// defined for a > (p-1)/2. Evaluated in log space.
double matrix_gamma(unsigned p, double a);
double log_matrix_gamma(unsigned p, double a);

/// Parameters of the generalized Mittag-Leffler series
///
///   sum_k (gamma)_k (a_1)_k...(a_r)_k x^k / (k! Gamma(beta + alpha k) (b_1)_k...(b_s)_k).
///
/// gamma = 1 with empty lists gives E_{alpha,beta}; additionally beta = 1
/// gives E_alpha.
class MLParams {
public:
    MLParams(double alpha, double beta = 1.0, double gamma = 1.0,
             std::vector<double> uppers = {}, std::vector<double> lowers = {});

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }
    const std::vector<double>& uppers() const noexcept { return uppers_; }
    const std::vector<double>& lowers() const noexcept { return lowers_; }

    // True when some numerator Pochhammer vanishes, making the series a
    // polynomial.
    bool terminates() const noexcept;

private:
    double alpha_;
    double beta_;
    double gamma_;
    std::vector<double> uppers_;
    std::vector<double> lowers_;
};

struct SeriesOptions {
    std::size_t max_terms = 10000;
    double rel_tol = 1e-16;
    int consecutive = 3;
};

/// Mittag-Leffler series sum at real x.
///
/// Summation stops once |term| <= rel_tol * (1 + |sum|) for `consecutive`
/// successive terms. The numerator parameter count (gamma counts unless it
/// equals 1) may not exceed lowers().size() + 1 unless the series terminates.
/// For alpha < 1 and x < -10 direct summation loses all significant digits
/// to cancellation, so that region is rejected with a DomainError.
double mittag_leffler(double x, const MLParams& params, const SeriesOptions& options = {});

inline double mittag_leffler(double x, double alpha) {
    return mittag_leffler(x, MLParams(alpha));
}

inline double mittag_leffler(double x, double alpha, double beta) {
    return mittag_leffler(x, MLParams(alpha, beta));
}

}  // namespace pathwaykit::specfun
