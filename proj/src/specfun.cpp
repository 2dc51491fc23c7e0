#include "pathwaykit/specfun.hpp"

#include "pathwaykit/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace pathwaykit::specfun {

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << "log_gamma: argument must be positive and finite, got " << x;
        throw DomainError(os.str());
    }
    if (x == 1.0 || x == 2.0) return 0.0;
    return boost::math::lgamma(x);
}

double pochhammer(double b, unsigned k) {
    double result = 1.0;
    for (unsigned i = 0; i < k; ++i) {
        result *= b + static_cast<double>(i);
        if (result == 0.0) break;
    }
    return result;
}

unsigned Partition::weight() const noexcept {
    unsigned total = 0;
    for (unsigned part : parts) total += part;
    return total;
}

double gen_pochhammer(double a, const Partition& K) {
    double result = 1.0;
    for (std::size_t j = 0; j < K.parts.size(); ++j) {
        result *= pochhammer(a - static_cast<double>(j) / 2.0, K.parts[j]);
    }
    return result;
}

double log_matrix_gamma(unsigned p, double a) {
    if (p == 0) throw DomainError("matrix_gamma: dimension p must be positive");
    const double threshold = (static_cast<double>(p) - 1.0) / 2.0;
    if (!(a > threshold)) {
        std::ostringstream os;
        os << "matrix_gamma: requires a > (p-1)/2 = " << threshold << ", got a = " << a;
        throw DomainError(os.str());
    }
    const double pd = static_cast<double>(p);
    double result = pd * (pd - 1.0) / 4.0 * std::log(std::numbers::pi);
    for (unsigned j = 0; j < p; ++j) {
        result += log_gamma(a - static_cast<double>(j) / 2.0);
    }
    return result;
}

double matrix_gamma(unsigned p, double a) {
    return std::exp(log_matrix_gamma(p, a));
}

namespace {

bool is_nonpositive_integer(double v) {
    return v <= 0.0 && v == std::floor(v);
}

}  // namespace

MLParams::MLParams(double alpha, double beta, double gamma, std::vector<double> uppers,
                   std::vector<double> lowers)
    : alpha_(alpha), beta_(beta), gamma_(gamma), uppers_(std::move(uppers)),
      lowers_(std::move(lowers)) {
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
        throw DomainError("MLParams: alpha must be positive");
    }
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
        throw DomainError("MLParams: beta must be positive");
    }
    if (!std::isfinite(gamma_)) throw DomainError("MLParams: gamma must be finite");
    for (double a : uppers_) {
        if (!std::isfinite(a)) throw DomainError("MLParams: upper parameters must be finite");
    }
    for (double b : lowers_) {
        if (!std::isfinite(b) || is_nonpositive_integer(b)) {
            std::ostringstream os;
            os << "MLParams: lower parameter " << b
               << " is zero or a negative integer (Pochhammer division by zero)";
            throw DomainError(os.str());
        }
    }
}

bool MLParams::terminates() const noexcept {
    if (is_nonpositive_integer(gamma_)) return true;
    for (double a : uppers_) {
        if (is_nonpositive_integer(a)) return true;
    }
    return false;
}

double mittag_leffler(double x, const MLParams& params, const SeriesOptions& options) {
    if (!std::isfinite(x)) throw DomainError("mittag_leffler: argument must be finite");
    if (params.alpha() < 1.0 && x < -10.0) {
        throw DomainError(
            "mittag_leffler: x < -10 with alpha < 1 is outside the supported domain "
            "(series cancellation)");
    }
    const std::size_t numerator_count =
        params.uppers().size() + (params.gamma() != 1.0 ? 1u : 0u);
    if (!params.terminates() && numerator_count > params.lowers().size() + 1) {
        std::ostringstream os;
        os << "mittag_leffler: " << numerator_count << " numerator parameters exceed "
           << params.lowers().size() + 1 << " (denominator count + 1); series not supported";
        throw DomainError(os.str());
    }

    const double alpha = params.alpha();
    const double beta = params.beta();
    if (x == 0.0) return std::exp(-log_gamma(beta));

    const double log_abs_x = std::log(std::abs(x));
    const bool negative_x = x < 0.0;

    // coefficient (gamma)_k prod (a)_k / (k! prod (b)_k) as sign * exp(log_coef)
    double log_coef = 0.0;
    int coef_sign = 1;
    double sum = 0.0;
    double last_term = 0.0;
    int small_run = 0;

    for (std::size_t k = 0; k < options.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        const double log_term = log_coef + kd * log_abs_x - log_gamma(beta + alpha * kd);
        int sign = coef_sign;
        if (negative_x && (k % 2 == 1)) sign = -sign;
        const double term = sign * std::exp(log_term);
        sum += term;
        last_term = term;

        if (std::abs(term) <= options.rel_tol * (1.0 + std::abs(sum))) {
            if (++small_run >= options.consecutive) return sum;
        } else {
            small_run = 0;
        }

        auto absorb = [&](double factor, bool numerator) {
            if (factor < 0.0) coef_sign = -coef_sign;
            const double l = std::log(std::abs(factor));
            log_coef += numerator ? l : -l;
        };
        const double g = params.gamma() + kd;
        if (g == 0.0) return sum;
        absorb(g, true);
        for (double a : params.uppers()) {
            if (a + kd == 0.0) return sum;
            absorb(a + kd, true);
        }
        absorb(kd + 1.0, false);
        for (double b : params.lowers()) absorb(b + kd, false);
    }

    std::ostringstream os;
    os << "mittag_leffler: series did not converge within " << options.max_terms
       << " terms (partial sum " << sum << ", last term " << last_term << ")";
    throw ConvergenceError(os.str(), sum, std::abs(last_term));
}

}  // namespace pathwaykit::specfun
