#pragma once

// The scalar pathway model
//
//   f(x) = c x^gamma [1 - a(1-alpha) x^delta]^(eta/(1-alpha))   alpha < 1
//   f(x) = c x^gamma [1 + a(alpha-1) x^delta]^(-eta/(alpha-1))  alpha > 1
//   f(x) = c x^gamma exp(-a eta x^delta)                         alpha = 1
//
// together with its Tsallis special case and the entropy functionals that
// generate it.

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace pathwaykit::pathway {

struct Interval {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    bool bounded() const noexcept { return upper < std::numeric_limits<double>::infinity(); }
};

enum class Family { type1_beta, type2_beta, gamma };

/// Validated pathway parameters with the derived support and normalizing
/// constant.
///
/// Construction enforces delta > 0, a > 0, eta > 0 and (gamma+1)/delta > 0;
/// for alpha > 1 the type-2 tail must also be integrable,
/// eta/(alpha-1) > (gamma+1)/delta. The closed-form constant is checked
/// against quadrature and rejected when they disagree by more than 1e-8.
class PathwayParams {
public:
    PathwayParams(double alpha, double gamma, double delta, double a, double eta);

    double alpha() const noexcept { return alpha_; }
    double gamma() const noexcept { return gamma_; }
    double delta() const noexcept { return delta_; }
    double a() const noexcept { return a_; }
    double eta() const noexcept { return eta_; }

    Family family() const noexcept { return family_; }
    const Interval& support() const noexcept { return support_; }
    double log_normalizer() const noexcept { return log_c_; }
    double normalizer() const;

private:
    double alpha_;
    double gamma_;
    double delta_;
    double a_;
    double eta_;
    Family family_;
    Interval support_;
    double log_c_ = 0.0;
};

Interval pathway_support(const PathwayParams& params);

double pathway_log_pdf(const PathwayParams& params, double x);
double pathway_pdf(const PathwayParams& params, double x);

/// CDF by adaptive quadrature of the density from 0 to x.
double pathway_cdf(const PathwayParams& params, double x);

/// CDF through the regularized incomplete beta / gamma functions. Used by
/// the sampler; pathway_cdf is the quadrature reference.
double pathway_cdf_closed(const PathwayParams& params, double x);

/// n draws by inverse-CDF bisection to 1e-10 in x. Deterministic in seed.
std::vector<double> pathway_sample(const PathwayParams& params, std::size_t n,
                                   std::uint64_t seed);

/// Tsallis statistic [1 - (1-alpha) x]^(1/(1-alpha)), exp(-x) at alpha = 1.
/// Returns 0 past the alpha < 1 endpoint x = 1/(1-alpha).
double tsallis_g(double x, double alpha);

/// A density on a one-sided or two-sided support interval, assumed to carry
/// unit mass.
struct DensityFn {
    std::function<double(double)> pdf;
    Interval support;

    double mass() const;

    static DensityFn uniform(double lower, double upper);
    static DensityFn exponential(double rate = 1.0);
    static DensityFn from_pathway(const PathwayParams& params);
};

/// (int f^alpha - 1) / (2^(1-alpha) - 1). Tends to the Shannon entropy in
/// bits as alpha -> 1.
double havrda_charvat_entropy(const DensityFn& f, double alpha);

/// -int f log f, in nats by default; pass log_base = 2 for bits.
double shannon_entropy(const DensityFn& f, double log_base = 2.718281828459045235);

/// (int f^(2-alpha) - 1) / (alpha - 1) for alpha != 1, alpha < 2. Tends to
/// the Shannon entropy in nats as alpha -> 1.
double mathai_entropy(const DensityFn& f, double alpha);

/// JSON record {"alpha":..,"gamma":..,"delta":..,"a":..,"eta":..}.
std::string params_to_json(const PathwayParams& params);
PathwayParams params_from_json(const std::string& text);

}  // namespace pathwaykit::pathway
