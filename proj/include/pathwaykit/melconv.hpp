#pragma once

// Mellin-convolution engine. A positive random variable is represented by
// its moment function s -> E(x^(s-1)); products and ratios of independent
// variables multiply moment functions, and densities are recovered by
// numerical inversion along a vertical contour.

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathwaykit::melconv {

using cplx = std::complex<double>;

/// Open strip lo < Re(s) < hi where a moment function is analytic.
struct Strip {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double s) const noexcept { return s > lo && s < hi; }

    // Midpoint of a finite strip; one unit inside the finite edge of a
    // half-infinite strip; 1 for the whole plane.
    double contour() const noexcept;
};

struct MomentDensity {
    std::string label;
    // Complex log of E(x^(s-1)); only its exponential is meaningful.
    std::function<cplx(cplx)> log_moment;
    Strip strip;
    double support_upper = std::numeric_limits<double>::infinity();
    std::function<double(double)> pdf;                 // optional direct density
    std::function<double(std::mt19937_64&)> sampler;   // optional

    cplx moment(cplx s) const { return std::exp(log_moment(s)); }
    // Real moment; throws DomainError outside the strip.
    double moment(double s) const;
};

/// x^gamma e^(-x) / Gamma(gamma+1), gamma > -1.
MomentDensity gamma_density(double gamma);
/// c x^gamma e^(-a x^delta), gamma > -1, a > 0, delta > 0.
MomentDensity gen_gamma_density(double gamma, double a, double delta);
/// x^(alpha-1) (1-x)^(beta-1) / B(alpha, beta) on (0, 1).
MomentDensity type1_beta_density(double alpha, double beta);
/// x^(alpha-1) (1+x)^(-(alpha+beta)) / B(alpha, beta) on (0, inf).
MomentDensity type2_beta_density(double alpha, double beta);
MomentDensity uniform01_density();

/// Factory by name: "gamma" {gamma}, "gen_gamma" {gamma, a, delta},
/// "type1_beta" {alpha, beta}, "type2_beta" {alpha, beta}, "uniform01" {}.
MomentDensity builtin_density(std::string_view kind, std::span<const double> params);

struct Factor {
    MomentDensity density;
    double exponent = 1.0;
};

/// u = prod x_i^(delta_i) / prod y_j^(delta_j) of independent factors.
struct ProductSpec {
    std::vector<Factor> numerator;
    std::vector<Factor> denominator;

    void validate() const;
    Strip strip() const;
};

cplx structure_log_moment(const ProductSpec& spec, cplx s);
/// E(u^(s-1)) for real s inside the common strip; DomainError otherwise.
double structure_moment(const ProductSpec& spec, double s);

/// The structure as a MomentDensity (sampler included when every factor has one).
MomentDensity to_moment_density(const ProductSpec& spec, std::string label = "structure");

/// Independent draws of the structure.
std::vector<double> sample_structure(const ProductSpec& spec, std::size_t n, std::uint64_t seed);

struct InversionOptions {
    double rel_tol = 1e-8;          // target abs error rel_tol * (1 + |g|)
    std::size_t max_panels = 20000;
};

struct InversionResult {
    double value = 0.0;
    double abs_err = 0.0;
    std::size_t panels = 0;
};

/// g(u) = (1/2 pi i) int_{c - i inf}^{c + i inf} M(s) u^(-s) ds for a real
/// density (M(conj s) = conj M(s)), evaluated as (1/pi) int_0^inf Re[...] dt.
///
/// The t-axis is cut into half-periods of u^(-it); panel sums converge
/// directly for exponentially decaying moments and are accelerated by the
/// Wynn epsilon algorithm for algebraic decay. Throws ConvergenceError with
/// the achieved bound when the target is not met within max_panels.
InversionResult mellin_invert(const std::function<cplx(cplx)>& log_moment, double u, double c,
                              const InversionOptions& options = {});

/// Inversion on the density's own contour; 0 at or beyond support_upper.
InversionResult mellin_invert(const MomentDensity& density, double u,
                              const InversionOptions& options = {});

enum class Route { quadrature, mellin, checked };

struct RateResult {
    double value = 0.0;
    double abs_err = 0.0;
};

/// I(gamma, a, b) = int_0^inf x^gamma exp(-a x - b x^(-1/2)) dx.
///
/// The quadrature route integrates directly; the mellin route writes the
/// integrand as the density of a product of independent gamma-type
/// variables evaluated at u = b and inverts its moment function (a = 0 or
/// b = 0 reduce to gamma integrals). `checked` runs both and throws
/// ConsistencyError if they differ by more than 1e-6 relative.
RateResult reaction_rate_result(double gamma, double a, double b, Route route);
double reaction_rate(double gamma, double a, double b, Route route = Route::quadrature);

/// int_0^inf x^gamma exp(-a x - y/x) dx.
RateResult kratzel_g1_result(double gamma, double a, double y);
double kratzel_g1(double gamma, double a, double y);

/// int_0^inf x^gamma exp(-a x^alpha - y x^(-beta)) dx, beta of either sign.
RateResult kratzel_g2_result(double gamma, double a, double y, double alpha, double beta);
double kratzel_g2(double gamma, double a, double y, double alpha, double beta);

struct BetaShape {
    double alpha;
    double beta;
};

/// Product of k independent type-1 beta variables. `shapes` holds either one
/// shape (shared by all factors) or exactly k.
MomentDensity random_volume_dist(std::size_t k, std::span<const BetaShape> shapes);

struct TrendPoint {
    std::size_t k;
    double skewness;
};

/// Sample skewness of the standardized log of a k-fold beta product, for
/// each k. One generator seeded once and shared across the k values.
std::vector<TrendPoint> normality_trend(std::span<const std::size_t> k_list, BetaShape shape,
                                        std::size_t n, std::uint64_t seed);

}  // namespace pathwaykit::melconv
