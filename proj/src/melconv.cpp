#include "pathwaykit/melconv.hpp"

#include "pathwaykit/errors.hpp"
#include "pathwaykit/quadrature.hpp"
#include "pathwaykit/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pathwaykit::melconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using specfun::log_gamma;

double uniform53(std::mt19937_64& engine) {
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

double gamma_variate(std::mt19937_64& engine, double shape) {
    std::gamma_distribution<double> dist(shape, 1.0);
    return dist(engine);
}

double log_beta(double p, double q) {
    return log_gamma(p) + log_gamma(q) - log_gamma(p + q);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << what << " must be positive and finite, got " << v;
        throw DomainError(os.str());
    }
}

std::string strip_text(const Strip& strip) {
    std::ostringstream os;
    os << "(" << strip.lo << ", " << strip.hi << ")";
    return os.str();
}

}  // namespace

double Strip::contour() const noexcept {
    if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
    if (std::isfinite(lo)) return lo + 1.0;
    if (std::isfinite(hi)) return hi - 1.0;
    return 1.0;
}

double MomentDensity::moment(double s) const {
    if (!strip.contains(s)) {
        std::ostringstream os;
        os << label << ": s = " << s << " outside the strip " << strip_text(strip);
        throw DomainError(os.str());
    }
    return std::exp(log_moment(cplx(s, 0.0))).real();
}

MomentDensity gamma_density(double gamma) {
    if (!(gamma > -1.0) || !std::isfinite(gamma)) {
        throw DomainError("gamma density: requires gamma > -1");
    }
    const double norm = log_gamma(gamma + 1.0);
    MomentDensity d;
    d.label = "gamma";
    d.log_moment = [=](cplx s) { return log_gamma(gamma + s) - norm; };
    d.strip = {-gamma, kInf};
    d.pdf = [=](double x) {
        return x > 0.0 ? std::exp(gamma * std::log(x) - x - norm) : 0.0;
    };
    d.sampler = [=](std::mt19937_64& e) { return gamma_variate(e, gamma + 1.0); };
    return d;
}

MomentDensity gen_gamma_density(double gamma, double a, double delta) {
    require_positive(a, "gen_gamma: a");
    require_positive(delta, "gen_gamma: delta");
    if (!(gamma > -1.0) || !std::isfinite(gamma)) {
        throw DomainError("gen_gamma density: requires gamma > -1");
    }
    const double p = (gamma + 1.0) / delta;
    const double norm = log_gamma(p);
    const double log_a = std::log(a);
    const double log_c = std::log(delta) + p * log_a - norm;
    MomentDensity d;
    d.label = "gen_gamma";
    d.log_moment = [=](cplx s) {
        return log_gamma((gamma + s) / delta) - norm - (s - 1.0) / delta * log_a;
    };
    d.strip = {-gamma, kInf};
    d.pdf = [=](double x) {
        return x > 0.0 ? std::exp(log_c + gamma * std::log(x) - a * std::pow(x, delta)) : 0.0;
    };
    d.sampler = [=](std::mt19937_64& e) {
        return std::pow(gamma_variate(e, p) / a, 1.0 / delta);
    };
    return d;
}

MomentDensity type1_beta_density(double alpha, double beta) {
    require_positive(alpha, "type1_beta: alpha");
    require_positive(beta, "type1_beta: beta");
    const double lb = log_beta(alpha, beta);
    const double norm = log_gamma(alpha + beta) - log_gamma(alpha);
    MomentDensity d;
    d.label = "type1_beta";
    d.log_moment = [=](cplx s) {
        return log_gamma(alpha + s - 1.0) - log_gamma(alpha + beta + s - 1.0) + norm;
    };
    d.strip = {1.0 - alpha, kInf};
    d.support_upper = 1.0;
    d.pdf = [=](double x) {
        if (!(x > 0.0 && x < 1.0)) return 0.0;
        return std::exp((alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x) - lb);
    };
    d.sampler = [=](std::mt19937_64& e) {
        const double g1 = gamma_variate(e, alpha);
        const double g2 = gamma_variate(e, beta);
        return g1 / (g1 + g2);
    };
    return d;
}

MomentDensity type2_beta_density(double alpha, double beta) {
    require_positive(alpha, "type2_beta: alpha");
    require_positive(beta, "type2_beta: beta");
    const double lb = log_beta(alpha, beta);
    const double norm = log_gamma(alpha) + log_gamma(beta);
    MomentDensity d;
    d.label = "type2_beta";
    d.log_moment = [=](cplx s) {
        return log_gamma(alpha + s - 1.0) + log_gamma(beta - s + 1.0) - norm;
    };
    d.strip = {1.0 - alpha, 1.0 + beta};
    d.pdf = [=](double x) {
        if (!(x > 0.0)) return 0.0;
        return std::exp((alpha - 1.0) * std::log(x) - (alpha + beta) * std::log1p(x) - lb);
    };
    d.sampler = [=](std::mt19937_64& e) {
        return gamma_variate(e, alpha) / gamma_variate(e, beta);
    };
    return d;
}

MomentDensity uniform01_density() {
    MomentDensity d;
    d.label = "uniform01";
    d.log_moment = [](cplx s) { return -std::log(s); };
    d.strip = {0.0, kInf};
    d.support_upper = 1.0;
    d.pdf = [](double x) { return (x > 0.0 && x < 1.0) ? 1.0 : 0.0; };
    d.sampler = [](std::mt19937_64& e) { return uniform53(e); };
    return d;
}

MomentDensity builtin_density(std::string_view kind, std::span<const double> params) {
    auto expect = [&](std::size_t n) {
        if (params.size() != n) {
            std::ostringstream os;
            os << "builtin density '" << kind << "' takes " << n << " parameter(s), got "
               << params.size();
            throw DomainError(os.str());
        }
    };
    if (kind == "gamma") {
        expect(1);
        return gamma_density(params[0]);
    }
    if (kind == "gen_gamma") {
        expect(3);
        return gen_gamma_density(params[0], params[1], params[2]);
    }
    if (kind == "type1_beta") {
        expect(2);
        return type1_beta_density(params[0], params[1]);
    }
    if (kind == "type2_beta") {
        expect(2);
        return type2_beta_density(params[0], params[1]);
    }
    if (kind == "uniform01") {
        expect(0);
        return uniform01_density();
    }
    throw DomainError("unknown builtin density '" + std::string(kind) + "'");
}

void ProductSpec::validate() const {
    if (numerator.empty() && denominator.empty()) {
        throw DomainError("product spec: at least one factor required");
    }
    for (const auto* list : {&numerator, &denominator}) {
        for (const Factor& f : *list) {
            if (!(f.exponent > 0.0) || !std::isfinite(f.exponent)) {
                throw DomainError("product spec: exponents must be positive");
            }
            if (!f.density.log_moment) throw DomainError("product spec: factor without moment");
        }
    }
}

Strip ProductSpec::strip() const {
    Strip out;
    for (const Factor& f : numerator) {
        // delta (s - 1) + 1 in (lo, hi)
        out.lo = std::max(out.lo, 1.0 + (f.density.strip.lo - 1.0) / f.exponent);
        out.hi = std::min(out.hi, 1.0 + (f.density.strip.hi - 1.0) / f.exponent);
    }
    for (const Factor& f : denominator) {
        // -delta (s - 1) + 1 in (lo, hi)
        out.lo = std::max(out.lo, 1.0 + (1.0 - f.density.strip.hi) / f.exponent);
        out.hi = std::min(out.hi, 1.0 + (1.0 - f.density.strip.lo) / f.exponent);
    }
    return out;
}

cplx structure_log_moment(const ProductSpec& spec, cplx s) {
    cplx total(0.0, 0.0);
    for (const Factor& f : spec.numerator) total += f.density.log_moment(f.exponent * (s - 1.0) + 1.0);
    for (const Factor& f : spec.denominator) total += f.density.log_moment(-f.exponent * (s - 1.0) + 1.0);
    return total;
}

double structure_moment(const ProductSpec& spec, double s) {
    spec.validate();
    const Strip strip = spec.strip();
    if (!strip.contains(s)) {
        std::ostringstream os;
        os << "structure_moment: s = " << s << " outside the common strip " << strip_text(strip);
        throw DomainError(os.str());
    }
    double value = 1.0;
    for (const Factor& f : spec.numerator) value *= f.density.moment(f.exponent * (s - 1.0) + 1.0);
    for (const Factor& f : spec.denominator) value *= f.density.moment(-f.exponent * (s - 1.0) + 1.0);
    return value;
}

MomentDensity to_moment_density(const ProductSpec& spec, std::string label) {
    spec.validate();
    MomentDensity d;
    d.label = std::move(label);
    d.log_moment = [spec](cplx s) { return structure_log_moment(spec, s); };
    d.strip = spec.strip();
    if (spec.denominator.empty()) {
        double upper = 1.0;
        for (const Factor& f : spec.numerator) upper *= std::pow(f.density.support_upper, f.exponent);
        d.support_upper = upper;
    }
    if (spec.numerator.size() == 1 && spec.denominator.empty() &&
        spec.numerator.front().exponent == 1.0) {
        d.pdf = spec.numerator.front().density.pdf;
    }
    const bool samplable =
        std::all_of(spec.numerator.begin(), spec.numerator.end(), [](const Factor& f) { return bool(f.density.sampler); }) &&
        std::all_of(spec.denominator.begin(), spec.denominator.end(), [](const Factor& f) { return bool(f.density.sampler); });
    if (samplable) {
        d.sampler = [spec](std::mt19937_64& e) {
            double log_u = 0.0;
            for (const Factor& f : spec.numerator) log_u += f.exponent * std::log(f.density.sampler(e));
            for (const Factor& f : spec.denominator) log_u -= f.exponent * std::log(f.density.sampler(e));
            return std::exp(log_u);
        };
    }
    return d;
}

std::vector<double> sample_structure(const ProductSpec& spec, std::size_t n, std::uint64_t seed) {
    const MomentDensity d = to_moment_density(spec);
    if (!d.sampler) throw DomainError("sample_structure: a factor has no sampler");
    std::mt19937_64 engine(seed);
    std::vector<double> out(n);
    for (double& v : out) v = d.sampler(engine);
    return out;
}

namespace {

// Wynn epsilon extrapolation of the tail of a sequence of partial sums.
double wynn_epsilon(std::span<const double> sums) {
    const std::size_t m = sums.size();
    if (m < 3) return sums.back();
    std::vector<double> prev(m, 0.0);   // eps_{k-1}
    std::vector<double> cur(sums.begin(), sums.end());  // eps_k
    double best = sums.back();
    for (std::size_t k = 1; k < m; ++k) {
        std::vector<double> next(m - k);
        for (std::size_t n = 0; n + k < m; ++n) {
            const double diff = cur[n + 1] - cur[n];
            if (diff == 0.0) return k % 2 == 1 ? cur[n + 1] : best;
            next[n] = prev[n + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) best = cur.back();
        if (!std::isfinite(best)) return sums.back();
    }
    return best;
}

}  // namespace

InversionResult mellin_invert(const std::function<cplx(cplx)>& log_moment, double u, double c,
                              const InversionOptions& options) {
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("mellin_invert: u must be positive");
    if (!std::isfinite(c)) throw DomainError("mellin_invert: contour abscissa must be finite");

    const double log_u = std::log(u);
    auto integrand = [&](double t) {
        const cplx s(c, t);
        const cplx l = log_moment(s) - s * log_u;
        if (!(l.real() > -745.0)) return 0.0;
        return std::exp(l.real()) * std::cos(l.imag());
    };

    const double half_period = std::abs(log_u) > 1e-12 ? std::numbers::pi / std::abs(log_u) : kInf;
    const double width = std::min(half_period, 4.0);

    // Integral-units budget: g = I / pi.
    const double pi = std::numbers::pi;
    quad::QuadOptions panel_opts;
    panel_opts.abs_tol = 1e-3 * options.rel_tol * pi;
    panel_opts.rel_tol = 1e-12;
    panel_opts.max_intervals = 200;

    std::vector<double> sums;
    sums.reserve(256);
    double sum = 0.0;
    double quad_err = 0.0;
    int quiet = 0;
    double prev_estimate = 0.0;
    double prev_gap = kInf;
    double last_bound = kInf;
    double t0 = 0.0;

    for (std::size_t panel = 0; panel < options.max_panels; ++panel) {
        const double t1 = t0 + width;
        const quad::QuadResult r = quad::integrate(integrand, t0, t1, panel_opts);
        t0 = t1;
        sum += r.value;
        quad_err += r.abs_err;
        sums.push_back(sum);

        const double g = sum / pi;
        const double budget = options.rel_tol * (1.0 + std::abs(g)) * pi;

        // Direct convergence: the integrand has died out.
        if (std::abs(r.value) <= 1e-3 * budget && std::abs(integrand(t1)) * width <= 1e-3 * budget) {
            if (++quiet >= 3) return {g, (quad_err + std::abs(r.value)) / pi, panel + 1};
        } else {
            quiet = 0;
        }

        // Accelerated convergence for slowly decaying oscillatory tails.
        if (sums.size() >= 8) {
            const std::size_t window = std::min<std::size_t>(sums.size(), 41);
            const std::size_t odd = window % 2 == 1 ? window : window - 1;
            const double estimate =
                wynn_epsilon(std::span<const double>(sums).subspan(sums.size() - odd));
            const double gap = std::abs(estimate - prev_estimate);
            const double bound = gap + prev_gap;
            last_bound = bound;
            if (bound + quad_err <= budget) {
                return {estimate / pi, (bound + quad_err) / pi, panel + 1};
            }
            prev_gap = gap;
            prev_estimate = estimate;
        }
    }

    std::ostringstream os;
    os << "mellin_invert: no convergence at u = " << u << " after " << options.max_panels
       << " panels (achieved bound " << last_bound / pi << ")";
    throw ConvergenceError(os.str(), sum / pi, last_bound / pi);
}

InversionResult mellin_invert(const MomentDensity& density, double u,
                              const InversionOptions& options) {
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("mellin_invert: u must be positive");
    if (u >= density.support_upper) return {0.0, 0.0, 0};
    return mellin_invert(density.log_moment, u, density.strip.contour(), options);
}

namespace {

void check_rate_domain(double gamma, double a, double b) {
    if (!std::isfinite(gamma) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("reaction_rate: parameters must be finite");
    }
    if (a < 0.0 || b < 0.0) throw DomainError("reaction_rate: a and b must be non-negative");
    if (a == 0.0 && b == 0.0) throw DomainError("reaction_rate: a and b cannot both vanish");
    if (b == 0.0 && !(gamma > -1.0)) {
        throw DomainError("reaction_rate: b = 0 requires gamma > -1 (divergent at 0)");
    }
    if (a == 0.0 && !(gamma < -1.0)) {
        throw DomainError("reaction_rate: a = 0 requires gamma < -1 (divergent at infinity)");
    }
}

RateResult from_quad(const quad::QuadResult& r, const char* what) {
    if (!r.converged || !std::isfinite(r.value)) {
        std::ostringstream os;
        os << what << ": quadrature did not reach tolerance (estimate " << r.value
           << ", error " << r.abs_err << ")";
        throw ConvergenceError(os.str(), r.value, r.abs_err);
    }
    return {r.value, r.abs_err};
}

RateResult rate_by_quadrature(double gamma, double a, double b) {
    auto log_f = [=](double x) {
        return gamma * std::log(x) - a * x - b / std::sqrt(x);
    };
    return from_quad(quad::integrate_half_line_log(log_f), "reaction_rate");
}

RateResult rate_by_mellin(double gamma, double a, double b) {
    if (b == 0.0) {
        return {std::exp(log_gamma(gamma + 1.0) - (gamma + 1.0) * std::log(a)), 0.0};
    }
    if (a == 0.0) {
        // t = x^(-1/2): 2 int t^(-2 gamma - 3) e^(-b t) dt
        return {2.0 * std::exp(log_gamma(-2.0 * gamma - 2.0) + (2.0 * gamma + 2.0) * std::log(b)), 0.0};
    }
    if (gamma > -1.5) {
        // u = x1 x2 with x1 ~ e^(-x), x2 ~ c v^(2 gamma + 2) e^(-a v^2); the
        // product density at u = b is c/2 times the integral.
        ProductSpec spec;
        spec.numerator.push_back({gamma_density(0.0), 1.0});
        spec.numerator.push_back({gen_gamma_density(2.0 * gamma + 2.0, a, 2.0), 1.0});
        const MomentDensity product = to_moment_density(spec, "reaction-rate product");
        const InversionResult g = mellin_invert(product, b);
        const double scale = std::exp(log_gamma(gamma + 1.5) - (gamma + 1.5) * std::log(a));
        return {scale * g.value, scale * g.abs_err};
    }
    // Mellin transform in b of the integral itself:
    //   Gamma(s) Gamma(gamma + 1 + s/2) a^(-(gamma + 1 + s/2)), Re s > max(0, -2 gamma - 2)
    const double log_a = std::log(a);
    auto log_moment = [=](cplx s) {
        const cplx shifted = gamma + 1.0 + 0.5 * s;
        return log_gamma(s) + log_gamma(shifted) - shifted * log_a;
    };
    const Strip strip{std::max(0.0, -2.0 * gamma - 2.0), kInf};
    const InversionResult g = mellin_invert(log_moment, b, strip.contour());
    return {g.value, g.abs_err};
}

}  // namespace

RateResult reaction_rate_result(double gamma, double a, double b, Route route) {
    check_rate_domain(gamma, a, b);
    switch (route) {
        case Route::quadrature:
            return rate_by_quadrature(gamma, a, b);
        case Route::mellin:
            return rate_by_mellin(gamma, a, b);
        case Route::checked: {
            const RateResult q = rate_by_quadrature(gamma, a, b);
            const RateResult m = rate_by_mellin(gamma, a, b);
            if (std::abs(q.value - m.value) > 1e-6 * std::abs(q.value)) {
                std::ostringstream os;
                os.precision(15);
                os << "reaction_rate: quadrature " << q.value << " and mellin " << m.value
                   << " routes disagree beyond 1e-6 relative";
                throw ConsistencyError(os.str());
            }
            return {q.value, std::max(q.abs_err, std::abs(q.value - m.value))};
        }
    }
    return {};
}

double reaction_rate(double gamma, double a, double b, Route route) {
    return reaction_rate_result(gamma, a, b, route).value;
}

RateResult kratzel_g1_result(double gamma, double a, double y) {
    if (!std::isfinite(gamma) || !std::isfinite(y)) throw DomainError("kratzel_g1: parameters must be finite");
    require_positive(a, "kratzel_g1: a");
    if (y < 0.0) throw DomainError("kratzel_g1: y must be non-negative");
    if (y == 0.0 && !(gamma > -1.0)) throw DomainError("kratzel_g1: y = 0 requires gamma > -1");
    auto log_f = [=](double x) { return gamma * std::log(x) - a * x - y / x; };
    return from_quad(quad::integrate_half_line_log(log_f), "kratzel_g1");
}

double kratzel_g1(double gamma, double a, double y) { return kratzel_g1_result(gamma, a, y).value; }

RateResult kratzel_g2_result(double gamma, double a, double y, double alpha, double beta) {
    if (!std::isfinite(gamma) || !std::isfinite(y) || !std::isfinite(beta)) {
        throw DomainError("kratzel_g2: parameters must be finite");
    }
    require_positive(a, "kratzel_g2: a");
    require_positive(alpha, "kratzel_g2: alpha");
    if (y < 0.0) throw DomainError("kratzel_g2: y must be non-negative");
    const bool damped_at_zero = y > 0.0 && beta > 0.0;
    if (!damped_at_zero && !(gamma > -1.0)) {
        throw DomainError("kratzel_g2: requires gamma > -1 unless y > 0 and beta > 0");
    }
    auto log_f = [=](double x) {
        return gamma * std::log(x) - a * std::pow(x, alpha) - y * std::pow(x, -beta);
    };
    return from_quad(quad::integrate_half_line_log(log_f), "kratzel_g2");
}

double kratzel_g2(double gamma, double a, double y, double alpha, double beta) {
    return kratzel_g2_result(gamma, a, y, alpha, beta).value;
}

MomentDensity random_volume_dist(std::size_t k, std::span<const BetaShape> shapes) {
    if (k == 0) throw DomainError("random_volume_dist: k must be at least 1");
    if (shapes.size() != 1 && shapes.size() != k) {
        throw DomainError("random_volume_dist: give one shape or exactly k shapes");
    }
    ProductSpec spec;
    for (std::size_t i = 0; i < k; ++i) {
        const BetaShape& s = shapes.size() == 1 ? shapes[0] : shapes[i];
        spec.numerator.push_back({type1_beta_density(s.alpha, s.beta), 1.0});
    }
    std::ostringstream label;
    label << "beta product (k=" << k << ")";
    return to_moment_density(spec, label.str());
}

std::vector<TrendPoint> normality_trend(std::span<const std::size_t> k_list, BetaShape shape,
                                        std::size_t n, std::uint64_t seed) {
    if (n < 3) throw DomainError("normality_trend: need at least 3 draws");
    const MomentDensity one = type1_beta_density(shape.alpha, shape.beta);
    std::mt19937_64 engine(seed);
    std::vector<TrendPoint> out;
    std::vector<double> logs(n);
    for (std::size_t k : k_list) {
        if (k < 2) throw DomainError("normality_trend: each k must be at least 2");
        for (double& v : logs) {
            double acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) acc += std::log(one.sampler(engine));
            v = acc;
        }
        double mean = 0.0;
        for (double v : logs) mean += v;
        mean /= static_cast<double>(n);
        double m2 = 0.0;
        double m3 = 0.0;
        for (double v : logs) {
            const double d = v - mean;
            m2 += d * d;
            m3 += d * d * d;
        }
        m2 /= static_cast<double>(n);
        m3 /= static_cast<double>(n);
        out.push_back({k, m3 / std::pow(m2, 1.5)});
    }
    return out;
}

}  // namespace pathwaykit::melconv
