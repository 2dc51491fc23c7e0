#include "pathwaykit/pathway.hpp"

#include "pathwaykit/errors.hpp"
#include "pathwaykit/quadrature.hpp"
#include "pathwaykit/specfun.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace pathwaykit::pathway {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_beta(double p, double q) {
    return specfun::log_gamma(p) + specfun::log_gamma(q) - specfun::log_gamma(p + q);
}

quad::QuadResult integrate_over(const std::function<double(double)>& g, const Interval& support,
                                const quad::QuadOptions& options = {}) {
    if (support.lower == -kInf) {
        auto reflected = [&](double x) { return g(-x); };
        if (support.upper == kInf) {
            auto right = quad::integrate_half_line(g, options);
            auto left = quad::integrate_half_line(reflected, options);
            right.value += left.value;
            right.abs_err += left.abs_err;
            right.converged = right.converged && left.converged;
            return right;
        }
        auto shifted = [&](double x) { return g(support.upper - x); };
        return quad::integrate_half_line(shifted, options);
    }
    if (support.upper == kInf) {
        if (support.lower == 0.0) return quad::integrate_half_line(g, options);
        auto shifted = [&](double x) { return g(support.lower + x); };
        return quad::integrate_half_line(shifted, options);
    }
    return quad::integrate(g, support.lower, support.upper, options);
}

// Integral of a pointwise functional phi(f(x)) over the support, skipping
// points where the density vanishes.
double integrate_functional(const DensityFn& f, const std::function<double(double)>& phi) {
    auto integrand = [&](double x) {
        const double v = f.pdf(x);
        return v > 0.0 ? phi(v) : 0.0;
    };
    return integrate_over(integrand, f.support).value;
}

}  // namespace

PathwayParams::PathwayParams(double alpha, double gamma, double delta, double a, double eta)
    : alpha_(alpha), gamma_(gamma), delta_(delta), a_(a), eta_(eta) {
    for (double v : {alpha, gamma, delta, a, eta}) {
        if (!std::isfinite(v)) throw DomainError("pathway: parameters must be finite");
    }
    if (!(delta_ > 0.0)) throw DomainError("pathway: delta must be positive");
    if (!(a_ > 0.0)) throw DomainError("pathway: a must be positive");
    if (!(eta_ > 0.0)) throw DomainError("pathway: eta must be positive");
    const double p = (gamma_ + 1.0) / delta_;
    if (!(p > 0.0)) throw DomainError("pathway: requires (gamma+1)/delta > 0");

    if (alpha_ < 1.0) {
        family_ = Family::type1_beta;
        const double b = a_ * (1.0 - alpha_);
        const double q = eta_ / (1.0 - alpha_);
        support_ = {0.0, std::pow(b, -1.0 / delta_)};
        log_c_ = std::log(delta_) + p * std::log(b) - log_beta(p, q + 1.0);
    } else if (alpha_ > 1.0) {
        family_ = Family::type2_beta;
        const double b = a_ * (alpha_ - 1.0);
        const double q = eta_ / (alpha_ - 1.0);
        if (!(q > p)) {
            std::ostringstream os;
            os << "pathway: type-2 density not normalizable, requires eta/(alpha-1) = " << q
               << " > (gamma+1)/delta = " << p;
            throw DomainError(os.str());
        }
        support_ = {0.0, kInf};
        log_c_ = std::log(delta_) + p * std::log(b) - log_beta(p, q - p);
    } else {
        family_ = Family::gamma;
        support_ = {0.0, kInf};
        log_c_ = std::log(delta_) + p * std::log(a_ * eta_) - specfun::log_gamma(p);
    }

    auto pdf = [this](double x) { return pathway_pdf(*this, x); };
    const auto mass = integrate_over(pdf, support_);
    if (!(std::abs(mass.value - 1.0) <= 1e-8)) {
        std::ostringstream os;
        os.precision(15);
        os << "pathway: normalizing constant failed quadrature self-check (mass "
           << mass.value << ")";
        throw DomainError(os.str());
    }
}

double PathwayParams::normalizer() const { return std::exp(log_c_); }

Interval pathway_support(const PathwayParams& params) { return params.support(); }

double pathway_log_pdf(const PathwayParams& params, double x) {
    if (!(x >= 0.0)) return -kInf;
    const Interval& s = params.support();
    if (x > s.upper) return -kInf;
    if (x == 0.0) {
        if (params.gamma() == 0.0) return params.log_normalizer();
        return params.gamma() > 0.0 ? -kInf : kInf;
    }
    const double xd = std::pow(x, params.delta());
    double shape = 0.0;
    switch (params.family()) {
        case Family::type1_beta: {
            const double b = params.a() * (1.0 - params.alpha());
            const double q = params.eta() / (1.0 - params.alpha());
            const double z = b * xd;
            if (z >= 1.0) return -kInf;
            shape = q * std::log1p(-z);
            break;
        }
        case Family::type2_beta: {
            const double b = params.a() * (params.alpha() - 1.0);
            const double q = params.eta() / (params.alpha() - 1.0);
            shape = -q * std::log1p(b * xd);
            break;
        }
        case Family::gamma:
            shape = -params.a() * params.eta() * xd;
            break;
    }
    return params.log_normalizer() + params.gamma() * std::log(x) + shape;
}

double pathway_pdf(const PathwayParams& params, double x) {
    const double l = pathway_log_pdf(params, x);
    return l == -kInf ? 0.0 : std::exp(l);
}

double pathway_cdf(const PathwayParams& params, double x) {
    if (!(x > 0.0)) return 0.0;
    auto pdf = [&](double t) { return pathway_pdf(params, t); };
    const Interval& s = params.support();
    double value = 0.0;
    if (x >= s.upper) {
        value = integrate_over(pdf, s).value;
    } else {
        value = quad::integrate(pdf, 0.0, x).value;
    }
    return std::clamp(value, 0.0, 1.0);
}

double pathway_cdf_closed(const PathwayParams& params, double x) {
    if (!(x > 0.0)) return 0.0;
    if (x >= params.support().upper) return 1.0;
    const double p = (params.gamma() + 1.0) / params.delta();
    const double xd = std::pow(x, params.delta());
    switch (params.family()) {
        case Family::type1_beta: {
            const double b = params.a() * (1.0 - params.alpha());
            const double q = params.eta() / (1.0 - params.alpha());
            return boost::math::ibeta(p, q + 1.0, std::min(1.0, b * xd));
        }
        case Family::type2_beta: {
            const double b = params.a() * (params.alpha() - 1.0);
            const double q = params.eta() / (params.alpha() - 1.0);
            const double z = b * xd;
            if (!std::isfinite(z)) return 1.0;
            return boost::math::ibeta(p, q - p, z / (1.0 + z));
        }
        case Family::gamma:
            return boost::math::gamma_p(p, params.a() * params.eta() * xd);
    }
    return 0.0;
}

std::vector<double> pathway_sample(const PathwayParams& params, std::size_t n,
                                   std::uint64_t seed) {
    std::vector<double> out;
    out.reserve(n);
    std::mt19937_64 engine(seed);
    constexpr double kTol = 1e-10;
    const Interval& s = params.support();

    for (std::size_t i = 0; i < n; ++i) {
        // 53-bit uniform on (0, 1); independent of library distribution code.
        const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
        double lo = 0.0;
        double hi = s.bounded() ? s.upper : 1.0;
        if (!s.bounded()) {
            while (pathway_cdf_closed(params, hi) < u && hi < 1e300) {
                lo = hi;
                hi *= 2.0;
            }
        }
        while (hi - lo > kTol) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (pathway_cdf_closed(params, mid) < u) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

double tsallis_g(double x, double alpha) {
    if (alpha == 1.0) return std::exp(-x);
    const double base = 1.0 - (1.0 - alpha) * x;
    if (!(base > 0.0)) {
        if (alpha < 1.0) return 0.0;
        throw DomainError("tsallis_g: 1 - (1-alpha) x must be positive");
    }
    return std::exp(std::log1p(-(1.0 - alpha) * x) / (1.0 - alpha));
}

double DensityFn::mass() const {
    return integrate_over(pdf, support).value;
}

DensityFn DensityFn::uniform(double lower, double upper) {
    if (!(upper > lower) || !std::isfinite(lower) || !std::isfinite(upper)) {
        throw DomainError("uniform density: requires finite lower < upper");
    }
    const double height = 1.0 / (upper - lower);
    return {[=](double x) { return (x >= lower && x <= upper) ? height : 0.0; },
            {lower, upper}};
}

DensityFn DensityFn::exponential(double rate) {
    if (!(rate > 0.0)) throw DomainError("exponential density: rate must be positive");
    return {[=](double x) { return x >= 0.0 ? rate * std::exp(-rate * x) : 0.0; },
            {0.0, kInf}};
}

DensityFn DensityFn::from_pathway(const PathwayParams& params) {
    return {[params](double x) { return pathway_pdf(params, x); }, params.support()};
}

double havrda_charvat_entropy(const DensityFn& f, double alpha) {
    if (alpha == 1.0) {
        throw DomainError(
            "havrda_charvat_entropy: alpha = 1 is the Shannon limit; use shannon_entropy");
    }
    if (!std::isfinite(alpha)) throw DomainError("havrda_charvat_entropy: alpha must be finite");
    // int f^alpha - 1 = int f (f^(alpha-1) - 1) for unit-mass f
    const double excess =
        integrate_functional(f, [=](double v) { return v * std::expm1((alpha - 1.0) * std::log(v)); });
    return excess / std::expm1((1.0 - alpha) * std::numbers::ln2);
}

double shannon_entropy(const DensityFn& f, double log_base) {
    if (!(log_base > 0.0) || log_base == 1.0) {
        throw DomainError("shannon_entropy: logarithm base must be positive and not 1");
    }
    const double nats = -integrate_functional(f, [](double v) { return v * std::log(v); });
    return nats / std::log(log_base);
}

double mathai_entropy(const DensityFn& f, double alpha) {
    if (alpha == 1.0 || !(alpha < 2.0)) {
        std::ostringstream os;
        os << "mathai_entropy: requires alpha != 1 and alpha < 2, got " << alpha;
        throw DomainError(os.str());
    }
    // int f^(2-alpha) - 1 = int f (f^(1-alpha) - 1)
    const double excess =
        integrate_functional(f, [=](double v) { return v * std::expm1((1.0 - alpha) * std::log(v)); });
    return excess / (alpha - 1.0);
}

std::string params_to_json(const PathwayParams& params) {
    nlohmann::json j = {{"alpha", params.alpha()}, {"gamma", params.gamma()},
                        {"delta", params.delta()}, {"a", params.a()},
                        {"eta", params.eta()}};
    return j.dump();
}

PathwayParams params_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("pathway params: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("pathway params: expected a JSON object");
    auto get = [&](const char* key) {
        if (!j.contains(key)) throw ParseError(std::string("pathway params: missing key '") + key + "'");
        const auto& v = j.at(key);
        if (!v.is_number()) throw ParseError(std::string("pathway params: key '") + key + "' is not a number");
        return v.get<double>();
    };
    return PathwayParams(get("alpha"), get("gamma"), get("delta"), get("a"), get("eta"));
}

}  // namespace pathwaykit::pathway
