#include <doctest.h>

#include "pathwaykit/errors.hpp"
#include "pathwaykit/goodness_of_fit.hpp"
#include "pathwaykit/pathway.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace pathwaykit;
using namespace pathwaykit::pathway;

namespace {

// Composite Simpson on [a, b] with n (even) panels; independent of the
// library quadrature.
template <class F>
double simpson(F f, double a, double b, int n = 200000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

PathwayParams exponential() { return PathwayParams(1.0, 0.0, 1.0, 1.0, 1.0); }

}  // namespace

TEST_CASE("support endpoints") {
    CHECK(pathway_support(PathwayParams(0.5, 0.0, 1.0, 1.0, 1.0)).upper == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_FALSE(pathway_support(PathwayParams(1.5, 0.0, 2.0, 3.0, 1.0)).bounded());
    CHECK(pathway_support(PathwayParams(0.0, 0.0, 2.0, 2.0, 1.0)).upper ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(pathway_support(exponential()).lower == 0.0);
}

TEST_CASE("densities at hand-checked points") {
    CHECK(pathway_pdf(exponential(), 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));

    // alpha = 0, eta = 2: c (1 - x)^2 on [0, 1] with 1/c = int_0^1 (1-x)^2 dx
    const double c1 = 1.0 / simpson([](double x) { return (1 - x) * (1 - x); }, 0.0, 1.0);
    CHECK(c1 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(pathway_pdf(PathwayParams(0.0, 0.0, 1.0, 1.0, 2.0), 0.5) == doctest::Approx(c1 * 0.25).epsilon(1e-12));

    // alpha = 2, eta = 2: c (1 + x)^-2; 1/c by the midpoint rule in t = x/(1+x)
    double inv_c2 = 0.0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const double t = (i + 0.5) / m;
        const double x = t / (1.0 - t);
        inv_c2 += std::pow(1.0 + x, -2.0) / ((1.0 - t) * (1.0 - t)) / m;
    }
    const double c2 = 1.0 / inv_c2;
    CHECK(pathway_pdf(PathwayParams(2.0, 0.0, 1.0, 1.0, 2.0), 1.0) == doctest::Approx(c2 * 0.25).epsilon(1e-12));
}

TEST_CASE("density vanishes outside the support") {
    const PathwayParams p(0.5, 1.0, 1.0, 1.0, 1.0);
    CHECK(pathway_pdf(p, -0.1) == 0.0);
    CHECK(pathway_pdf(p, 2.5) == 0.0);
    CHECK(pathway_pdf(p, 2.0) == 0.0);
}

TEST_CASE("normalizing constants across regimes integrate to one") {
    for (double alpha : {-1.0, 0.0, 0.5, 0.9, 1.0, 1.1, 1.5, 3.0}) {
        for (double gamma : {-0.5, 0.0, 2.0}) {
            for (double delta : {1.0, 2.0, 3.0}) {
                const double p = (gamma + 1.0) / delta;
                const double q = alpha > 1.0 ? 2.0 / (alpha - 1.0) : 0.0;
                if (alpha > 1.0 && !(q > p)) continue;
                const PathwayParams params(alpha, gamma, delta, 1.3, 2.0);
                CHECK(DensityFn::from_pathway(params).mass() == doctest::Approx(1.0).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(PathwayParams(0.5, 0.0, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(PathwayParams(0.5, 0.0, -1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(PathwayParams(0.5, 0.0, 1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(PathwayParams(0.5, 0.0, 1.0, 1.0, -2.0), DomainError);
    CHECK_THROWS_AS(PathwayParams(0.5, -1.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(PathwayParams(std::nan(""), 0.0, 1.0, 1.0, 1.0), DomainError);
    // type-2 tail x^(gamma - delta q) not integrable: q = 2 <= p = 2
    CHECK_THROWS_AS(PathwayParams(1.5, 0.0, 0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("generalized gamma case reduces to the superstatistics density") {
    for (double gamma : {0.0, 0.5, 1.0, 2.5, 6.0}) {
        const PathwayParams p(1.0, gamma, 1.0, 1.0, 1.0);
        for (double x : {0.1, 1.0, 3.0, 10.0}) {
            const double want = std::pow(x, gamma) * std::exp(-x) / std::tgamma(gamma + 1.0);
            CHECK(std::abs(pathway_pdf(p, x) - want) <= 1e-10 * want);
        }
    }
}

TEST_CASE("pathway limit approaches the gamma family") {
    const double x = 0.7;
    const double limit = pathway_pdf(PathwayParams(1.0, 1.0, 1.5, 1.0, 1.0), x);
    for (double side : {-1.0, 1.0}) {
        double previous = std::numeric_limits<double>::infinity();
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            const double gap = std::abs(pathway_pdf(PathwayParams(1.0 + side * eps, 1.0, 1.5, 1.0, 1.0), x) - limit);
            CHECK(gap < previous);
            previous = gap;
        }
        CHECK(previous <= 1e-3 * limit);
    }
}

TEST_CASE("cdf examples and agreement of the two evaluations") {
    CHECK(pathway_cdf(exponential(), 0.0) == 0.0);
    CHECK(pathway_cdf(exponential(), std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pathway_cdf(PathwayParams(0.5, 0.0, 1.0, 1.0, 1.0), 2.0) == doctest::Approx(1.0).epsilon(1e-8));
    for (const auto& p : {PathwayParams(0.3, 1.0, 2.0, 1.0, 1.5), PathwayParams(2.0, 0.5, 1.0, 2.0, 3.0),
                          PathwayParams(1.0, 2.0, 0.5, 1.0, 1.0)}) {
        double previous = 0.0;
        for (double x : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0}) {
            const double q = pathway_cdf(p, x);
            CHECK(std::abs(q - pathway_cdf_closed(p, x)) < 1e-10);
            CHECK(q >= previous);
            previous = q;
        }
    }
}

TEST_CASE("sampling") {
    CHECK(pathway_sample(exponential(), 0, 3).empty());
    CHECK(pathway_sample(exponential(), 500, 42) == pathway_sample(exponential(), 500, 42));
    CHECK(pathway_sample(exponential(), 50, 42) != pathway_sample(exponential(), 50, 43));

    const std::size_t n = 100000;
    const auto xs = pathway_sample(exponential(), n, 2024);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    CHECK(std::abs(mean - 1.0) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("samples pass KS against the quadrature cdf") {
    const std::size_t n = 100000;
    for (const auto& p : {PathwayParams(0.5, 1.0, 1.0, 1.0, 1.0), PathwayParams(1.5, 0.0, 2.0, 1.0, 1.0),
                          PathwayParams(1.0, 2.0, 1.0, 1.0, 1.0)}) {
        const auto xs = pathway_sample(p, n, 7);
        const double d = gof::ks_statistic(xs, [&](double x) { return pathway_cdf(p, x); });
        CHECK(d < gof::ks_critical_1pct(n));
    }
}

TEST_CASE("Tsallis statistic") {
    for (double a : {0.3, 1.0, 2.0}) CHECK(tsallis_g(0.0, a) == 1.0);
    CHECK(tsallis_g(1.0, 1.0) == std::exp(-1.0));
    CHECK(tsallis_g(1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tsallis_g(3.0, 0.5) == 0.0);
    CHECK_THROWS_AS(tsallis_g(-2.0, 2.0), DomainError);
}

TEST_CASE("Tsallis statistic solves g' = -g^alpha") {
    const double h = 1e-5;
    for (double a : {0.5, 1.5, 2.0}) {
        const double end = a < 1.0 ? std::min(2.0, 1.0 / (1.0 - a) - 0.1) : 2.0;
        for (int i = 0; i <= 40; ++i) {
            const double x = end * i / 40.0;
            const double d = (tsallis_g(x + h, a) - tsallis_g(x - h, a)) / (2 * h);
            CHECK(std::abs(d + std::pow(tsallis_g(x, a), a)) <= 1e-6);
        }
    }
}

TEST_CASE("entropies of simple densities") {
    const auto u01 = DensityFn::uniform(0.0, 1.0);
    const auto expo = DensityFn::exponential();
    for (double a : {0.3, 0.999, 1.001, 1.7, 3.0}) CHECK(havrda_charvat_entropy(u01, a) == 0.0);
    for (double a : {-1.0, 0.5, 0.999, 1.001, 1.9}) CHECK(mathai_entropy(u01, a) == 0.0);
    CHECK(shannon_entropy(u01) == 0.0);
    CHECK(shannon_entropy(expo) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shannon_entropy(DensityFn::uniform(0.0, 2.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(havrda_charvat_entropy(expo, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(havrda_charvat_entropy(expo, 1.0), DomainError);
    CHECK_THROWS_AS(mathai_entropy(expo, 1.0), DomainError);
    CHECK_THROWS_AS(mathai_entropy(expo, 2.0), DomainError);
}

TEST_CASE("entropy limits bracket Shannon") {
    const auto expo = DensityFn::exponential();
    const double bits = shannon_entropy(expo, 2.0);
    const double nats = shannon_entropy(expo);
    CHECK(bits == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
    const double hc_lo = havrda_charvat_entropy(expo, 0.999);
    const double hc_hi = havrda_charvat_entropy(expo, 1.001);
    CHECK(std::min(hc_lo, hc_hi) <= bits);
    CHECK(std::max(hc_lo, hc_hi) >= bits);
    const double m_lo = mathai_entropy(expo, 0.999);
    const double m_hi = mathai_entropy(expo, 1.001);
    CHECK(std::min(m_lo, m_hi) <= nats);
    CHECK(std::max(m_lo, m_hi) >= nats);
}

TEST_CASE("JSON parameter records") {
    const PathwayParams p(0.25, 1.5, 2.0, 0.75, 3.0);
    const auto back = params_from_json(params_to_json(p));
    CHECK(back.alpha() == p.alpha());
    CHECK(back.gamma() == p.gamma());
    CHECK(back.delta() == p.delta());
    CHECK(back.a() == p.a());
    CHECK(back.eta() == p.eta());
    CHECK(nlohmann::json::parse(params_to_json(p)).size() == 5);
    CHECK_THROWS_AS(params_from_json(R"({"alpha":1,"gamma":0,"delta":1,"a":1})"), ParseError);
    CHECK_THROWS_AS(params_from_json(R"({"alpha":1,"gamma":0,"delta":1,"a":1,"eta":"x"})"), ParseError);
    CHECK_THROWS_AS(params_from_json("[1,2]"), ParseError);
    CHECK_THROWS_AS(params_from_json("{"), ParseError);
    CHECK_THROWS_AS(params_from_json(R"({"alpha":1,"gamma":0,"delta":-1,"a":1,"eta":1})"), DomainError);
}
