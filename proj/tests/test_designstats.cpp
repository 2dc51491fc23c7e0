#include <doctest.h>

#include "pathwaykit/designstats.hpp"
#include "pathwaykit/errors.hpp"
#include "support/dense_solve.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace pathwaykit;
using namespace pathwaykit::design;

namespace {

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

IncidenceSystem random_system(std::mt19937_64& rng, Eigen::Index p) {
    std::uniform_int_distribution<int> cols(2, 8);
    std::uniform_int_distribution<int> cell(1, 9);
    std::normal_distribution<double> normal;
    const Eigen::Index q = cols(rng);
    Eigen::MatrixXd counts(p, q);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < q; ++j) counts(i, j) = cell(rng);
    }
    Eigen::VectorXd G(p);
    for (Eigen::Index i = 0; i < p; ++i) G(i) = normal(rng);
    return build_incidence(counts).with_rhs(G);
}

}  // namespace

TEST_CASE("incidence matrix from cell counts") {
    const auto balanced = build_incidence(Eigen::MatrixXd::Constant(4, 4, 3.0));
    CHECK((balanced.A().array() - 0.25).abs().maxCoeff() < 1e-15);

    Eigen::MatrixXd n(2, 2);
    n << 2, 1, 1, 2;
    const auto sys = build_incidence(n);
    CHECK(std::abs(sys.A().row(0).sum() - 1.0) < 1e-15);
    CHECK(std::abs(sys.A().row(1).sum() - 1.0) < 1e-15);
    // a_11 = (2*2/3 + 1*1/3) / 3 = 5/9
    CHECK(sys.A()(0, 0) == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
    CHECK(sys.G().isZero());

    Eigen::MatrixXd zero_row(2, 2);
    zero_row << 0, 0, 1, 2;
    CHECK_THROWS_AS(build_incidence(zero_row), DegenerateError);
    Eigen::MatrixXd disconnected = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(build_incidence(disconnected), DegenerateError);
    Eigen::MatrixXd negative(1, 2);
    negative << 1, -1;
    CHECK_THROWS_AS(build_incidence(negative), DomainError);
}

TEST_CASE("incidence system invariants") {
    Eigen::MatrixXd A(2, 2);
    A << 0.5, 0.5, 0.0, 1.0;
    CHECK_THROWS_AS(IncidenceSystem(A, Eigen::VectorXd()), DegenerateError);
    A << 0.5, 0.6, 0.5, 0.5;
    CHECK_THROWS_AS(IncidenceSystem(A, Eigen::VectorXd()), DomainError);
    A << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(IncidenceSystem(A, Eigen::VectorXd::Zero(3)), DomainError);
    CHECK(IncidenceSystem(A, Eigen::VectorXd()).G().size() == 2);
}

TEST_CASE("median centering") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
    const auto flat = center_by_medians(IncidenceSystem(A, Eigen::VectorXd()));
    CHECK(flat.B.isZero());
    CHECK(flat.norm == 0.0);

    Eigen::MatrixXd A2(2, 2);
    A2 << 0.3, 0.7, 0.6, 0.4;
    const auto c = center_by_medians(IncidenceSystem(A2, Eigen::VectorXd()));
    CHECK(c.medians(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.B(0, 0) == A2(0, 0) - c.medians(0));
    CHECK(c.norm == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("Neumann series on a constant-row system is one term") {
    const IncidenceSystem sys(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0), Eigen::Vector3d(1.0, -2.0, 1.0));
    const auto r = neumann_solve(sys);
    CHECK(r.terms_used == 1);
    CHECK(r.alpha == sys.G());
    CHECK(r.residual == 0.0);
    const auto f = first_order_approx(sys);
    CHECK(f.approx == sys.G());
    CHECK(f.bound == 0.0);
}

TEST_CASE("randomized systems: norm, dense solve, centering, bounds") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index p = std::array<Eigen::Index, 3>{3, 5, 8}[trial % 3];
        const auto sys = random_system(rng, p);
        const auto med = center_by_medians(sys);
        const auto mean = center_by_means(sys);
        CHECK(med.norm < 1.0);
        // Any centre between the two middle order statistics ties in exact
        // arithmetic; allow summation rounding.
        CHECK(med.norm <= mean.norm + 8.0 * p * std::numeric_limits<double>::epsilon());

        const double tol = 1e-13;
        const auto r = neumann_solve(sys, tol);
        std::vector<std::vector<double>> M(p, std::vector<double>(p));
        std::vector<double> rhs(p);
        for (Eigen::Index i = 0; i < p; ++i) {
            rhs[i] = sys.G()(i);
            for (Eigen::Index j = 0; j < p; ++j) M[i][j] = (i == j ? 1.0 : 0.0) - med.B(i, j);
        }
        const auto x = oracle::dense_solve(M, rhs);
        double diff = 0.0;
        for (Eigen::Index i = 0; i < p; ++i) diff = std::max(diff, std::abs(x[i] - r.alpha(i)));
        CHECK(diff <= 1e-10);
        CHECK(r.residual <= tol * (1.0 + r.norm) / (1.0 - r.norm));
        CHECK(r.norm == med.norm);

        // tail bound of every partial sum
        const Eigen::VectorXd exact = Eigen::Map<const Eigen::VectorXd>(x.data(), p);
        Eigen::VectorXd S = sys.G();
        Eigen::VectorXd term = sys.G();
        const double g = max_abs(sys.G());
        for (int m = 0; m < 12; ++m) {
            CHECK(max_abs(exact - S) <= std::pow(med.norm, m + 1) * g / (1.0 - med.norm) + 1e-14);
            term = med.B * term;
            S += term;
        }

        const auto f = first_order_approx(sys);
        const auto precise = neumann_solve(sys, 1e-14);
        CHECK(max_abs(precise.alpha - f.approx) <= f.bound + 1e-15);
    }
}

TEST_CASE("first-order bound is monotone in the norm") {
    const Eigen::Vector3d G(1.0, 0.5, -1.5);
    double previous = -1.0;
    for (double spread : {0.0, 0.05, 0.1, 0.2}) {
        Eigen::MatrixXd A(3, 3);
        A << 1.0 / 3 + spread, 1.0 / 3, 1.0 / 3 - spread, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3 - spread, 1.0 / 3,
            1.0 / 3 + spread;
        const auto f = first_order_approx(IncidenceSystem(A, G));
        CHECK(f.bound > previous);
        previous = f.bound;
    }
}

TEST_CASE("Neumann series term cap") {
    std::mt19937_64 rng(3);
    const auto sys = random_system(rng, 5);
    CHECK_THROWS_AS(neumann_solve(sys, 1e-14, 1), ConvergenceError);
    CHECK_THROWS_AS(neumann_solve(sys, 0.0), DomainError);
}

TEST_CASE("sample correlation") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.5, -1.0};
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = -2.0 * x[i] + 3.0;
    CHECK(sample_correlation(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sample_correlation(x, y) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(sample_correlation(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) ==
          doctest::Approx(0.5).epsilon(1e-15));
    const std::vector<double> z{0.3, -1.0, 2.0, 2.2, 0.0};
    const double r = sample_correlation(x, z);
    std::vector<double> xs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = 4.0 * x[i] - 7.0;
    CHECK(sample_correlation(xs, z) == doctest::Approx(r).epsilon(1e-13));
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = -0.5 * x[i] + 1.0;
    CHECK(sample_correlation(xs, z) == doctest::Approx(-r).epsilon(1e-13));
    CHECK_THROWS_AS(sample_correlation(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}), DegenerateError);
    CHECK_THROWS_AS(sample_correlation(std::vector<double>{1, 2, 3}, std::vector<double>{5, 5, 5}), DegenerateError);
    CHECK_THROWS_AS(sample_correlation(std::vector<double>{1}, std::vector<double>{1}), DomainError);
    CHECK_THROWS_AS(sample_correlation(x, std::vector<double>{1, 2}), DomainError);
}

TEST_CASE("chi-square law of quadratic forms") {
    const std::size_t n = 100000;
    const auto id = chisquared_form_check(Eigen::MatrixXd::Identity(3, 3), n, 17);
    CHECK(id.idempotent);
    CHECK(id.rank == 3);
    CHECK(id.ks_stat < 1.63 / std::sqrt(double(n)));
    CHECK(id.consistent);

    const auto proj = chisquared_form_check(Eigen::Vector3d(1, 1, 0).asDiagonal().toDenseMatrix(), n, 18);
    CHECK(proj.idempotent);
    CHECK(proj.rank == 2);
    CHECK(proj.ks_stat < proj.critical);

    const auto half = chisquared_form_check(Eigen::Vector3d(1, 0.5, 0).asDiagonal().toDenseMatrix(), n, 19);
    CHECK_FALSE(half.idempotent);
    CHECK(half.rank == 2);
    REQUIRE(half.ks_by_dof.size() == 3);
    for (double d : half.ks_by_dof) CHECK(d > half.critical);
    CHECK(half.consistent);

    const auto again = chisquared_form_check(Eigen::MatrixXd::Identity(3, 3), n, 17);
    CHECK(again.ks_stat == id.ks_stat);
}

TEST_CASE("asymmetric input is symmetrized") {
    Eigen::MatrixXd A(2, 2);
    A << 1.0, 1.0, -1.0, 0.0;
    const auto r = chisquared_form_check(A, 20000, 4);
    CHECK(r.idempotent);
    CHECK(r.rank == 1);
    CHECK_THROWS_AS(chisquared_form_check(Eigen::MatrixXd(2, 3), 10, 1), DomainError);
}
