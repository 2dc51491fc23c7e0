#include "pathwaykit/designstats.hpp"

#include "pathwaykit/errors.hpp"
#include "pathwaykit/goodness_of_fit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pathwaykit::design {

namespace {

double inf_norm(const Eigen::MatrixXd& M) {
    return M.rows() == 0 ? 0.0 : M.cwiseAbs().rowwise().sum().maxCoeff();
}

double inf_norm(const Eigen::VectorXd& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double median_of(Eigen::VectorXd row) {
    std::vector<double> v(row.data(), row.data() + row.size());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

CenteredSystem center_with(const IncidenceSystem& sys, const Eigen::VectorXd& shifts) {
    CenteredSystem out;
    out.medians = shifts;
    out.B = sys.A().colwise() - shifts;
    out.norm = inf_norm(out.B);
    return out;
}

}  // namespace

IncidenceSystem::IncidenceSystem(Eigen::MatrixXd A, Eigen::VectorXd G,
                                 std::optional<Eigen::MatrixXd> cell_counts)
    : A_(std::move(A)), G_(std::move(G)), counts_(std::move(cell_counts)) {
    if (A_.rows() == 0 || A_.rows() != A_.cols()) {
        throw DomainError("incidence system: A must be a non-empty square matrix");
    }
    if (G_.size() != 0 && G_.size() != A_.rows()) {
        throw DomainError("incidence system: G length does not match A");
    }
    if (!A_.allFinite() || !G_.allFinite()) throw DomainError("incidence system: non-finite entry");
    for (Eigen::Index i = 0; i < A_.rows(); ++i) {
        if ((A_.row(i).array() <= 0.0).any()) {
            std::ostringstream os;
            os << "incidence system: row " << i + 1 << " of A has a non-positive entry";
            throw DegenerateError(os.str());
        }
        const double sum = A_.row(i).sum();
        if (std::abs(sum - 1.0) > 1e-12) {
            std::ostringstream os;
            os.precision(17);
            os << "incidence system: row " << i + 1 << " of A sums to " << sum << ", not 1";
            throw DomainError(os.str());
        }
    }
    if (G_.size() == 0) G_ = Eigen::VectorXd::Zero(A_.rows());
}

IncidenceSystem IncidenceSystem::with_rhs(Eigen::VectorXd G) const {
    return IncidenceSystem(A_, std::move(G), counts_);
}

IncidenceSystem build_incidence(const Eigen::MatrixXd& counts) {
    if (counts.rows() == 0 || counts.cols() == 0) throw DegenerateError("build_incidence: empty table");
    if ((counts.array() < 0.0).any() || !counts.allFinite()) {
        throw DomainError("build_incidence: cell counts must be non-negative");
    }
    const Eigen::VectorXd rows = counts.rowwise().sum();
    const Eigen::VectorXd cols = counts.colwise().sum().transpose();
    for (Eigen::Index i = 0; i < rows.size(); ++i) {
        if (rows(i) <= 0.0) {
            std::ostringstream os;
            os << "build_incidence: row " << i + 1 << " has zero total";
            throw DegenerateError(os.str());
        }
    }
    for (Eigen::Index j = 0; j < cols.size(); ++j) {
        if (cols(j) <= 0.0) {
            std::ostringstream os;
            os << "build_incidence: column " << j + 1 << " has zero total";
            throw DegenerateError(os.str());
        }
    }
    const Eigen::MatrixXd A = rows.cwiseInverse().asDiagonal() * counts *
                              cols.cwiseInverse().asDiagonal() * counts.transpose();
    return IncidenceSystem(A, Eigen::VectorXd::Zero(A.rows()), counts);
}

CenteredSystem center_by_medians(const IncidenceSystem& sys) {
    Eigen::VectorXd medians(sys.size());
    for (Eigen::Index i = 0; i < sys.size(); ++i) medians(i) = median_of(sys.A().row(i).transpose());
    return center_with(sys, medians);
}

CenteredSystem center_by_means(const IncidenceSystem& sys) {
    return center_with(sys, sys.A().rowwise().mean());
}

NeumannResult neumann_solve(const IncidenceSystem& sys, double tol, std::size_t max_terms) {
    if (!(tol > 0.0)) throw DomainError("neumann_solve: tol must be positive");
    const CenteredSystem centered = center_by_medians(sys);
    const Eigen::MatrixXd& B = centered.B;
    const Eigen::VectorXd& G = sys.G();

    Eigen::VectorXd sum = G;
    Eigen::VectorXd term = G;
    auto residual_of = [&](const Eigen::VectorXd& alpha) {
        return inf_norm(Eigen::VectorXd(alpha - B * alpha - G));
    };
    for (std::size_t m = 1; m <= max_terms; ++m) {
        term = B * term;
        sum += term;
        if (inf_norm(term) <= tol) {
            return {sum, m, residual_of(sum), centered.norm};
        }
    }
    const double residual = residual_of(sum);
    std::ostringstream os;
    os << "neumann_solve: no convergence within " << max_terms << " terms (residual " << residual
       << ")";
    throw ConvergenceError(os.str(), inf_norm(sum), residual);
}

FirstOrder first_order_approx(const IncidenceSystem& sys) {
    const CenteredSystem centered = center_by_medians(sys);
    const double b = centered.norm;
    FirstOrder out;
    out.approx = sys.G() + centered.B * sys.G();
    out.bound = b * b * inf_norm(sys.G()) / (1.0 - b);
    return out;
}

double sample_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("sample_correlation: x and y differ in length");
    if (x.size() < 2) throw DomainError("sample_correlation: need at least two observations");
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateError("sample_correlation: constant sample (zero denominator)");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

QuadraticFormReport chisquared_form_check(const Eigen::MatrixXd& A, std::size_t n,
                                          std::uint64_t seed) {
    if (A.rows() == 0 || A.rows() != A.cols()) {
        throw DomainError("chisquared_form_check: A must be a non-empty square matrix");
    }
    if (n == 0) throw DomainError("chisquared_form_check: n must be positive");
    const Eigen::MatrixXd S = 0.5 * (A + A.transpose());
    const Eigen::Index p = S.rows();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    const double scale = std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
    const double threshold = 1e-10 * scale;

    QuadraticFormReport report;
    for (Eigen::Index i = 0; i < p; ++i) {
        if (std::abs(lambda(i)) > threshold) ++report.rank;
        report.eigen_gap =
            std::max(report.eigen_gap, std::min(std::abs(lambda(i)), std::abs(lambda(i) - 1.0)));
    }
    report.idempotent = inf_norm(Eigen::MatrixXd(S * S - S)) <= threshold;

    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> q(n);
    Eigen::VectorXd x(p);
    for (double& v : q) {
        for (Eigen::Index i = 0; i < p; ++i) x(i) = normal(engine);
        v = x.dot(S * x);
    }

    report.critical = gof::ks_critical_1pct(n);
    for (Eigen::Index r = 1; r <= p; ++r) {
        const unsigned dof = static_cast<unsigned>(r);
        report.ks_by_dof.push_back(
            gof::ks_statistic(q, [dof](double v) { return gof::chi_square_cdf(v, dof); }));
    }
    report.ks_stat = report.rank == 0
                         ? gof::ks_statistic(q, [](double v) { return gof::chi_square_cdf(v, 0); })
                         : report.ks_by_dof[report.rank - 1];

    if (report.idempotent) {
        report.consistent = report.ks_stat < report.critical;
    } else if (report.eigen_gap >= 0.2) {
        report.consistent = std::all_of(report.ks_by_dof.begin(), report.ks_by_dof.end(),
                                        [&](double d) { return d > report.critical; });
    } else {
        report.consistent = true;
    }
    return report;
}

}  // namespace pathwaykit::design
