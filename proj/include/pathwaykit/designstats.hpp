#pragma once

// Missing-value two-way layout solver, sample correlation, and a Monte Carlo
// check of the chi-square law of quadratic forms.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pathwaykit::design {

/// The reduced normal equations (I - A) alpha = G.
///
/// A must be strictly positive with unit row sums (to 1e-12). G may be left
/// empty by build_incidence and attached later with with_rhs().
class IncidenceSystem {
public:
    IncidenceSystem(Eigen::MatrixXd A, Eigen::VectorXd G,
                    std::optional<Eigen::MatrixXd> cell_counts = std::nullopt);

    const Eigen::MatrixXd& A() const noexcept { return A_; }
    const Eigen::VectorXd& G() const noexcept { return G_; }
    const std::optional<Eigen::MatrixXd>& cell_counts() const noexcept { return counts_; }
    Eigen::Index size() const noexcept { return A_.rows(); }

    IncidenceSystem with_rhs(Eigen::VectorXd G) const;

private:
    Eigen::MatrixXd A_;
    Eigen::VectorXd G_;
    std::optional<Eigen::MatrixXd> counts_;
};

/// A = D_r^-1 N D_c^-1 N^T for a p x q table of cell counts N. G is zero.
/// Throws DegenerateError on an empty row or column, or when two levels
/// share no column (A would not be strictly positive).
IncidenceSystem build_incidence(const Eigen::MatrixXd& counts);

/// B = A - C where row i of C is the median of row i of A.
struct CenteredSystem {
    Eigen::MatrixXd B;
    Eigen::VectorXd medians;
    double norm = 0.0;  // max_i sum_j |b_ij|
};

CenteredSystem center_by_medians(const IncidenceSystem& sys);

/// Same construction with row means in place of medians; for comparison.
CenteredSystem center_by_means(const IncidenceSystem& sys);

struct NeumannResult {
    Eigen::VectorXd alpha;
    std::size_t terms_used = 0;  // m of the returned partial sum S_m
    double residual = 0.0;       // ||(I - B) alpha - G||_inf
    double norm = 0.0;           // ||B||_inf
};

/// Partial sums S_m = sum_{k<=m} B^k G of the median-centered system until
/// ||S_m - S_{m-1}||_inf <= tol. The sum-to-zero constraint on alpha is what
/// licenses dropping C; G should be centered accordingly by the caller.
NeumannResult neumann_solve(const IncidenceSystem& sys, double tol = 1e-12,
                            std::size_t max_terms = 10000);

struct FirstOrder {
    Eigen::VectorXd approx;  // G + B G
    double bound = 0.0;      // ||B||^2 ||G|| / (1 - ||B||)
};

FirstOrder first_order_approx(const IncidenceSystem& sys);

/// Pearson sample correlation; DegenerateError for constant x or y.
double sample_correlation(std::span<const double> x, std::span<const double> y);

struct QuadraticFormReport {
    bool idempotent = false;
    unsigned rank = 0;
    double ks_stat = 0.0;              // against chi-square with `rank` dof
    std::vector<double> ks_by_dof;     // entry r-1 is KS against chi-square_r, r = 1..p
    double critical = 0.0;             // 1% critical value
    double eigen_gap = 0.0;            // max_i min(|lambda_i|, |lambda_i - 1|)
    bool consistent = false;
};

/// Idempotency and rank of the symmetrized matrix, plus a KS comparison of
/// Q = X^T A X (X standard normal, n draws) with chi-square laws.
QuadraticFormReport chisquared_form_check(const Eigen::MatrixXd& A, std::size_t n,
                                          std::uint64_t seed);

}  // namespace pathwaykit::design
