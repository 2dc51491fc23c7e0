#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pathwaykit::gof {

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F| of `sample`
/// against a continuous CDF. The sample is taken by value and sorted.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic 1% critical value 1.63 / sqrt(n).
double ks_critical_1pct(std::size_t n);

/// Chi-square CDF with `dof` degrees of freedom (regularized lower incomplete
/// gamma). dof = 0 is the point mass at zero.
double chi_square_cdf(double q, unsigned dof);

}  // namespace pathwaykit::gof
