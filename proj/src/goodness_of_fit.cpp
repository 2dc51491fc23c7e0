#include "pathwaykit/goodness_of_fit.hpp"

#include "pathwaykit/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

namespace pathwaykit::gof {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DegenerateError("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) {
    return 1.63 / std::sqrt(static_cast<double>(n));
}

double chi_square_cdf(double q, unsigned dof) {
    if (dof == 0) return q >= 0.0 ? 1.0 : 0.0;
    if (!(q > 0.0)) return 0.0;
    return boost::math::gamma_p(0.5 * static_cast<double>(dof), 0.5 * q);
}

}  // namespace pathwaykit::gof
