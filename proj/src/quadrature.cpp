#include "pathwaykit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace pathwaykit::quad {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452254, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

struct Segment {
    double a;
    double b;
    double value;
    double err;
    double floor;  // roundoff level 50 eps int |f|
    bool operator<(const Segment& other) const { return err < other.err; }
};

Segment gk21(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double ahalf = std::abs(half);
    resk *= half;
    resabs *= ahalf;
    resasc *= ahalf;
    resg *= half;

    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor = 50.0 * eps * resabs;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, floor);
    if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
    return {a, b, resk, err, floor};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& options) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Segment> heap;
    Segment first = gk21(f, a, b);
    out.evaluations = 21;
    double total = first.value;
    double total_err = first.err;
    double total_floor = first.floor;
    heap.push(first);

    // The requested tolerance may lie below the roundoff of the rule itself;
    // twice the accumulated floor then counts as converged.
    auto target_of = [&](double value, double floor) {
        return std::max({options.abs_tol, options.rel_tol * std::abs(value), 2.0 * floor});
    };
    while (true) {
        if (total_err <= target_of(total, total_floor)) {
            out.converged = true;
            break;
        }
        if (heap.size() >= options.max_intervals) break;
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
        heap.pop();
        Segment left = gk21(f, worst.a, mid);
        Segment right = gk21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed accumulated cancellation from the running updates.
    double value = 0.0;
    double err = 0.0;
    double floor = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().err;
        floor += heap.top().floor;
        heap.pop();
    }
    out.value = value;
    out.abs_err = err;
    if (!out.converged) out.converged = err <= target_of(value, floor);
    return out;
}

double find_log_peak(const Integrand& log_f) {
    constexpr double lo_decade = -12.0;
    constexpr double hi_decade = 12.0;
    constexpr double step = 0.1;
    const int n = static_cast<int>(std::lround((hi_decade - lo_decade) / step)) + 1;

    int best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = std::pow(10.0, lo_decade + step * i);
        const double v = log_f(x);
        if (std::isfinite(v) && v > best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best <= 0) return 0.0;
    if (best == n - 1) return std::pow(10.0, hi_decade);

    const double ln10 = std::log(10.0);
    double lo = (lo_decade + step * (best - 1)) * ln10;
    double hi = (lo_decade + step * (best + 1)) * ln10;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    auto g = [&](double u) { return log_f(std::exp(u)); };
    double u1 = hi - ratio * (hi - lo);
    double u2 = lo + ratio * (hi - lo);
    double g1 = g(u1);
    double g2 = g(u2);
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
        if (g1 < g2) {
            lo = u1;
            u1 = u2;
            g1 = g2;
            u2 = lo + ratio * (hi - lo);
            g2 = g(u2);
        } else {
            hi = u2;
            u2 = u1;
            g2 = g1;
            u1 = hi - ratio * (hi - lo);
            g1 = g(u1);
        }
    }
    return std::exp(0.5 * (lo + hi));
}

namespace {

QuadResult split_and_integrate(const Integrand& f, const Integrand& log_abs_f,
                               const QuadOptions& options) {
    double peak = find_log_peak(log_abs_f);
    if (peak == 0.0) {
        // Decreasing from the origin: split where the mass per unit ln x,
        // x |f(x)|, peaks instead.
        peak = find_log_peak([&](double x) { return log_abs_f(x) + std::log(x); });
    }
    const double peak_log = log_abs_f(peak > 0.0 ? peak : 1e-300);

    // Scale of the right tail: distance at which the log-integrand drops by 1.
    double width = peak > 0.0 ? peak * 1e-3 : 1e-12;
    if (std::isfinite(peak_log)) {
        while (width < 1e15 && log_abs_f(peak + width) > peak_log - 1.0) width *= 2.0;
    } else {
        width = 1.0;
    }

    QuadResult left;
    left.converged = true;
    if (peak > 0.0) left = integrate(f, 0.0, peak, options);

    auto mapped = [&](double t) {
        const double one_minus = 1.0 - t;
        const double x = peak + width * t / one_minus;
        if (!std::isfinite(x)) return 0.0;
        const double v = f(x);
        if (v == 0.0) return 0.0;
        return v * width / (one_minus * one_minus);
    };
    QuadResult right = integrate(mapped, 0.0, 1.0, options);

    QuadResult out;
    out.value = left.value + right.value;
    out.abs_err = left.abs_err + right.abs_err;
    out.evaluations = left.evaluations + right.evaluations;
    out.converged = left.converged && right.converged;
    return out;
}

}  // namespace

QuadResult integrate_half_line_log(const Integrand& log_f, const QuadOptions& options) {
    auto f = [&](double x) {
        const double l = log_f(x);
        return std::isfinite(l) ? std::exp(l) : 0.0;
    };
    return split_and_integrate(f, log_f, options);
}

QuadResult integrate_half_line(const Integrand& f, const QuadOptions& options) {
    auto log_abs = [&](double x) {
        const double v = std::abs(f(x));
        return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    };
    return split_and_integrate(f, log_abs, options);
}

}  // namespace pathwaykit::quad
