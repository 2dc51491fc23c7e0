#include "pathwaykit/specfun.hpp"

#include "pathwaykit/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pathwaykit::specfun {

namespace {

using cplx = std::complex<double>;

// B_{2n} / (2n (2n-1)), n = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

constexpr double kStirlingRadius = 15.0;

cplx stirling(cplx z) {
    const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
    cplx result = (z - 0.5) * std::log(z) - z + half_log_two_pi;
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx power = inv;
    for (double c : kStirling) {
        result += c * power;
        power *= inv2;
    }
    return result;
}

cplx log_gamma_right(cplx z) {
    // Re z >= 0.5 here.
    cplx shift_log(0.0, 0.0);
    while (std::abs(z) < kStirlingRadius) {
        shift_log += std::log(z);
        z += 1.0;
    }
    return stirling(z) - shift_log;
}

// ln sin(pi z) for Im z >= 0 without overflow at large imaginary parts.
cplx log_sin_pi(cplx z) {
    const cplx i(0.0, 1.0);
    const double pi = std::numbers::pi;
    const cplx e = std::exp(2.0 * pi * i * z);  // |e| <= 1
    return -i * pi * z + std::log((e - 1.0) / (2.0 * i));
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("log_gamma: complex argument must be finite");
    }
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw DomainError("log_gamma: pole at non-positive integer");
    }
    if (z.real() >= 0.5) return log_gamma_right(z);
    return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

}  // namespace pathwaykit::specfun
