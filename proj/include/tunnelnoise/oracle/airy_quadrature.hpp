#pragma once

// Airy functions from Bessel-function integral representations evaluated by
// adaptive Gauss-Kronrod quadrature. Slow, but shares nothing with the
// series/asymptotic evaluator it is meant to check.
//
//   z > 0, x = (2/3) z^{3/2}:
//     Ai  =  (1/pi) sqrt(z/3) K_{1/3}(x)       Ai' = -(z/(pi sqrt 3)) K_{2/3}(x)
//     Bi  =  sqrt(z/3) [I_{-1/3} + I_{1/3}](x)  Bi' =  (z/sqrt 3) [I_{-2/3} + I_{2/3}](x)
//   z = -y < 0, x = (2/3) y^{3/2}:
//     Ai  =  (sqrt y / 3) [J_{1/3} + J_{-1/3}]  Ai' =  (y/3) [J_{2/3} - J_{-2/3}]
//     Bi  =  sqrt(y/3) [J_{-1/3} - J_{1/3}]     Bi' =  (y/sqrt 3) [J_{-2/3} + J_{2/3}]
//
// with K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt,
//      I_{-nu} + I_nu = (2/pi) int_0^pi e^{x cos u} cos(nu u) du
//                       + (2 sin(nu pi)/pi) int_0^inf e^{-x cosh t} sinh(nu t) dt,
//      J_nu(x) = (1/pi) int_0^pi cos(nu u - x sin u) du
//                - (sin(nu pi)/pi) int_0^inf e^{-x sinh t - nu t} dt.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tunnelnoise/airy.hpp"

namespace tunnelnoise::oracle {

namespace airy_quad_detail {

inline constexpr double kTol = 1e-13;
inline constexpr unsigned kDepth = 12;

template <class F>
double integrate(F f, double lo, double hi) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, kDepth, kTol);
}

// Upper limit beyond which e^{-x (cosh t - 1)} is below e^{-745}.
inline double cosh_cutoff(double x) { return std::acosh(1.0 + 745.0 / x); }

// e^{x} K_nu(x)
inline double k_scaled(double nu, double x) {
    auto f = [=](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(nu * t); };
    return integrate(f, 0.0, cosh_cutoff(x));
}

// e^{-x} [I_{-nu} + I_nu](x)
inline double i_pair_scaled(double nu, double x) {
    auto g = [=](double u) { return std::exp(x * (std::cos(u) - 1.0)) * std::cos(nu * u); };
    auto h = [=](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::sinh(nu * t); };
    const double head = 2.0 / std::numbers::pi * integrate(g, 0.0, std::numbers::pi);
    const double tail = 2.0 * std::sin(nu * std::numbers::pi) / std::numbers::pi * integrate(h, 0.0, cosh_cutoff(x)) *
                        std::exp(-2.0 * x);
    return head + tail;
}

inline double bessel_j(double nu, double x) {
    auto g = [=](double u) { return std::cos(nu * u - x * std::sin(u)); };
    auto h = [=](double t) { return std::exp(-x * std::sinh(t) - nu * t); };
    // e^{-x sinh t - nu t} < e^{-745} once x sinh t + nu t > 745
    const double t_max = std::asinh(745.0 / x) + 1.0;
    return integrate(g, 0.0, std::numbers::pi) / std::numbers::pi -
           std::sin(nu * std::numbers::pi) / std::numbers::pi * integrate(h, 0.0, t_max);
}

}  // namespace airy_quad_detail

/// Ai, Ai', Bi, Bi' by quadrature, in the same balanced scaling as the main
/// evaluator (exponent (2/3) z^{3/2} for z > 0, 0 otherwise). z = 0 returns the
/// closed-form origin values.
inline ScaledAiry airy_by_quadrature(double z) {
    using namespace airy_quad_detail;
    const double pi = std::numbers::pi;
    const double sqrt3 = std::sqrt(3.0);
    ScaledAiry out;
    out.scaled.argument = z;
    if (z == 0.0) {
        out.scaled = {airy_detail::kAi0, airy_detail::kAiPrime0, airy_detail::kBi0, airy_detail::kBiPrime0, 0.0};
        return out;
    }
    if (z > 0.0) {
        const double x = (2.0 / 3.0) * z * std::sqrt(z);
        out.exponent = x;
        out.scaled.ai = std::sqrt(z / 3.0) / pi * k_scaled(1.0 / 3.0, x);
        out.scaled.ai_prime = -z / (pi * sqrt3) * k_scaled(2.0 / 3.0, x);
        out.scaled.bi = std::sqrt(z / 3.0) * i_pair_scaled(1.0 / 3.0, x);
        out.scaled.bi_prime = z / sqrt3 * i_pair_scaled(2.0 / 3.0, x);
        return out;
    }
    const double y = -z;
    const double x = (2.0 / 3.0) * y * std::sqrt(y);
    const double j1p = bessel_j(1.0 / 3.0, x);
    const double j1m = bessel_j(-1.0 / 3.0, x);
    const double j2p = bessel_j(2.0 / 3.0, x);
    const double j2m = bessel_j(-2.0 / 3.0, x);
    out.scaled.ai = std::sqrt(y) / 3.0 * (j1p + j1m);
    out.scaled.ai_prime = y / 3.0 * (j2p - j2m);
    out.scaled.bi = std::sqrt(y / 3.0) * (j1m - j1p);
    out.scaled.bi_prime = y / sqrt3 * (j2m + j2p);
    return out;
}

}  // namespace tunnelnoise::oracle
