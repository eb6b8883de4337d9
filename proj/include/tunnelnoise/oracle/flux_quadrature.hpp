#pragma once

// Transferred momentum fluxes from their integral definitions: the outgoing
// current at b+ plus the force of the test-mass potential V2 integrated
// against |psi|^2 (momentum) or 2 hbar Im(psi* psi') (momentum squared).
// The smooth part of V2' is integrated by adaptive quadrature over the
// interior; the step of V2 at b is a delta function and is added in closed
// form with the one-sided value of psi at b.

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tunnelnoise/fluxes.hpp"
#include "tunnelnoise/scattering.hpp"

namespace tunnelnoise::oracle {

struct FluxQuadrature {
    double j_p_t = 0.0;
    double j_p2_t = 0.0;
    double error_estimate = 0.0;  // quadrature error of the density integral, relative
};

/// V2 takes half the interior slope for the ramp and none for rectangles; the
/// whole step at b belongs to V2 in every family.
inline FluxQuadrature transferred_by_quadrature(const ScatteringSolution& s) {
    constexpr double hbar = si::hbar;
    const double a = s.a();
    const double b = s.b();
    const double slope2 = s.barrier.family == BarrierFamily::LinearField ? 0.5 * s.barrier.interior_slope() : 0.0;
    const double step = s.barrier.step_at_b();

    const double l = b - a;

    // integrate over u = (x - a)/l in [0, 1] so the error estimates are scale-free
    auto density = [&](double u) { return std::norm(eval_wavefunction(s, a + u * l).psi); };
    auto current = [&](double u) {
        const WavefunctionSample w = eval_wavefunction(s, a + u * l);
        return (std::conj(w.psi) * w.d1).imag();
    };

    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    double err_rho = 0.0, err_cur = 0.0;
    const double int_rho = slope2 == 0.0 ? 0.0 : l * gk::integrate(density, 0.0, 1.0, 15, 1e-13, &err_rho);
    const double int_cur = slope2 == 0.0 ? 0.0 : l * gk::integrate(current, 0.0, 1.0, 15, 1e-13, &err_cur);

    const FluxReport out_b = currents_at(s, b, Side::right_limit);
    const WavefunctionSample at_b = eval_wavefunction(s, b, Side::left_limit);
    const double rho_b = std::norm(at_b.psi);
    const double cur_b = (std::conj(at_b.psi) * at_b.d1).imag();

    FluxQuadrature q;
    q.j_p_t = out_b.j_p + slope2 * int_rho - step * rho_b;
    q.j_p2_t = out_b.j_p2 + 2.0 * hbar * (slope2 * int_cur - step * cur_b);
    q.error_estimate = int_rho == 0.0 ? 0.0 : l * err_rho / int_rho;
    return q;
}

}  // namespace tunnelnoise::oracle
