#pragma once

// Interior wavefunction by direct integration of psi'' = kappa(x) psi with a
// high-order embedded Runge-Kutta scheme. Integration starts from the
// transmitted wave at b and runs toward a, the direction in which the
// dominant interior solution grows, so truncation errors are not amplified.

#include <array>
#include <cmath>
#include <complex>

#include <boost/numeric/odeint.hpp>

#include "tunnelnoise/scattering.hpp"

namespace tunnelnoise::oracle {

struct OdeSample {
    std::complex<double> psi;
    std::complex<double> d1;
};

/// psi(x), psi'(x) for a <= x <= b, integrated from the outgoing wave at b.
inline OdeSample integrate_interior(const ScatteringSolution& s, double x, double tol = 1e-13) {
    namespace ode = boost::numeric::odeint;
    using state = std::array<double, 4>;  // Re psi, Im psi, Re psi'/ks, Im psi'/ks

    const double b = s.b();
    const double ks = std::max({s.k.per_meter, s.k_bar.per_meter, s.k0.per_meter});
    const double energy = s.energy.in_joules();
    const BarrierSpec spec = s.barrier;

    // Independent variable u = ks (x - b); kappa / ks^2 is O(1).
    auto rhs = [&](const state& y, state& dy, double u) {
        const double xx = b + u / ks;
        const double kappa = si::two_m_over_hbar2 * (spec.potential(std::min(xx, std::nextafter(b, 0.0))) - energy);
        const double g = kappa / (ks * ks);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = g * y[0];
        dy[3] = g * y[1];
    };

    const WavefunctionSample w = eval_wavefunction(s, b, Side::right_limit);
    const double norm = std::abs(w.psi);
    state y{w.psi.real() / norm, w.psi.imag() / norm, w.d1.real() / (norm * ks), w.d1.imag() / (norm * ks)};

    const double u_end = ks * (x - b);
    if (u_end != 0.0) {
        auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<state>());
        ode::integrate_adaptive(stepper, rhs, y, 0.0, u_end, -1e-3);
    }
    return {norm * std::complex<double>(y[0], y[1]), norm * ks * std::complex<double>(y[2], y[3])};
}

}  // namespace tunnelnoise::oracle
