#pragma once

// Probability, momentum and momentum-squared densities/currents of a
// stationary state, and the parts of the momentum fluxes absorbed by the
// electrode at b (the monitored test mass).
//
// Sign note: the momentum-squared density is taken as
//   rho_p2 = -(hbar^2/2) [psi* psi'' + psi''* psi],
// the Hermitian form whose plane-wave value is hbar^2 k^2 |psi|^2. The
// antisymmetric combination vanishes identically for real potentials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tunnelnoise/scattering.hpp"
#include "tunnelnoise/units.hpp"

namespace tunnelnoise {

struct FluxReport {
    double j = 0.0;       // probability current, 1/s
    double j_p = 0.0;     // momentum current, N
    double j_p2 = 0.0;    // momentum-squared current, kg N m/s
    double rho = 0.0;     // 1/m
    double rho_p = 0.0;   // kg/s
    double rho_p2 = 0.0;  // kg^2 m/s^2
    double x = 0.0;
    Side side = Side::bulk;
};

/// Densities and currents from psi, psi', psi'', psi''' at one point.
inline FluxReport currents_from_sample(const WavefunctionSample& w, Side side = Side::bulk) {
    constexpr double hbar = si::hbar;
    constexpr double m = si::electron_mass;
    const cplx psi_c = std::conj(w.psi);
    const cplx d1_c = std::conj(w.d1);

    FluxReport f;
    f.x = w.x;
    f.side = side;
    const double im_psi_d1 = (psi_c * w.d1).imag();
    f.rho = std::norm(w.psi);
    f.j = hbar / m * im_psi_d1;
    f.rho_p = hbar * im_psi_d1;
    f.j_p = hbar * hbar / (2.0 * m) * (std::norm(w.d1) - (psi_c * w.d2).real());
    f.rho_p2 = -hbar * hbar * (psi_c * w.d2).real();
    f.j_p2 = -hbar * hbar * hbar / (2.0 * m) * ((psi_c * w.d3).imag() - (d1_c * w.d2).imag());
    return f;
}

inline FluxReport currents_at(const ScatteringSolution& s, double x, Side side = Side::bulk) {
    return currents_from_sample(eval_wavefunction(s, x, side), side);
}

struct TransferredFluxes {
    double j_p_t = 0.0;   // momentum flux delivered to the electrode at b
    double j_p2_t = 0.0;  // momentum-squared flux delivered to the electrode at b
    std::string v2_description;
};

/// One-sided currents just outside and inside the barrier edges, assembled
/// from the exterior plane-wave values and the step jump relations.
struct EdgeCurrents {
    double j_p_a_minus, j_p2_a_minus;  // x -> a from outside
    double j_p_a_plus, j_p2_a_plus;    // x -> a from inside
    double j_p_b_minus, j_p2_b_minus;  // x -> b from inside
    double j_p_b_plus, j_p2_b_plus;    // x -> b from outside
};

/// Exterior values and jump relations across the steps at a and b. The
/// factor (1 - R) of the incident side is evaluated as T (flux conservation),
/// which stays accurate when R rounds to 1.
inline EdgeCurrents edge_currents(const ScatteringSolution& s) {
    constexpr double hbar = si::hbar;
    constexpr double m = si::electron_mass;
    const double two_pi = 2.0 * std::numbers::pi;
    const double k = s.k.per_meter;
    const double kb = s.k_bar.per_meter;
    const double t2 = std::norm(s.t);
    const double step_a = s.barrier.step_at_a();
    const double step_b = s.barrier.step_at_b();
    const double a = s.a();
    const cplx I(0.0, 1.0);
    const double density_a = 1.0 + s.R + 2.0 * (s.r * std::exp(-2.0 * I * (k * a))).real();

    EdgeCurrents e{};
    e.j_p_b_plus = t2 / two_pi * hbar * hbar * kb * kb / m;
    e.j_p2_b_plus = t2 / two_pi * hbar * hbar * hbar * kb * kb * kb / m;
    e.j_p_a_minus = (1.0 + s.R) / two_pi * hbar * hbar * k * k / m;
    e.j_p2_a_minus = s.T / two_pi * hbar * hbar * hbar * k * k * k / m;

    e.j_p_b_minus = e.j_p_b_plus - t2 / two_pi * step_b;
    e.j_p2_b_minus = e.j_p2_b_plus - t2 / two_pi * 2.0 * step_b * hbar * kb;
    e.j_p_a_plus = e.j_p_a_minus - step_a / two_pi * density_a;
    e.j_p2_a_plus = e.j_p2_a_minus - step_a / two_pi * 2.0 * hbar * k * s.T;
    return e;
}

/// Momentum and momentum-squared fluxes transferred to the electrode at b.
///
/// Rectangular barriers attribute the whole step at b to the test mass; the
/// ramp splits its interior slope force evenly between the two electrodes and
/// gives the step at b to the test mass, which reduces to the half sum of the
/// interior edge currents.
inline TransferredFluxes transferred_fluxes(const ScatteringSolution& s) {
    constexpr double hbar = si::hbar;
    constexpr double m = si::electron_mass;
    const double two_pi = 2.0 * std::numbers::pi;
    const double k = s.k.per_meter;
    const double kb = s.k_bar.per_meter;
    const double k0 = s.k0.per_meter;

    TransferredFluxes out;
    switch (s.barrier.family) {
        case BarrierFamily::SymmetricRect:
            out.j_p_t = hbar * hbar / (2.0 * m) * (k * k - k0 * k0) * s.T / two_pi;
            out.j_p2_t = -hbar * hbar * hbar / m * k0 * k0 * k * s.T / two_pi;
            out.v2_description = "V2 = V0 Theta(b - x)";
            break;
        case BarrierFamily::AsymmetricRect:
            out.j_p_t = hbar * hbar / (2.0 * m) * (kb * kb - k0 * k0) * (k / kb) * s.T / two_pi;
            out.j_p2_t = -hbar * hbar * hbar / m * k0 * k0 * k * s.T / two_pi;
            out.v2_description = "V2 = (V0 + phi) Theta(b - x) - phi";
            break;
        case BarrierFamily::LinearField: {
            const EdgeCurrents e = edge_currents(s);
            out.j_p_t = 0.5 * (e.j_p_a_plus + e.j_p_b_minus);
            out.j_p2_t = 0.5 * (e.j_p2_a_plus + e.j_p2_b_minus);
            out.v2_description =
                "V2 = (V0 - phi/2) Theta(a - x) + [V0 - phi/2 - (phi/2)(x - a)/l] on [a, b] - phi Theta(x - b)";
            break;
        }
    }
    return out;
}

/// Residuals of the four step jump relations at a and b, each in natural
/// flux units (hbar^2 k^2 / 2 pi m for momentum, hbar^3 k^3 / 2 pi m for
/// momentum squared). Interior one-sided values come from direct evaluation
/// of the wavefunction; exterior values from the plane-wave amplitudes.
struct JumpResiduals {
    double momentum_at_b = 0.0;
    double momentum_sq_at_b = 0.0;
    double momentum_at_a = 0.0;
    double momentum_sq_at_a = 0.0;
    double max() const { return std::max({momentum_at_b, momentum_sq_at_b, momentum_at_a, momentum_sq_at_a}); }
};

inline JumpResiduals step_jump_residuals(const ScatteringSolution& s) {
    constexpr double hbar = si::hbar;
    constexpr double m = si::electron_mass;
    const double two_pi = 2.0 * std::numbers::pi;
    const double k = s.k.per_meter;
    const double unit_p = hbar * hbar * k * k / (two_pi * m);
    const double unit_p2 = unit_p * hbar * k;

    const EdgeCurrents e = edge_currents(s);
    const FluxReport inside_b = currents_at(s, s.b(), Side::left_limit);
    const FluxReport inside_a = currents_at(s, s.a(), Side::right_limit);

    JumpResiduals res;
    res.momentum_at_b = std::abs(inside_b.j_p - e.j_p_b_minus) / unit_p;
    res.momentum_sq_at_b = std::abs(inside_b.j_p2 - e.j_p2_b_minus) / unit_p2;
    res.momentum_at_a = std::abs(inside_a.j_p - e.j_p_a_plus) / unit_p;
    res.momentum_sq_at_a = std::abs(inside_a.j_p2 - e.j_p2_a_plus) / unit_p2;
    return res;
}

}  // namespace tunnelnoise
