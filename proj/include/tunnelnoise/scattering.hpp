#pragma once

// Stationary scattering states for the three barrier families.
//
// Convention: incident wave e^{ikx} with unit amplitude, everything multiplied
// by 1/sqrt(2 pi), so the incident flux is (1/2pi)(hbar k/m).
//
//   x < a      psi = [e^{ikx} + r e^{-ikx}] / sqrt(2pi)
//   a <= x <= b psi = [C+ e^{-D} f_b(x) + C- f_a(x)] / sqrt(2pi)
//   x > b      psi = t e^{i kbar x} / sqrt(2pi)
//
// The interior basis is normalized so that nothing overflows for opaque
// barriers: D is the tunnelling exponent (k0 l for rectangles, the Airy
// zeta difference for the linear ramp), f_a peaks at a with f_a(a) = O(1),
// f_b peaks at b with f_b(b) = O(1).
//
//   rectangular  f_b = e^{k0 (x-b)},          f_a = e^{-k0 (x-a)}
//   linear ramp  f_b = Ai(z(x)) e^{s(zb)},    f_a = Bi(z(x)) e^{-s(za)}
//
// with z(x) = alpha^{1/3} (beta - x) and s(z) = (2/3) z^{3/2} for z > 0, else 0.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "tunnelnoise/airy.hpp"
#include "tunnelnoise/barrier.hpp"
#include "tunnelnoise/errors.hpp"
#include "tunnelnoise/units.hpp"

namespace tunnelnoise {

using cplx = std::complex<double>;

/// Below this bias the ramp is solved as a rectangular step (alpha -> 0 is singular).
inline constexpr double kPhiMinEv = 1e-9;

enum class InteriorBasis { exponential, airy };

/// Airy-variable bookkeeping for the linear ramp.
struct AiryFrame {
    double scale = 0.0;  // alpha^{1/3}, 1/m
    double z_a = 0.0;    // alpha^{1/3} (beta - a)
    double z_b = 0.0;    // alpha^{1/3} (beta - b)
    double s_a = 0.0;    // s(z_a)
    double s_b = 0.0;    // s(z_b)
    ScaledAiry at_a;     // balanced Airy values at z_a
    ScaledAiry at_b;
};

struct ScatteringSolution {
    BarrierSpec barrier;
    Energy energy;

    cplx t;        // transmission amplitude (may underflow for very opaque barriers)
    cplx r;        // reflection amplitude
    cplx c_plus;   // interior coefficient of e^{-D} f_b
    cplx c_minus;  // interior coefficient of f_a
    double T = 0.0;
    double R = 0.0;
    double log_T = 0.0;  // ln T, finite even when T underflows

    Wavenumber k;
    Wavenumber k_bar;
    Wavenumber k0;
    double incident_flux = 0.0;  // (1/2pi) hbar k / m, 1/s

    InteriorBasis basis = InteriorBasis::exponential;
    double decay = 0.0;  // D
    cplx t_scaled;       // t e^{D}
    AiryFrame airy;

    double a() const { return barrier.left_edge(); }
    double b() const { return barrier.right_edge(); }
};

namespace scattering_detail {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

inline void check_energy(Energy e, const BarrierSpec& spec) {
    if (!(e.in_joules() > 0.0) || !std::isfinite(e.in_joules())) {
        throw DomainError("scattering: electron energy must be positive and finite");
    }
    if (!(e < spec.V0)) {
        std::ostringstream msg;
        msg << "scattering: E = " << e.in_eV() << " eV must lie below V0 = " << spec.V0.in_eV()
            << " eV; above-barrier transport is not modelled";
        throw DomainError(msg.str());
    }
}

inline void fill_common(ScatteringSolution& s, Energy e, const BarrierSpec& spec, double phi_j) {
    s.barrier = spec;
    s.energy = e;
    s.k = {detail::wavenumber_of(e.in_joules())};
    s.k_bar = {detail::wavenumber_of(e.in_joules() + phi_j)};
    s.k0 = {detail::wavenumber_of(spec.V0.in_joules() - e.in_joules())};
    s.incident_flux = si::hbar * s.k.per_meter / si::electron_mass / (2.0 * std::numbers::pi);
}

// Closed-form rectangular amplitudes with the e^{-k0 l} factor carried separately.
inline ScatteringSolution solve_rectangular(Energy e, const BarrierSpec& spec, double phi_j) {
    ScatteringSolution s;
    fill_common(s, e, spec, phi_j);
    const double k = s.k.per_meter;
    const double kb = s.k_bar.per_meter;
    const double k0 = s.k0.per_meter;
    const double a = spec.left_edge();
    const double b = spec.right_edge();
    const double l = spec.gap.in_meters();
    const cplx I(0.0, 1.0);

    s.basis = InteriorBasis::exponential;
    s.decay = k0 * l;
    const double e1 = std::exp(-s.decay);
    const double e2 = e1 * e1;

    // t e^{i kbar b} e^{k0 l}
    const cplx den = I * k0 * (k + kb) * (1.0 + e2) + (k * kb - k0 * k0) * (1.0 - e2);
    const cplx tau = 4.0 * I * k0 * k * std::exp(I * (k * a)) / den;

    s.t_scaled = tau * std::exp(-I * (kb * b));
    s.t = s.t_scaled * e1;
    s.c_plus = 0.5 * tau * (1.0 + I * kb / k0);
    s.c_minus = 0.5 * tau * (1.0 - I * kb / k0);

    const cplx psi_a = s.c_plus * e2 + s.c_minus;
    const cplx dpsi_a = k0 * (s.c_plus * e2 - s.c_minus);
    s.r = 0.5 * std::exp(I * (k * a)) * (psi_a - dpsi_a / (I * k));

    s.log_T = std::log(kb / k) + 2.0 * std::log(std::abs(tau)) - 2.0 * s.decay;
    s.T = std::exp(s.log_T);
    s.R = std::norm(s.r);
    return s;
}

}  // namespace scattering_detail

/// Symmetric rectangular barrier, closed-form amplitudes.
inline ScatteringSolution solve_symmetric(Energy e, const BarrierSpec& spec) {
    spec.validate();
    if (spec.family != BarrierFamily::SymmetricRect) {
        throw DomainError("solve_symmetric: barrier family must be SymmetricRect");
    }
    scattering_detail::check_energy(e, spec);
    return scattering_detail::solve_rectangular(e, spec, 0.0);
}

/// Rectangular barrier with the right electrode lowered by phi.
inline ScatteringSolution solve_asymmetric(Energy e, const BarrierSpec& spec) {
    spec.validate();
    if (spec.family != BarrierFamily::AsymmetricRect) {
        throw DomainError("solve_asymmetric: barrier family must be AsymmetricRect");
    }
    scattering_detail::check_energy(e, spec);
    return scattering_detail::solve_rectangular(e, spec, spec.phi.in_joules());
}

/// Barrier with a constant field: Airy-function interior, matched numerically.
inline ScatteringSolution solve_linear_field(Energy e, const BarrierSpec& spec) {
    spec.validate();
    if (spec.family != BarrierFamily::LinearField) {
        throw DomainError("solve_linear_field: barrier family must be LinearField");
    }
    scattering_detail::check_energy(e, spec);
    const double phi = spec.phi.in_joules();
    if (phi <= ev_to_joule(kPhiMinEv)) {
        return scattering_detail::solve_rectangular(e, spec, phi);
    }

    ScatteringSolution s;
    scattering_detail::fill_common(s, e, spec, phi);
    const double k = s.k.per_meter;
    const double kb = s.k_bar.per_meter;
    const double a = spec.left_edge();
    const double b = spec.right_edge();
    const double l = spec.gap.in_meters();
    const double barrier_excess = spec.V0.in_joules() - e.in_joules();
    const cplx I(0.0, 1.0);

    AiryFrame& f = s.airy;
    f.scale = std::cbrt(si::two_m_over_hbar2 * phi / l);
    f.z_a = f.scale * l * (barrier_excess / phi);
    f.z_b = f.scale * l * ((barrier_excess - phi) / phi);
    f.at_a = airy_detail::balanced(f.z_a);
    f.at_b = airy_detail::balanced(f.z_b);
    f.s_a = f.at_a.exponent;
    f.s_b = f.at_b.exponent;
    s.basis = InteriorBasis::airy;
    s.decay = zeta_gap(f.z_a, f.z_b, f.scale * l);

    const double e2 = std::exp(-2.0 * s.decay);
    const AiryQuad& qa = f.at_a.scaled;
    const AiryQuad& qb = f.at_b.scaled;
    const double c = f.scale;
    const cplx in_a = std::exp(I * (k * a));
    const cplx out_b = std::exp(I * (kb * b));

    // Unknowns [r, C+, C-, t e^{D}]; derivative rows divided by the exterior wavenumber.
    Eigen::Matrix4cd m;
    Eigen::Vector4cd rhs;
    m << 1.0 / in_a, -qa.ai * e2, -qa.bi, 0.0,
         -I / in_a, (c / k) * qa.ai_prime * e2, (c / k) * qa.bi_prime, 0.0,
         0.0, qb.ai, qb.bi, -out_b,
         0.0, -(c / kb) * qb.ai_prime, -(c / kb) * qb.bi_prime, -I * out_b;
    rhs << -in_a, -I * in_a, 0.0, 0.0;
    const Eigen::Vector4cd sol = m.partialPivLu().solve(rhs);

    s.r = sol(0);
    s.c_plus = sol(1);
    s.c_minus = sol(2);
    s.t_scaled = sol(3);
    s.t = s.t_scaled * std::exp(-s.decay);
    s.log_T = std::log(kb / k) + 2.0 * std::log(std::abs(s.t_scaled)) - 2.0 * s.decay;
    s.T = std::exp(s.log_T);
    s.R = std::norm(s.r);
    return s;
}

/// Family dispatch.
inline ScatteringSolution solve(Energy e, const BarrierSpec& spec) {
    switch (spec.family) {
        case BarrierFamily::SymmetricRect: return solve_symmetric(e, spec);
        case BarrierFamily::AsymmetricRect: return solve_asymmetric(e, spec);
        case BarrierFamily::LinearField: return solve_linear_field(e, spec);
    }
    throw DomainError("solve: unknown barrier family");
}

enum class Side { left_limit, right_limit, bulk };

struct WavefunctionSample {
    double x = 0.0;
    cplx psi;
    cplx d1;
    cplx d2;
    cplx d3;
    double kappa = 0.0;        // (2m/hbar^2)(V - E) on the evaluated side
    double kappa_slope = 0.0;  // d kappa / dx
};

/// psi and its first three x-derivatives. At x == a or x == b, Side selects
/// the one-sided limit; bulk evaluates the interior form there.
inline WavefunctionSample eval_wavefunction(const ScatteringSolution& s, double x, Side side = Side::bulk) {
    using scattering_detail::kInvSqrt2Pi;
    const cplx I(0.0, 1.0);
    const double a = s.a();
    const double b = s.b();
    const double k = s.k.per_meter;
    const double kb = s.k_bar.per_meter;

    WavefunctionSample w;
    w.x = x;
    const bool left = x < a || (x == a && side == Side::left_limit);
    const bool right = x > b || (x == b && side == Side::right_limit);

    if (left) {
        const cplx in = std::exp(I * (k * x));
        const cplx out = s.r / in;
        w.psi = kInvSqrt2Pi * (in + out);
        w.d1 = kInvSqrt2Pi * I * k * (in - out);
        w.kappa = -k * k;
    } else if (right) {
        const cplx wave = s.t * std::exp(I * (kb * x));
        w.psi = kInvSqrt2Pi * wave;
        w.d1 = kInvSqrt2Pi * I * kb * wave;
        w.kappa = -kb * kb;
    } else if (s.basis == InteriorBasis::exponential) {
        const double k0 = s.k0.per_meter;
        const double fb = std::exp(-s.decay - k0 * (b - x));
        const double fa = std::exp(-k0 * (x - a));
        w.psi = kInvSqrt2Pi * (s.c_plus * fb + s.c_minus * fa);
        w.d1 = kInvSqrt2Pi * k0 * (s.c_plus * fb - s.c_minus * fa);
        w.kappa = k0 * k0;
    } else {
        const AiryFrame& f = s.airy;
        const double c = f.scale;
        const double z = f.z_a - c * (x - a);
        const ScaledAiry q = airy_detail::balanced(z);
        const double wb = std::exp(-s.decay - zeta_gap(z, f.z_b, c * (b - x)));
        const double wa = std::exp(-zeta_gap(f.z_a, z, c * (x - a)));
        w.psi = kInvSqrt2Pi * (s.c_plus * (q.scaled.ai * wb) + s.c_minus * (q.scaled.bi * wa));
        w.d1 = -c * kInvSqrt2Pi * (s.c_plus * (q.scaled.ai_prime * wb) + s.c_minus * (q.scaled.bi_prime * wa));
        w.kappa = c * c * z;
        w.kappa_slope = -c * c * c;
    }
    w.d2 = w.kappa * w.psi;
    w.d3 = w.kappa * w.d1 + w.kappa_slope * w.psi;
    return w;
}

/// Largest relative mismatch of psi and psi' between the one-sided limits at a and b.
inline double matching_residual(const ScatteringSolution& s) {
    double worst = 0.0;
    for (double x : {s.a(), s.b()}) {
        const WavefunctionSample lo = eval_wavefunction(s, x, Side::left_limit);
        const WavefunctionSample hi = eval_wavefunction(s, x, Side::right_limit);
        const double kscale = std::max({s.k.per_meter, s.k_bar.per_meter, s.k0.per_meter});
        const double mag = std::max(std::abs(lo.psi), std::abs(hi.psi));
        if (mag == 0.0) continue;
        worst = std::max(worst, std::abs(lo.psi - hi.psi) / mag);
        worst = std::max(worst, std::abs(lo.d1 - hi.d1) / (kscale * mag));
    }
    return worst;
}

}  // namespace tunnelnoise
