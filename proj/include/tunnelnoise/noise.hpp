#pragma once

// Noise budget of a tunnelling displacement sensor watching a mechanical
// resonator. All spectral densities are single-sided.

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tunnelnoise/barrier.hpp"
#include "tunnelnoise/errors.hpp"
#include "tunnelnoise/fluxes.hpp"
#include "tunnelnoise/scattering.hpp"
#include "tunnelnoise/uncertainty.hpp"
#include "tunnelnoise/units.hpp"

namespace tunnelnoise {

struct ResonatorSpec {
    double mass = 1e-10;         // kg
    double f0 = 1e5;             // Hz
    double quality = 1e7;        // Q
    double temperature = 10e-3;  // K

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw DomainError(std::string("resonator: ") + name + " must be positive and finite");
            }
        };
        positive(mass, "mass");
        positive(f0, "f0");
        positive(quality, "Q");
        positive(temperature, "temperature");
    }
};

/// Relative agreement required between the two S_fQ routes.
inline constexpr double kForcePsdTolerance = 1e-10;

namespace noise_detail {

inline void check_current(double i0) {
    if (!(i0 > 0.0) || !std::isfinite(i0)) throw DomainError("tunnel current I0 must be positive and finite");
}

/// The rectangular barrier standing in for the junction: same height and gap.
inline BarrierSpec rectangular_equivalent(const BarrierSpec& spec) {
    return BarrierSpec::symmetric(spec.V0, spec.gap, spec.a);
}

}  // namespace noise_detail

/// Quantum back-action force PSD, N^2/Hz, for tunnel current I0 through the
/// rectangular equivalent of `spec` (height V0, same gap):
///   S_fQ = (I0/e) hbar^2 k^2 (1/2) [(1 + q)^2 - (1 - q)^2 (1 - T)],  q = (k0/k)^2.
/// Cross-checked against 2 (Delta p)^2 / tau. N electrons arriving in tau
/// carry the current I0 = e N T / tau (only the transmitted fraction is
/// counted), so the second route is 2 (Delta p_1)^2 I0 / (e T) with
/// (Delta p_1)^2 the variance per incident electron.
inline double quantum_force_psd(double i0, Energy e, const BarrierSpec& spec) {
    noise_detail::check_current(i0);
    const ScatteringSolution s = solve_symmetric(e, noise_detail::rectangular_equivalent(spec));
    const double k = s.k.per_meter;
    const double k0 = s.k0.per_meter;
    const double q = (k0 / k) * (k0 / k);
    const double rate = i0 / si::elementary_charge;
    const double closed = rate * si::hbar * si::hbar * k * k * 0.5 * (4.0 * q + (1.0 - q) * (1.0 - q) * s.T);

    if (s.T >= std::numeric_limits<double>::min()) {
        const double dp = momentum_uncertainty(transferred_fluxes(s), s, 1);
        const double via_variance = 2.0 * dp * dp * rate / s.T;
        if (!(std::abs(via_variance - closed) <= kForcePsdTolerance * closed)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "quantum_force_psd: closed form " << closed << " and momentum-variance route " << via_variance
                << " disagree";
            throw ConsistencyError(msg.str());
        }
    }
    return closed;
}

/// Thermal Langevin force PSD 4 m (2 pi f0) k_B theta / Q, N^2/Hz.
inline double langevin_force_psd(const ResonatorSpec& res) {
    res.validate();
    return 4.0 * res.mass * (2.0 * std::numbers::pi * res.f0) * si::boltzmann * res.temperature / res.quality;
}

/// Practical feasibility figure, normalized to 1 at I0 = 1 uA, m = 1e-10 kg,
/// theta = 10 mK, f0 = 100 kHz, Q = 1e7 (with k0 = 1e10 1/m); below 1 the
/// quantum back-action dominates the thermal force noise.
inline double feasibility_lhs(double i0, const ResonatorSpec& res) {
    noise_detail::check_current(i0);
    res.validate();
    return (1e-6 / i0) * (res.mass / 1e-10) * (res.temperature / 10e-3) * (res.f0 / 1e5) * (1e7 / res.quality);
}

/// Shot-noise current amplitude density sqrt(2 e I0), A/sqrt(Hz).
inline double shot_noise_current_psd(double i0) {
    noise_detail::check_current(i0);
    return std::sqrt(2.0 * si::elementary_charge * i0);
}

/// R0 e^{-2 k0 x}: junction resistance after the gap shrinks by x (opaque-barrier limit).
inline double tunnel_resistance(double r0, Wavenumber k0, Length x) {
    if (!(r0 > 0.0)) throw DomainError("tunnel_resistance: R0 must be positive");
    return r0 * std::exp(-2.0 * k0.per_meter * x.in_meters());
}

struct NoiseBudget {
    double s_fq = 0.0;             // N^2/Hz
    double s_fl = 0.0;             // N^2/Hz
    double feasibility_lhs = 0.0;  // dimensionless
    double psd_ratio = 0.0;        // s_fl / s_fq
    double shot_psd = 0.0;         // A/sqrt(Hz)
    double tunnel_current = 0.0;   // A
    double electron_energy = 0.0;  // eV
    BarrierSpec barrier;
};

inline NoiseBudget noise_budget(double i0, Energy e, const BarrierSpec& spec, const ResonatorSpec& res) {
    NoiseBudget b;
    b.s_fq = quantum_force_psd(i0, e, spec);
    b.s_fl = langevin_force_psd(res);
    b.feasibility_lhs = feasibility_lhs(i0, res);
    b.psd_ratio = b.s_fl / b.s_fq;
    b.shot_psd = shot_noise_current_psd(i0);
    b.tunnel_current = i0;
    b.electron_energy = e.in_eV();
    b.barrier = spec;
    return b;
}

}  // namespace tunnelnoise
