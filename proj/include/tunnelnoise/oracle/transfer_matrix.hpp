#pragma once

// Piecewise-constant transmission solver used as an independent reference.
// The state (psi, psi') is carried backward from the transmitted plane wave
// through each slice with the exact real propagator of psi'' = kappa psi,
// then decomposed into incident and reflected waves on the left.

#include <cmath>
#include <complex>
#include <vector>

#include "tunnelnoise/barrier.hpp"
#include "tunnelnoise/errors.hpp"
#include "tunnelnoise/units.hpp"

namespace tunnelnoise::oracle {

struct PotentialSample {
    double x = 0.0;  // m, start of the piece
    double V = 0.0;  // J, value on [x, next x)
};

/// samples.front() is the left exterior (extends to -inf), samples.back() the
/// right exterior (extends to +inf); everything between is a finite slice.
struct SlicedPotential {
    std::vector<PotentialSample> samples;

    std::size_t n_slices() const { return samples.size() < 2 ? 0 : samples.size() - 2; }

    void validate() const {
        if (samples.size() < 2) throw DomainError("SlicedPotential: need at least the two exterior samples");
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (!(samples[i].x > samples[i - 1].x)) {
                throw DomainError("SlicedPotential: sample positions must be strictly increasing");
            }
        }
    }
};

/// Midpoint discretization of a barrier into n equal slices on [a, b].
inline SlicedPotential slice_barrier(const BarrierSpec& spec, std::size_t n) {
    spec.validate();
    if (n == 0) throw DomainError("slice_barrier: need at least one slice");
    const double a = spec.left_edge();
    const double l = spec.gap.in_meters();
    const double h = l / static_cast<double>(n);
    SlicedPotential p;
    p.samples.reserve(n + 2);
    p.samples.push_back({a - 0.25 * l, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + h * static_cast<double>(i);
        p.samples.push_back({x, spec.potential(a + h * (static_cast<double>(i) + 0.5))});
    }
    p.samples.push_back({a + l, spec.potential(a + l)});
    return p;
}

struct TransferResult {
    double T = 0.0;
    double R = 0.0;
    double log_T = 0.0;
};

inline TransferResult transfer_matrix_T(const SlicedPotential& pot, double energy_joules) {
    using cplx = std::complex<double>;
    pot.validate();
    if (!(energy_joules > 0.0)) throw DomainError("transfer_matrix_T: energy must be positive");
    const double c = si::two_m_over_hbar2;
    const double v_left = pot.samples.front().V;
    const double v_right = pot.samples.back().V;
    if (!(energy_joules > v_left) || !(energy_joules > v_right)) {
        throw DomainError("transfer_matrix_T: both exterior regions must be classically allowed");
    }
    const double k_left = std::sqrt(c * (energy_joules - v_left));
    const double k_right = std::sqrt(c * (energy_joules - v_right));
    const cplx I(0.0, 1.0);

    // psi(b) = 1, psi'(b) = i k_right; amplitudes are renormalized as we go
    // and the discarded log-scale is kept in log_scale.
    cplx psi = 1.0;
    cplx dpsi = I * k_right;
    double log_scale = 0.0;

    for (std::size_t i = pot.samples.size() - 2; i >= 1; --i) {
        const double h = pot.samples[i + 1].x - pot.samples[i].x;
        const double kappa = c * (pot.samples[i].V - energy_joules);
        cplx p, d;
        if (kappa > 0.0) {
            const double q = std::sqrt(kappa);
            const double qh = q * h;
            // cosh and sinh with e^{qh} factored out
            const double e2 = std::exp(-2.0 * qh);
            const double ch = 0.5 * (1.0 + e2);
            const double sh = 0.5 * (1.0 - e2);
            p = psi * ch - dpsi * (sh / q);
            d = -psi * (q * sh) + dpsi * ch;
            log_scale += qh;
        } else if (kappa < 0.0) {
            const double q = std::sqrt(-kappa);
            const double cs = std::cos(q * h);
            const double sn = std::sin(q * h);
            p = psi * cs - dpsi * (sn / q);
            d = psi * (q * sn) + dpsi * cs;
        } else {
            p = psi - dpsi * h;
            d = dpsi;
        }
        const double norm = std::max(std::abs(p), std::abs(d) / k_left);
        psi = p / norm;
        dpsi = d / norm;
        log_scale += std::log(norm);
        if (i == 1) break;
    }

    const cplx forward = 0.5 * (psi + dpsi / (I * k_left));
    const cplx backward = 0.5 * (psi - dpsi / (I * k_left));
    TransferResult out;
    out.log_T = std::log(k_right / k_left) - 2.0 * std::log(std::abs(forward)) - 2.0 * log_scale;
    out.T = std::exp(out.log_T);
    out.R = std::norm(backward / forward);
    return out;
}

/// Midpoint slicing at n and 2n with one Richardson step on log T (the
/// midpoint error is even in the slice width).
inline TransferResult transfer_matrix_richardson(const BarrierSpec& spec, double energy_joules, std::size_t n) {
    const TransferResult coarse = transfer_matrix_T(slice_barrier(spec, n), energy_joules);
    const TransferResult fine = transfer_matrix_T(slice_barrier(spec, 2 * n), energy_joules);
    TransferResult out = fine;
    out.log_T = (4.0 * fine.log_T - coarse.log_T) / 3.0;
    out.T = std::exp(out.log_T);
    out.R = 1.0 - out.T;
    return out;
}

}  // namespace tunnelnoise::oracle
