#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tunnelnoise/fluxes.hpp"
#include "tunnelnoise/oracle/finite_diff.hpp"
#include "tunnelnoise/oracle/flux_quadrature.hpp"

using namespace tunnelnoise;

namespace {

struct Case {
    double v0, e, gap, phi;
};

std::vector<Case> random_cases(unsigned seed, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Case> out;
    for (int i = 0; i < n; ++i) {
        const double v0 = 1.0 + 9.0 * u(rng);
        const double e = v0 * (0.05 + 0.9 * u(rng));
        out.push_back({v0, e, 0.1 + 1.9 * u(rng), 0.01 + 4.99 * u(rng)});
    }
    return out;
}

ScatteringSolution field(const Case& c) {
    return solve(Energy::eV(c.e), BarrierSpec::linear_field(Energy::eV(c.v0), Energy::eV(c.phi), Length::nm(c.gap)));
}

double unit_p(const ScatteringSolution& s) {
    const double k = s.k.per_meter;
    return si::hbar * si::hbar * k * k / (2.0 * std::numbers::pi * si::electron_mass);
}

}  // namespace

TEST(Fluxes, ProbabilityCurrentIsConstant) {
    for (const Case& c : random_cases(3, 100)) {
        const ScatteringSolution s = field(c);
        const double expected = s.T * s.incident_flux;
        const double l = s.b() - s.a();
        for (double frac : {-0.7, -0.01, 0.0, 0.3, 0.5, 0.99, 1.0, 1.4}) {
            const double j = currents_at(s, s.a() + frac * l).j;
            EXPECT_LE(std::abs(j - expected) / s.incident_flux, 1e-12) << "frac=" << frac;
        }
    }
}

TEST(Fluxes, IncidentSideCurrentIsOneMinusR) {
    const auto s = solve(Energy::eV(4.0), BarrierSpec::symmetric(Energy::eV(5.0), Length::nm(0.2)));
    const double j = currents_at(s, -3e-9).j;
    EXPECT_LE(std::abs(j / s.incident_flux - (1.0 - s.R)), 1e-12);
}

TEST(Fluxes, ExteriorMomentumCurrentsMatchPlaneWaves) {
    for (const Case& c : random_cases(5, 20)) {
        const ScatteringSolution s = field(c);
        const EdgeCurrents e = edge_currents(s);
        const double up = unit_p(s);
        const double up2 = up * si::hbar * s.k.per_meter;
        for (double dx : {1e-10, 7.3e-10}) {
            const FluxReport left = currents_at(s, s.a() - dx);
            const FluxReport right = currents_at(s, s.b() + dx);
            EXPECT_LE(std::abs(left.j_p - e.j_p_a_minus) / up, 1e-12);
            EXPECT_LE(std::abs(left.j_p2 - e.j_p2_a_minus) / up2, 1e-12);
            EXPECT_LE(std::abs(right.j_p - e.j_p_b_plus) / up, 1e-12);
            EXPECT_LE(std::abs(right.j_p2 - e.j_p2_b_plus) / up2, 1e-12);
        }
    }
}

// dJ_p/dx = -V' rho and dJ_p2/dx = -2 V' rho_p inside the ramp. rho_p is a
// cancellation-prone imaginary part when T is small, so the second balance is
// measured against the size of its uncancelled factors, 2 |V'| hbar |psi| |psi'|.
TEST(Fluxes, StationaryMomentumBalance) {
    for (const Case& c : random_cases(7, 100)) {
        const ScatteringSolution s = field(c);
        const double slope = s.barrier.interior_slope();
        const double l = s.b() - s.a();
        for (double frac : {0.2, 0.5, 0.8}) {
            const double x = s.a() + frac * l;
            const WavefunctionSample w = eval_wavefunction(s, x);
            const FluxReport here = currents_from_sample(w);
            const auto dp = oracle::finite_diff([&](double y) { return currents_at(s, y).j_p; }, x, 1e-5);
            const auto dp2 = oracle::finite_diff([&](double y) { return currents_at(s, y).j_p2; }, x, 1e-5);
            const double force = -slope * here.rho;
            const double force2 = -2.0 * slope * here.rho_p;
            EXPECT_LE(std::abs(dp.value - force) / std::abs(force), 1e-6)
                << "V0=" << c.v0 << " E=" << c.e << " gap=" << c.gap << " phi=" << c.phi;
            const double scale2 = 2.0 * std::abs(slope) * si::hbar * std::abs(w.psi) * std::abs(w.d1);
            EXPECT_LE(std::abs(dp2.value - force2) / scale2, 1e-6)
                << "V0=" << c.v0 << " E=" << c.e << " gap=" << c.gap << " phi=" << c.phi;
        }
    }
}

TEST(Fluxes, RectangleInteriorCurrentsAreFlat) {
    const auto s = solve(Energy::eV(1.0), BarrierSpec::asymmetric(Energy::eV(5.0), Energy::eV(1.5), Length::nm(0.6)));
    const double up = unit_p(s);
    const double up2 = up * si::hbar * s.k.per_meter;
    const FluxReport ref = currents_at(s, 0.1e-9);
    for (double x : {0.2e-9, 0.35e-9, 0.59e-9}) {
        const FluxReport f = currents_at(s, x);
        EXPECT_LE(std::abs(f.j_p - ref.j_p) / up, 1e-12);
        EXPECT_LE(std::abs(f.j_p2 - ref.j_p2) / up2, 1e-12);
    }
}

TEST(Fluxes, StepJumpRelations) {
    for (const Case& c : random_cases(9, 100)) {
        const JumpResiduals r = step_jump_residuals(field(c));
        EXPECT_LE(r.max(), 1e-9) << "V0=" << c.v0 << " E=" << c.e << " gap=" << c.gap << " phi=" << c.phi;
    }
    for (const Case& c : random_cases(10, 30)) {
        const auto s =
            solve(Energy::eV(c.e), BarrierSpec::asymmetric(Energy::eV(c.v0), Energy::eV(c.phi), Length::nm(c.gap)));
        EXPECT_LE(step_jump_residuals(s).max(), 1e-9);
    }
}

TEST(Fluxes, JumpRelationsDetectWrongAmplitude) {
    ScatteringSolution s =
        solve(Energy::eV(2.0), BarrierSpec::linear_field(Energy::eV(3.0), Energy::eV(1.0), Length::nm(0.3)));
    ASSERT_GT(s.T, 0.1);
    EXPECT_LE(step_jump_residuals(s).max(), 1e-9);
    s.t *= 1.01;
    EXPECT_GT(step_jump_residuals(s).max(), 1e-4);
}

TEST(Fluxes, TransferredFluxesMatchQuadrature) {
    int checked = 0;
    for (const Case& c : random_cases(13, 40)) {
        const ScatteringSolution s = field(c);
        // Im(psi* psi') cancels to rounding in very opaque barriers
        if (s.T < 1e-8) continue;
        ++checked;
        const TransferredFluxes f = transferred_fluxes(s);
        const oracle::FluxQuadrature q = oracle::transferred_by_quadrature(s);
        const double scale_p = unit_p(s) * s.T;
        EXPECT_LE(std::abs(f.j_p_t - q.j_p_t) / std::max(std::abs(q.j_p_t), scale_p), 1e-9);
        EXPECT_LE(std::abs(f.j_p2_t - q.j_p2_t) / std::abs(q.j_p2_t), 1e-9);
    }
    EXPECT_GT(checked, 10);

    for (const auto& spec : {BarrierSpec::symmetric(Energy::eV(5.0), Length::nm(0.5)),
                             BarrierSpec::asymmetric(Energy::eV(5.0), Energy::eV(2.0), Length::nm(0.5))}) {
        const ScatteringSolution s = solve(Energy::eV(1.0), spec);
        const TransferredFluxes f = transferred_fluxes(s);
        const oracle::FluxQuadrature q = oracle::transferred_by_quadrature(s);
        EXPECT_LE(std::abs(f.j_p_t - q.j_p_t) / std::abs(q.j_p_t), 1e-10);
        EXPECT_LE(std::abs(f.j_p2_t - q.j_p2_t) / std::abs(q.j_p2_t), 1e-10);
    }
}

TEST(Fluxes, SymmetricClosedForms) {
    const auto s = solve(Energy::eV(1.0), BarrierSpec::symmetric(Energy::eV(5.0), Length::nm(0.5)));
    const TransferredFluxes f = transferred_fluxes(s);
    const double k = s.k.per_meter;
    const double k0 = s.k0.per_meter;
    const double hbar = si::hbar;
    // per incident electron: <p> = hbar (k^2 - k0^2) T / 2k, <p^2> = -hbar^2 k0^2 T
    EXPECT_LE(std::abs(f.j_p_t / s.incident_flux - hbar * (k * k - k0 * k0) * s.T / (2.0 * k)) /
                  std::abs(hbar * (k * k - k0 * k0) * s.T / (2.0 * k)),
              1e-13);
    EXPECT_LE(std::abs(f.j_p2_t / s.incident_flux + hbar * hbar * k0 * k0 * s.T) / (hbar * hbar * k0 * k0 * s.T),
              1e-13);
    // inside a flat barrier the momentum-squared current is the transferred one
    EXPECT_LE(std::abs(currents_at(s, 0.25e-9).j_p2 - f.j_p2_t) / std::abs(f.j_p2_t), 1e-12);
    EXPECT_LT(currents_at(s, 0.25e-9).j_p2, 0.0);
}

TEST(Fluxes, AsymmetricWithoutOffsetMatchesSymmetric) {
    const auto sy = solve(Energy::eV(2.0), BarrierSpec::symmetric(Energy::eV(6.0), Length::nm(0.4)));
    const auto as = solve(Energy::eV(2.0), BarrierSpec::asymmetric(Energy::eV(6.0), Energy::eV(0.0), Length::nm(0.4)));
    EXPECT_DOUBLE_EQ(transferred_fluxes(sy).j_p_t, transferred_fluxes(as).j_p_t);
    EXPECT_DOUBLE_EQ(transferred_fluxes(sy).j_p2_t, transferred_fluxes(as).j_p2_t);
}

TEST(Fluxes, PlaneWaveDensities) {
    // free region beyond b: rho_p2 = hbar^2 kb^2 rho
    const auto s = solve(Energy::eV(1.0), BarrierSpec::asymmetric(Energy::eV(5.0), Energy::eV(1.0), Length::nm(0.3)));
    const FluxReport f = currents_at(s, 2e-9);
    const double kb = s.k_bar.per_meter;
    EXPECT_LE(std::abs(f.rho_p2 - si::hbar * si::hbar * kb * kb * f.rho) / f.rho_p2, 1e-12);
    EXPECT_LE(std::abs(f.rho_p - si::hbar * kb * f.rho) / f.rho_p, 1e-12);
}
