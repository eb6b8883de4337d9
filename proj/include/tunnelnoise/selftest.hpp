#pragma once

// Quick invariant suite behind `tunnelnoise selftest`.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "tunnelnoise/airy.hpp"
#include "tunnelnoise/fluxes.hpp"
#include "tunnelnoise/noise.hpp"
#include "tunnelnoise/oracle/transfer_matrix.hpp"
#include "tunnelnoise/scattering.hpp"
#include "tunnelnoise/uncertainty.hpp"

namespace tunnelnoise {

inline bool run_selftest(std::ostream& os) {
    bool all = true;
    auto report = [&](const std::string& name, bool ok, double measured) {
        all = all && ok;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", measured);
        os << (ok ? "PASS " : "FAIL ") << name << " (" << buf << ")\n";
    };
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double w = 0.0;
    for (int i = 0; i <= 600; ++i) {
        const double z = -30.0 + 0.1 * i;
        const ScaledAiry q = airy_detail::balanced(z);
        w = std::max(w, std::abs(q.scaled.wronskian() * std::numbers::pi - 1.0));
    }
    report("airy wronskian on [-30, 30]", w <= 1e-10, w);

    double sym = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double v0 = 1.0 + 9.0 * unit(rng);
        const double e = v0 * (0.05 + 0.9 * unit(rng));
        const double gap = 0.1 + 1.9 * unit(rng);
        const UncertaintyResult u =
            uncertainty_product(Energy::eV(e), BarrierSpec::symmetric(Energy::eV(v0), Length::nm(gap)));
        sym = std::max(sym, std::abs(u.product_over_hbar / 0.5 - 1.0));
    }
    report("symmetric product = 1/2", sym <= 1e-10, sym);

    const UncertaintyResult zb = uncertainty_product(
        Energy::eV(1.0), BarrierSpec::linear_field(Energy::eV(5.0), Energy::eV(1e-6), Length::nm(1.0)));
    const double zb_dev = std::abs(zb.product_over_hbar / 0.5 - 1.0);
    report("zero-bias product = 1/2", zb_dev <= 1e-4, zb_dev);

    double tm = 0.0, jumps = 0.0, deriv = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double phi = 0.1 + 4.8 * unit(rng);
        const double gap = 0.2 + 1.8 * unit(rng);
        const BarrierSpec spec = BarrierSpec::linear_field(Energy::eV(5.0), Energy::eV(phi), Length::nm(gap));
        const ScatteringSolution s = solve(Energy::eV(1.0), spec);
        const oracle::TransferResult ref = oracle::transfer_matrix_richardson(spec, Energy::eV(1.0).in_joules(), 1000);
        tm = std::max(tm, std::abs(ref.T / s.T - 1.0));
        jumps = std::max(jumps, step_jump_residuals(s).max());
        const GapDerivative d = dT_dl(s, DerivativeMethod::numeric);
        const GapDerivative a = dT_dl(s, DerivativeMethod::analytic);
        deriv = std::max(deriv, std::abs(a.value / d.value - 1.0));
    }
    report("field T vs transfer matrix", tm <= 1e-8, tm);
    report("field jump relations", jumps <= 1e-9, jumps);
    report("field dT/dl analytic vs numeric", deriv <= 1e-6, deriv);

    const double lhs = feasibility_lhs(1e-6, ResonatorSpec{});
    report("feasibility normalization", std::abs(lhs - 1.0) <= 1e-12, std::abs(lhs - 1.0));
    const double shot = shot_noise_current_psd(1e-6);
    report("shot noise at 1 uA", std::abs(shot - 5.7e-13) < 0.05e-13, shot);
    return all;
}

}  // namespace tunnelnoise
