#pragma once

// Human-readable and JSON reports for single operating points.

#include <cmath>
#include <complex>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "tunnelnoise/fluxes.hpp"
#include "tunnelnoise/noise.hpp"
#include "tunnelnoise/scattering.hpp"
#include "tunnelnoise/sweep.hpp"
#include "tunnelnoise/uncertainty.hpp"

namespace tunnelnoise {

enum class Verdict { pass, fail, threshold };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::threshold: return "THRESHOLD";
    }
    return "?";
}

/// |lhs - 1| within this is reported as sitting on the threshold.
inline constexpr double kThresholdBand = 1e-12;

struct FeasibilityReport {
    NoiseBudget budget;
    ResonatorSpec resonator;
    Verdict verdict = Verdict::fail;
};

inline FeasibilityReport feasibility_report(double i0, const ResonatorSpec& res, const BarrierSpec& barrier, Energy e) {
    FeasibilityReport r;
    r.budget = noise_budget(i0, e, barrier, res);
    r.resonator = res;
    const double lhs = r.budget.feasibility_lhs;
    if (std::abs(lhs - 1.0) <= kThresholdBand) {
        r.verdict = Verdict::threshold;
    } else {
        r.verdict = lhs < 1.0 ? Verdict::pass : Verdict::fail;
    }
    return r;
}

inline void write_text(const FeasibilityReport& r, std::ostream& os) {
    const NoiseBudget& b = r.budget;
    auto line = [&](const char* name, double v, const char* unit) {
        os << name << " = " << format_number(v);
        if (*unit != '\0') os << " " << unit;
        os << "\n";
    };
    line("I0             ", b.tunnel_current, "A");
    line("E              ", b.electron_energy, "eV");
    line("V0             ", b.barrier.V0.in_eV(), "eV");
    line("gap            ", b.barrier.gap.in_nm(), "nm");
    line("mass           ", r.resonator.mass, "kg");
    line("f0             ", r.resonator.f0, "Hz");
    line("Q              ", r.resonator.quality, "");
    line("temperature    ", r.resonator.temperature, "K");
    line("S_fQ           ", b.s_fq, "N^2/Hz");
    line("S_fL           ", b.s_fl, "N^2/Hz");
    line("S_fL/S_fQ      ", b.psd_ratio, "");
    line("feasibility_lhs", b.feasibility_lhs, "");
    line("shot noise     ", b.shot_psd, "A/sqrt(Hz)");
    os << "verdict         = " << to_string(r.verdict) << " (quantum back-action dominant when feasibility_lhs < 1)\n";
}

inline nlohmann::ordered_json to_json(const FeasibilityReport& r) {
    const NoiseBudget& b = r.budget;
    nlohmann::ordered_json j;
    j["I0_A"] = b.tunnel_current;
    j["E_eV"] = b.electron_energy;
    j["V0_eV"] = b.barrier.V0.in_eV();
    j["gap_nm"] = b.barrier.gap.in_nm();
    j["mass_kg"] = r.resonator.mass;
    j["f0_Hz"] = r.resonator.f0;
    j["Q"] = r.resonator.quality;
    j["temperature_K"] = r.resonator.temperature;
    j["s_fq_N2_per_Hz"] = b.s_fq;
    j["s_fl_N2_per_Hz"] = b.s_fl;
    j["psd_ratio"] = b.psd_ratio;
    j["feasibility_lhs"] = b.feasibility_lhs;
    j["shot_psd_A_per_rtHz"] = b.shot_psd;
    j["verdict"] = to_string(r.verdict);
    return j;
}

/// Everything known about one operating point.
inline nlohmann::ordered_json solve_dump(Energy e, const BarrierSpec& spec, std::uint64_t n_electrons) {
    const ScatteringSolution s = solve(e, spec);
    const TransferredFluxes f = transferred_fluxes(s);
    const UncertaintyResult u = uncertainty_from_solution(s, n_electrons, DerivativeMethod::analytic);
    const GapDerivative d = dT_dl(s, DerivativeMethod::both);
    const JumpResiduals jr = step_jump_residuals(s);
    auto cx = [](std::complex<double> z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); };

    nlohmann::ordered_json j;
    j["barrier"] = to_string(spec.family);
    j["V0_eV"] = spec.V0.in_eV();
    j["phi_eV"] = spec.phi.in_eV();
    j["gap_nm"] = spec.gap.in_nm();
    j["E_eV"] = e.in_eV();
    j["k_per_m"] = s.k.per_meter;
    j["k_bar_per_m"] = s.k_bar.per_meter;
    j["k0_per_m"] = s.k0.per_meter;
    j["interior_basis"] = s.basis == InteriorBasis::airy ? "airy" : "exponential";
    j["t"] = cx(s.t);
    j["r"] = cx(s.r);
    j["c_plus"] = cx(s.c_plus);
    j["c_minus"] = cx(s.c_minus);
    j["T"] = s.T;
    j["R"] = s.R;
    j["log_T"] = s.log_T;
    j["matching_residual"] = matching_residual(s);
    j["incident_flux_per_s"] = s.incident_flux;
    j["j_p_t_N"] = f.j_p_t;
    j["j_p2_t"] = f.j_p2_t;
    j["v2"] = f.v2_description;
    j["jump_residual_max"] = jr.max();
    j["dT_dl_analytic_per_m"] = d.analytic;
    j["dT_dl_numeric_per_m"] = d.numeric;
    j["N"] = n_electrons;
    j["delta_l_m"] = u.delta_l;
    j["delta_p_kg_m_per_s"] = u.delta_p;
    j["product_hbar"] = u.product_over_hbar;
    return j;
}

}  // namespace tunnelnoise
