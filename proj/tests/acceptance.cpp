// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Optional argv[1]: path of the tunnelnoise executable, used for the
// byte-identical CSV check; without it only the in-process check runs.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tunnelnoise/airy.hpp"
#include "tunnelnoise/fluxes.hpp"
#include "tunnelnoise/noise.hpp"
#include "tunnelnoise/oracle/finite_diff.hpp"
#include "tunnelnoise/oracle/transfer_matrix.hpp"
#include "tunnelnoise/sweep.hpp"
#include "tunnelnoise/uncertainty.hpp"

using namespace tunnelnoise;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Params {
    double v0, e, gap, phi;
};

std::vector<Params> random_params(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Params> out;
    for (int i = 0; i < n; ++i) {
        const double v0 = 1.0 + 9.0 * u(rng);
        const double e = v0 * (0.05 + 0.9 * u(rng));
        const double gap = 0.1 + 1.9 * u(rng);
        out.push_back({v0, e, gap, 0.01 + 4.99 * u(rng)});
    }
    return out;
}

BarrierSpec make(BarrierFamily f, const Params& p) {
    switch (f) {
        case BarrierFamily::SymmetricRect: return BarrierSpec::symmetric(Energy::eV(p.v0), Length::nm(p.gap));
        case BarrierFamily::AsymmetricRect:
            return BarrierSpec::asymmetric(Energy::eV(p.v0), Energy::eV(p.phi), Length::nm(p.gap));
        case BarrierFamily::LinearField:
            return BarrierSpec::linear_field(Energy::eV(p.v0), Energy::eV(p.phi), Length::nm(p.gap));
    }
    return {};
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

constexpr BarrierFamily kFamilies[] = {BarrierFamily::SymmetricRect, BarrierFamily::AsymmetricRect,
                                       BarrierFamily::LinearField};

Outcome heisenberg_identity() {
    double worst = 0.0;
    for (const Params& p : random_params(1001, 1000)) {
        const auto u = uncertainty_product(Energy::eV(p.e), make(BarrierFamily::SymmetricRect, p));
        worst = std::max(worst, std::abs(u.product_over_hbar - 0.5) / 0.5);
    }
    return {worst <= 1e-10, "1000 symmetric cases, worst |product - 1/2|/(1/2) = " + sci(worst) + " (limit 1e-10)"};
}

Outcome zero_bias_limit() {
    const auto u = uncertainty_product(
        Energy::eV(1.0), BarrierSpec::linear_field(Energy::eV(5.0), Energy::eV(1e-6), Length::nm(1.0)));
    const double dev = std::abs(u.product_over_hbar - 0.5) / 0.5;
    std::ostringstream d;
    d.precision(12);
    d << "phi = 1e-6 eV: product = " << u.product_over_hbar << " hbar, relative deviation " << sci(dev)
      << " (limit 1e-4)";
    return {dev <= 1e-4, d.str()};
}

Outcome monotonicity() {
    const SweepConfig c;  // field, V0 = 5 eV, E = 1 eV, gap = 1 nm, phi in [0, 5] eV, 200 points
    const SweepTable t = run_sweep(c);
    const bool dp = t.summary.delta_p_nondecreasing.value_or(false);
    const bool prod = t.summary.product_nondecreasing.value_or(false);
    std::size_t peak = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].product_over_hbar > t.rows[peak].product_over_hbar) peak = i;
    }
    std::ostringstream d;
    d.precision(6);
    d << t.summary.computed << "/" << t.summary.grid_points << " points; delta_p nondecreasing: "
      << (dp ? "yes" : "no") << "; product nondecreasing: " << (prod ? "yes" : "no");
    if (!t.rows.empty()) {
        d << " (product " << t.rows.front().product_over_hbar << " at phi = 0, peak " << t.rows[peak].product_over_hbar
          << " at phi = " << t.rows[peak].value << " eV, " << t.rows.back().product_over_hbar << " at phi = "
          << t.rows.back().value << " eV)";
    }
    return {dp && prod && t.summary.skipped == 0, d.str()};
}

Outcome oracle_equivalence() {
    double worst = 0.0;
    for (BarrierFamily f : kFamilies) {
        for (const Params& p : random_params(2000 + static_cast<int>(f), 100)) {
            const BarrierSpec spec = make(f, p);
            const auto s = solve(Energy::eV(p.e), spec);
            const auto ref = oracle::transfer_matrix_richardson(spec, Energy::eV(p.e).in_joules(), 1000);
            worst = std::max(worst, std::abs(std::expm1(s.log_T - ref.log_T)));
        }
    }
    return {worst <= 1e-8, "300 cases, worst |T - T_tm|/T_tm = " + sci(worst) + " (limit 1e-8)"};
}

Outcome flux_identities() {
    double worst_j = 0.0, worst_bal = 0.0, worst_jump = 0.0;
    for (const Params& p : random_params(3000, 100)) {
        const auto s = solve(Energy::eV(p.e), make(BarrierFamily::LinearField, p));
        const double l = s.b() - s.a();
        for (double frac : {-0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5}) {
            const double j = currents_at(s, s.a() + frac * l).j;
            worst_j = std::max(worst_j, std::abs(j - s.T * s.incident_flux) / s.incident_flux);
        }
        const double slope = s.barrier.interior_slope();
        for (double frac : {0.25, 0.5, 0.75}) {
            const double x = s.a() + frac * l;
            const WavefunctionSample w = eval_wavefunction(s, x);
            const FluxReport f = currents_from_sample(w);
            const auto dp = oracle::finite_diff([&](double y) { return currents_at(s, y).j_p; }, x, 1e-5);
            const auto dp2 = oracle::finite_diff([&](double y) { return currents_at(s, y).j_p2; }, x, 1e-5);
            const double force = -slope * f.rho;
            // rho_p is a small imaginary part of large factors; compare against their size
            const double scale2 = 2.0 * std::abs(slope) * si::hbar * std::abs(w.psi) * std::abs(w.d1);
            worst_bal = std::max(worst_bal, std::abs(dp.value - force) / std::abs(force));
            worst_bal = std::max(worst_bal, std::abs(dp2.value + 2.0 * slope * f.rho_p) / scale2);
        }
        worst_jump = std::max(worst_jump, step_jump_residuals(s).max());
    }
    const bool ok = worst_j <= 1e-12 && worst_bal <= 1e-6 && worst_jump <= 1e-9;
    return {ok, "100 field cases: J spread " + sci(worst_j) + " (1e-12), balance " + sci(worst_bal) +
                    " (1e-6), jumps " + sci(worst_jump) + " (1e-9)"};
}

Outcome airy_quality() {
    double worst_w = 0.0;
    for (int i = 0; i <= 6000; ++i) {
        const double z = -30.0 + 0.01 * i;
        worst_w = std::max(worst_w, std::abs(airy_all(z).wronskian() * std::numbers::pi - 1.0));
    }
    const AiryQuad q = airy_all(0.0);
    const double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    const double aip0 = -1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0));
    const double bi0 = 1.0 / (std::pow(3.0, 1.0 / 6.0) * std::tgamma(2.0 / 3.0));
    const double bip0 = std::pow(3.0, 1.0 / 6.0) / std::tgamma(1.0 / 3.0);
    const double worst_o = std::max({std::abs(q.ai / ai0 - 1.0), std::abs(q.ai_prime / aip0 - 1.0),
                                     std::abs(q.bi / bi0 - 1.0), std::abs(q.bi_prime / bip0 - 1.0)});
    return {worst_w <= 1e-10 && worst_o <= 1e-12,
            "Wronskian on [-30, 30]: " + sci(worst_w) + " (1e-10); origin values: " + sci(worst_o) + " (1e-12)"};
}

Outcome shot_noise_figure() {
    const double s = shot_noise_current_psd(1e-6);
    const double two_sig = std::round(s / 1e-14) * 1e-14;
    return {std::abs(two_sig - 5.7e-13) < 1e-15, "sqrt(2 e 1uA) = " + sci(s) + " A/sqrt(Hz)"};
}

Outcome feasibility_normalization() {
    const double lhs = feasibility_lhs(1e-6, ResonatorSpec{});
    return {std::abs(lhs - 1.0) <= 1e-12, "nominal feasibility_lhs - 1 = " + sci(lhs - 1.0) + " (1e-12)"};
}

Outcome derivative_consistency() {
    double worst = 0.0;
    for (BarrierFamily f : kFamilies) {
        for (const Params& p : random_params(4000 + static_cast<int>(f), 100)) {
            const auto s = solve(Energy::eV(p.e), make(f, p));
            const double a = dT_dl(s, DerivativeMethod::analytic).value;
            const double n = dT_dl(s, DerivativeMethod::numeric).value;
            worst = std::max(worst, std::abs(a - n) / std::abs(n));
        }
    }
    return {worst <= 1e-6, "300 cases, worst |analytic - numeric|/|numeric| = " + sci(worst) + " (limit 1e-6)"};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism(const char* cli) {
    SweepConfig c;
    std::ostringstream a, b;
    write_csv(run_sweep(c), a);
    write_csv(run_sweep(c), b);
    bool ok = a.str() == b.str();
    std::string detail = std::string("in-process CSV identical: ") + (ok ? "yes" : "no");

    const SweepTable t = run_sweep(c);
    const auto back = nlohmann::ordered_json::parse(to_json(t).dump());
    bool exact = back["rows"].size() == t.rows.size();
    for (std::size_t i = 0; exact && i < t.rows.size(); ++i) {
        exact = std::bit_cast<std::uint64_t>(back["rows"][i][0].get<double>()) ==
                std::bit_cast<std::uint64_t>(t.rows[i].value);
        for (std::size_t j = 0; exact && j < t.rows[i].columns.size(); ++j) {
            exact = std::bit_cast<std::uint64_t>(back["rows"][i][j + 1].get<double>()) ==
                    std::bit_cast<std::uint64_t>(t.rows[i].columns[j]);
        }
    }
    ok = ok && exact;
    detail += std::string("; JSON round trip bit-exact: ") + (exact ? "yes" : "no");

    if (cli != nullptr) {
        const auto dir = std::filesystem::temp_directory_path() / ("tunnelnoise_acc_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        const auto f1 = dir / "run1.csv";
        const auto f2 = dir / "run2.csv";
        const std::string base = std::string("\"") + cli + "\" sweep --sweep phi --min 0 --max 5 --steps 200 --out ";
        const int r1 = std::system((base + "\"" + f1.string() + "\"").c_str());
        const int r2 = std::system((base + "\"" + f2.string() + "\"").c_str());
        const std::string s1 = slurp(f1);
        const bool same = r1 == 0 && r2 == 0 && !s1.empty() && s1 == slurp(f2);
        std::filesystem::remove_all(dir);
        ok = ok && same;
        detail += std::string("; CLI runs byte-identical: ") + (same ? "yes" : "no");
    }
    return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        double time_limit_s;  // 0: no limit
        std::function<Outcome()> run;
    };
    const char* cli = argc > 1 ? argv[1] : nullptr;
    const std::vector<Criterion> criteria{
        {1, "Heisenberg identity", 5.0, heisenberg_identity},
        {2, "zero-bias limit", 1.0, zero_bias_limit},
        {3, "monotonicity", 10.0, monotonicity},
        {4, "oracle equivalence", 30.0, oracle_equivalence},
        {5, "flux identities", 30.0, flux_identities},
        {6, "Airy quality", 0.0, airy_quality},
        {7, "shot-noise figure", 0.0, shot_noise_figure},
        {8, "feasibility normalization", 0.0, feasibility_normalization},
        {9, "derivative consistency", 0.0, derivative_consistency},
        {10, "CLI determinism", 0.0, [cli] { return cli_determinism(cli); }},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass;
        std::string timing = sci(secs) + " s";
        if (c.time_limit_s > 0.0) {
            timing += " (limit " + std::to_string(static_cast<int>(c.time_limit_s)) + " s)";
            pass = pass && secs < c.time_limit_s;
        }
        if (!pass) ++failed;
        std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << ": " << c.name << ": " << o.detail
                  << "; " << timing << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion/criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
