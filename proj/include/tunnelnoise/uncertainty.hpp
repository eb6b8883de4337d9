#pragma once

// Position uncertainty inferred from binomial tunnelling statistics and the
// momentum uncertainty delivered to the test mass, for any solved barrier.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "tunnelnoise/errors.hpp"
#include "tunnelnoise/fluxes.hpp"
#include "tunnelnoise/oracle/finite_diff.hpp"
#include "tunnelnoise/scattering.hpp"

namespace tunnelnoise {

enum class DerivativeMethod { analytic, numeric, both };

inline std::string to_string(DerivativeMethod m) {
    switch (m) {
        case DerivativeMethod::analytic: return "analytic";
        case DerivativeMethod::numeric: return "numeric";
        case DerivativeMethod::both: return "both";
    }
    return "?";
}

/// Relative step (of the gap) for numeric d/dl.
inline constexpr double kGapRelStep = 1e-6;
/// Agreement required between analytic and numeric dT/dl.
inline constexpr double kGapDerivativeTolerance = 1e-6;

namespace uncertainty_detail {

// d ln T / dl for rectangular barriers:
//   T = (kb/k) 4 k0^2 k^2 / (A cosh^2 + B sinh^2),  A = k0^2 (k + kb)^2,  B = (k kb - k0^2)^2
// so d ln T / dl = -2 k0 (A + B) th / (A + B th^2) with th = tanh(k0 l).
inline double log_slope_rectangular(const ScatteringSolution& s) {
    const double k = s.k.per_meter;
    const double kb = s.k_bar.per_meter;
    const double k0 = s.k0.per_meter;
    const double A = k0 * k0 * (k + kb) * (k + kb);
    const double B = (k * kb - k0 * k0) * (k * kb - k0 * k0);
    const double th = std::tanh(k0 * s.barrier.gap.in_meters());
    return -2.0 * k0 * (A + B) * th / (A + B * th * th);
}

// d ln T / dl for the ramp, from t ~ alpha^{1/3} / D with
//   D = [c Ai'(za) - ik Ai(za)][c Bi'(zb) + ikb Bi(zb)] - [c Bi'(za) - ik Bi(za)][c Ai'(zb) + ikb Ai(zb)],
// c = alpha^{1/3}, and the gap dependences
//   dc/dl = -c/(3l),  dza/dl = 2 za/(3l),  dzb/dl = 2 zb/(3l)
// (za, zb scale as l^{2/3} at fixed E, V0, phi). Every product is evaluated
// with the common factor e^{s(za) - s(zb)} removed.
inline double log_slope_linear_field(const ScatteringSolution& s) {
    const cplx I(0.0, 1.0);
    const double k = s.k.per_meter;
    const double kb = s.k_bar.per_meter;
    const double l = s.barrier.gap.in_meters();
    const AiryFrame& f = s.airy;
    const double c = f.scale;
    const AiryQuad& qa = f.at_a.scaled;
    const AiryQuad& qb = f.at_b.scaled;
    const double e2 = std::exp(-2.0 * s.decay);

    const cplx xa_ai = c * qa.ai_prime - I * k * qa.ai;
    const cplx xa_bi = c * qa.bi_prime - I * k * qa.bi;
    const cplx yb_bi = c * qb.bi_prime + I * kb * qb.bi;
    const cplx yb_ai = c * qb.ai_prime + I * kb * qb.ai;
    const cplx d = e2 * xa_ai * yb_bi - xa_bi * yb_ai;

    const cplx pa_ai = c * f.z_a * qa.ai - I * k * qa.ai_prime;
    const cplx pa_bi = c * f.z_a * qa.bi - I * k * qa.bi_prime;
    const cplx d_za = e2 * pa_ai * yb_bi - pa_bi * yb_ai;

    const cplx qb_bi = c * f.z_b * qb.bi + I * kb * qb.bi_prime;
    const cplx qb_ai = c * f.z_b * qb.ai + I * kb * qb.ai_prime;
    const cplx d_zb = e2 * xa_ai * qb_bi - xa_bi * qb_ai;

    const cplx d_c = e2 * (qa.ai_prime * yb_bi + xa_ai * qb.bi_prime) - (qa.bi_prime * yb_ai + xa_bi * qb.ai_prime);

    const cplx dd_dl = d_za * (2.0 * f.z_a / (3.0 * l)) + d_zb * (2.0 * f.z_b / (3.0 * l)) + d_c * (-c / (3.0 * l));
    return 2.0 * (-1.0 / (3.0 * l) - (dd_dl / d).real());
}

inline double numeric_log_slope(const ScatteringSolution& s) {
    const Energy e = s.energy;
    const BarrierSpec spec = s.barrier;
    auto log_t = [&](double gap) { return solve(e, spec.with_gap(Length::meters(gap))).log_T; };
    return oracle::finite_diff(log_t, spec.gap.in_meters(), kGapRelStep).value;
}

}  // namespace uncertainty_detail

struct GapDerivative {
    double value = 0.0;
    DerivativeMethod method = DerivativeMethod::analytic;
    double analytic = std::numeric_limits<double>::quiet_NaN();
    double numeric = std::numeric_limits<double>::quiet_NaN();
};

/// dT/dl at fixed E, V0, phi with the left edge held fixed.
/// `both` returns the numeric value after checking the analytic one against it.
inline GapDerivative dT_dl(const ScatteringSolution& s, DerivativeMethod method = DerivativeMethod::numeric) {
    GapDerivative out;
    out.method = method;
    if (method != DerivativeMethod::numeric) {
        const double slope = s.basis == InteriorBasis::airy ? uncertainty_detail::log_slope_linear_field(s)
                                                             : uncertainty_detail::log_slope_rectangular(s);
        out.analytic = s.T * slope;
    }
    if (method != DerivativeMethod::analytic) {
        out.numeric = s.T * uncertainty_detail::numeric_log_slope(s);
    }
    if (method == DerivativeMethod::both) {
        const double scale = std::max(std::abs(out.analytic), std::abs(out.numeric));
        if (!(std::abs(out.analytic - out.numeric) <= kGapDerivativeTolerance * scale)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "dT_dl: analytic " << out.analytic << " and numeric " << out.numeric
                << " disagree beyond relative " << kGapDerivativeTolerance;
            throw ConsistencyError(msg.str());
        }
    }
    out.value = method == DerivativeMethod::analytic ? out.analytic : out.numeric;
    return out;
}

/// Delta l = sqrt(T R) / |dT/dl| / sqrt(N), valid to first order in the gap change.
inline double position_uncertainty(const ScatteringSolution& s, double dT_dl_value, std::uint64_t n_electrons) {
    if (n_electrons < 1) throw DomainError("position_uncertainty: N must be at least 1");
    if (dT_dl_value == 0.0 || !std::isfinite(dT_dl_value)) {
        throw DomainError(
            "position_uncertainty: dT/dl vanishes; a second-order expansion in the gap would be required");
    }
    return std::sqrt(s.T * s.R) / std::abs(dT_dl_value) / std::sqrt(static_cast<double>(n_electrons));
}

/// (Delta p)^2 = N [ -J_p2^t / J_in + (J_p^t / J_in)^2 ].
inline double momentum_uncertainty(const TransferredFluxes& flux, const ScatteringSolution& s,
                                   std::uint64_t n_electrons) {
    if (n_electrons < 1) throw DomainError("momentum_uncertainty: N must be at least 1");
    const double j_in = s.incident_flux;
    const double mean_p = flux.j_p_t / j_in;
    double bracket = -flux.j_p2_t / j_in + mean_p * mean_p;
    if (bracket < 0.0) {
        const double natural = si::hbar * si::hbar * s.k.per_meter * s.k.per_meter;
        if (bracket < -1e-12 * natural) {
            std::ostringstream msg;
            msg << "momentum_uncertainty: negative variance " << bracket / natural << " hbar^2 k^2";
            throw ConsistencyError(msg.str());
        }
        bracket = 0.0;
    }
    return std::sqrt(static_cast<double>(n_electrons) * bracket);
}

struct UncertaintyResult {
    double delta_l = 0.0;            // m
    double delta_p = 0.0;            // kg m/s
    double product_over_hbar = 0.0;  // Delta l Delta p / hbar
    std::uint64_t n_electrons = 1;
    double dT_dl = 0.0;  // 1/m
    DerivativeMethod dT_dl_method = DerivativeMethod::analytic;
    double T = 0.0;
    double R = 0.0;

    /// Same physics for a different electron count (Delta l ~ N^{-1/2}, Delta p ~ N^{1/2}).
    UncertaintyResult for_electrons(std::uint64_t n) const {
        UncertaintyResult out = *this;
        const double ratio = static_cast<double>(n) / static_cast<double>(n_electrons);
        out.n_electrons = n;
        out.delta_l = delta_l / std::sqrt(ratio);
        out.delta_p = delta_p * std::sqrt(ratio);
        return out;
    }
};

inline UncertaintyResult uncertainty_from_solution(const ScatteringSolution& s, std::uint64_t n_electrons = 1,
                                                   DerivativeMethod method = DerivativeMethod::analytic) {
    UncertaintyResult out;
    const GapDerivative d = dT_dl(s, method);
    out.n_electrons = n_electrons;
    out.dT_dl = d.value;
    out.dT_dl_method = method;
    out.T = s.T;
    out.R = s.R;
    out.delta_l = position_uncertainty(s, d.value, n_electrons);
    out.delta_p = momentum_uncertainty(transferred_fluxes(s), s, n_electrons);
    out.product_over_hbar = out.delta_l * out.delta_p / si::hbar;
    return out;
}

/// Full pipeline: solve, transferred fluxes, Delta l, Delta p, product.
inline UncertaintyResult uncertainty_product(Energy e, const BarrierSpec& spec, std::uint64_t n_electrons = 1,
                                             DerivativeMethod method = DerivativeMethod::analytic) {
    return uncertainty_from_solution(solve(e, spec), n_electrons, method);
}

}  // namespace tunnelnoise
