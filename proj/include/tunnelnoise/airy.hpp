#pragma once

// Airy functions Ai, Bi and their first derivatives for real arguments.
//
// Evaluation regimes:
//   |z| <= kTableLimit   Taylor re-expansion about the nearest node of a
//                        0.5-spaced table. The node at 0 is seeded with the
//                        closed-form origin values, so near the origin this is
//                        the Maclaurin series. The table itself is built once
//                        by stable propagation: Bi forward to +9, Ai backward
//                        from the asymptotic value at +9, both functions
//                        forward to -9.
//   |z| >  kTableLimit   Asymptotic expansions in 1/zeta (exponential form for
//                        z > 0, modulus/phase form for z < 0). At zeta >= 18
//                        the optimally truncated tail is below 1e-15.
//
// For z > 0 the "balanced" representation carries Ai e^{zeta} and Bi e^{-zeta}
// with zeta = (2/3) z^{3/2} reported separately, so arguments far beyond the
// double overflow threshold remain usable by the scattering solver.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>

#include "tunnelnoise/errors.hpp"

namespace tunnelnoise {

struct AiryQuad {
    double ai = 0.0;
    double ai_prime = 0.0;
    double bi = 0.0;
    double bi_prime = 0.0;
    double argument = 0.0;

    /// Ai Bi' - Ai' Bi; equals 1/pi for exact values (also in scaled form).
    double wronskian() const { return ai * bi_prime - ai_prime * bi; }
};

/// Ai, Ai' multiplied by e^{exponent}; Bi, Bi' multiplied by e^{-exponent}.
struct ScaledAiry {
    AiryQuad scaled;
    double exponent = 0.0;
};

namespace airy_detail {

inline constexpr double kTableLimit = 9.0;
inline constexpr double kTableStep = 0.5;
inline constexpr int kTableNodes = 37;  // -9, -8.5, ..., 9

inline constexpr double kAi0 = 0.355028053887817239260063186004;
inline constexpr double kAiPrime0 = -0.258819403792806798405183560189;
inline constexpr double kBi0 = 0.614926627446000735150922369094;
inline constexpr double kBiPrime0 = 0.448288357353826357914823710399;

/// Largest zeta for which e^{zeta} is still safely representable.
inline const double kMaxExponent = std::log(std::numeric_limits<double>::max()) - 10.0;

inline double zeta_of(double z) { return (2.0 / 3.0) * z * std::sqrt(z); }

struct ValueAndSlope {
    double value;
    double slope;
};

// Taylor expansion of a solution of w'' = z w about z0, evaluated at z0 + h.
// Coefficients follow a_{n+2} = (z0 a_n + a_{n-1}) / ((n+2)(n+1)).
inline ValueAndSlope taylor_step(double z0, ValueAndSlope w, double h) {
    double a_prev = 0.0;  // a_{n-1}
    double a_cur = w.value;
    double a_next = w.slope;
    double value = a_cur + a_next * h;
    double slope = a_next;
    double hn = h;  // h^{n+1} for the upcoming a_{n+2} term
    int quiet = 0;
    for (int n = 0; n < 200; ++n) {
        const double a_new = (z0 * a_cur + a_prev) / ((n + 2.0) * (n + 1.0));
        a_prev = a_cur;
        a_cur = a_next;
        a_next = a_new;
        const double dv = a_new * hn * h;          // a_{n+2} h^{n+2}
        const double ds = (n + 2.0) * a_new * hn;  // (n+2) a_{n+2} h^{n+1}
        value += dv;
        slope += ds;
        hn *= h;
        // Three consecutive negligible terms: the recurrence has period-3 zeros at z0 = 0.
        const bool small = std::abs(dv) <= 1e-19 * std::abs(value) &&
                           std::abs(ds) <= 1e-19 * std::abs(slope);
        quiet = small ? quiet + 1 : 0;
        if (n > 4 && quiet >= 3) break;
    }
    return {value, slope};
}

// Series sums for the z > 0 asymptotic forms: sum_k sign^k u_k / zeta^k and
// sum_k sign^k v_k / zeta^k, truncated at the smallest term.
struct AsymptoticSums {
    double u_sum;
    double v_sum;
};

inline AsymptoticSums asymptotic_sums(double zeta, double sign) {
    double u = 1.0;
    double u_sum = 1.0;
    double v_sum = 1.0;
    double power = 1.0;
    double last_term = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 80; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        power *= sign / zeta;
        const double tu = u * power;
        const double tv = v * power;
        const double mag = std::abs(tu) + std::abs(tv);
        if (mag > last_term) break;
        u_sum += tu;
        v_sum += tv;
        last_term = mag;
        if (mag < 1e-17) break;
    }
    return {u_sum, v_sum};
}

// Separate even/odd sums for the oscillatory z < 0 forms.
struct PhaseSums {
    double u_even, u_odd, v_even, v_odd;
};

inline PhaseSums phase_sums(double zeta) {
    PhaseSums s{1.0, 0.0, 1.0, 0.0};
    double u = 1.0;
    double power = 1.0;
    double last_term = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 80; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        power /= zeta;
        // (-1)^{floor(k/2)} sign pattern of the modulus/phase forms
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        const double tu = sign * u * power;
        const double tv = sign * v * power;
        const double mag = std::abs(tu) + std::abs(tv);
        if (mag > last_term) break;
        if (k % 2 == 0) {
            s.u_even += tu;
            s.v_even += tv;
        } else {
            s.u_odd += tu;
            s.v_odd += tv;
        }
        last_term = mag;
        if (mag < 1e-17) break;
    }
    return s;
}

/// Scaled quadruple for z > 0 from the exponential asymptotic forms.
inline AiryQuad asymptotic_positive_scaled(double z) {
    const double zeta = zeta_of(z);
    const double q = std::sqrt(std::sqrt(z));
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    const AsymptoticSums alt = asymptotic_sums(zeta, -1.0);
    const AsymptoticSums dir = asymptotic_sums(zeta, 1.0);
    AiryQuad out;
    out.argument = z;
    out.ai = 0.5 * inv_sqrt_pi / q * alt.u_sum;
    out.ai_prime = -0.5 * inv_sqrt_pi * q * alt.v_sum;
    out.bi = inv_sqrt_pi / q * dir.u_sum;
    out.bi_prime = inv_sqrt_pi * q * dir.v_sum;
    return out;
}

/// Unscaled quadruple for z < 0 from the modulus/phase asymptotic forms.
inline AiryQuad asymptotic_negative(double z) {
    const double x = -z;
    const double zeta = zeta_of(x);
    const double q = std::sqrt(std::sqrt(x));
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    const PhaseSums s = phase_sums(zeta);
    const double theta = zeta - 0.25 * std::numbers::pi;
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    AiryQuad out;
    out.argument = z;
    out.ai = inv_sqrt_pi / q * (c * s.u_even + sn * s.u_odd);
    out.bi = inv_sqrt_pi / q * (-sn * s.u_even + c * s.u_odd);
    out.ai_prime = inv_sqrt_pi * q * (sn * s.v_even - c * s.v_odd);
    out.bi_prime = inv_sqrt_pi * q * (c * s.v_even + sn * s.v_odd);
    return out;
}

struct TableNode {
    ValueAndSlope ai;
    ValueAndSlope bi;
};

inline double node_argument(int j) { return -kTableLimit + kTableStep * j; }

inline std::array<TableNode, kTableNodes> build_table() {
    std::array<TableNode, kTableNodes> t{};
    const int origin = kTableNodes / 2;
    t[origin] = {{kAi0, kAiPrime0}, {kBi0, kBiPrime0}};
    // Oscillatory side: both solutions are bounded, forward propagation is neutral.
    for (int j = origin; j > 0; --j) {
        const double z0 = node_argument(j);
        t[j - 1].ai = taylor_step(z0, t[j].ai, -kTableStep);
        t[j - 1].bi = taylor_step(z0, t[j].bi, -kTableStep);
    }
    // Bi dominates for z > 0: propagate outward.
    for (int j = origin; j < kTableNodes - 1; ++j) {
        t[j + 1].bi = taylor_step(node_argument(j), t[j].bi, kTableStep);
    }
    // Ai is recessive for z > 0: seed at the far end and propagate inward.
    {
        const double z_end = node_argument(kTableNodes - 1);
        const AiryQuad s = asymptotic_positive_scaled(z_end);
        const double decay = std::exp(-zeta_of(z_end));
        t[kTableNodes - 1].ai = {s.ai * decay, s.ai_prime * decay};
        for (int j = kTableNodes - 1; j > origin + 1; --j) {
            t[j - 1].ai = taylor_step(node_argument(j), t[j].ai, -kTableStep);
        }
    }
    return t;
}

inline const std::array<TableNode, kTableNodes>& table() {
    static const std::array<TableNode, kTableNodes> instance = build_table();
    return instance;
}

inline AiryQuad from_table(double z) {
    const int j = static_cast<int>(std::lround((z + kTableLimit) / kTableStep));
    const double z0 = node_argument(j);
    const double h = z - z0;
    const TableNode& node = table()[static_cast<std::size_t>(j)];
    const ValueAndSlope ai = taylor_step(z0, node.ai, h);
    const ValueAndSlope bi = taylor_step(z0, node.bi, h);
    return {ai.value, ai.slope, bi.value, bi.slope, z};
}

/// Balanced evaluation valid for every finite z: exponent is zeta for z > 0, 0 otherwise.
inline ScaledAiry balanced(double z) {
    if (z > kTableLimit) {
        return {asymptotic_positive_scaled(z), zeta_of(z)};
    }
    if (z < -kTableLimit) {
        return {asymptotic_negative(z), 0.0};
    }
    AiryQuad q = from_table(z);
    if (z <= 0.0) {
        return {q, 0.0};
    }
    const double zeta = zeta_of(z);
    const double grow = std::exp(zeta);
    const double shrink = std::exp(-zeta);
    q.ai *= grow;
    q.ai_prime *= grow;
    q.bi *= shrink;
    q.bi_prime *= shrink;
    return {q, zeta};
}

}  // namespace airy_detail

/// s(z_hi) - s(z_lo) for s(z) = (2/3) max(z, 0)^{3/2}, given d = z_hi - z_lo >= 0
/// computed independently. Avoids cancellation when both arguments are large.
inline double zeta_gap(double z_hi, double z_lo, double d) {
    if (z_hi <= 0.0) return 0.0;
    if (z_lo <= 0.0) return airy_detail::zeta_of(z_hi);
    const double rh = std::sqrt(z_hi);
    const double rl = std::sqrt(z_lo);
    return (2.0 / 3.0) * d * (z_hi + rh * rl + z_lo) / (rh + rl);
}

/// Ai, Ai', Bi, Bi' at z. Throws RangeError when e^{(2/3) z^{3/2}} would overflow.
inline AiryQuad airy_all(double z) {
    if (!std::isfinite(z)) {
        throw DomainError("airy_all: non-finite argument");
    }
    if (z > 0.0 && airy_detail::zeta_of(z) > airy_detail::kMaxExponent) {
        std::ostringstream msg;
        msg << "airy_all: argument z = " << z << " has exponential scale (2/3) z^(3/2) = "
            << airy_detail::zeta_of(z) << " beyond the overflow limit "
            << airy_detail::kMaxExponent << "; use airy_scaled";
        throw RangeError(msg.str());
    }
    const ScaledAiry b = airy_detail::balanced(z);
    if (b.exponent == 0.0) return b.scaled;
    const double grow = std::exp(b.exponent);
    const double shrink = std::exp(-b.exponent);
    AiryQuad q = b.scaled;
    q.ai *= shrink;
    q.ai_prime *= shrink;
    q.bi *= grow;
    q.bi_prime *= grow;
    return q;
}

/// Overflow-safe form for z > 0: Ai e^{zeta}, Ai' e^{zeta}, Bi e^{-zeta}, Bi' e^{-zeta}.
inline ScaledAiry airy_scaled(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("airy_scaled: argument must be positive and finite");
    }
    return airy_detail::balanced(z);
}

}  // namespace tunnelnoise
