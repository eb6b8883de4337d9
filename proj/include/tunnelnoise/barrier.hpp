#pragma once

#include <string>

#include "tunnelnoise/errors.hpp"
#include "tunnelnoise/units.hpp"

namespace tunnelnoise {

enum class BarrierFamily { SymmetricRect, AsymmetricRect, LinearField };

inline std::string to_string(BarrierFamily f) {
    switch (f) {
        case BarrierFamily::SymmetricRect: return "sym";
        case BarrierFamily::AsymmetricRect: return "asym";
        case BarrierFamily::LinearField: return "field";
    }
    return "?";
}

/// One-dimensional barrier occupying [a, b = a + gap].
///
///   SymmetricRect   V = 0 | V0 | 0
///   AsymmetricRect  V = 0 | V0 | -phi
///   LinearField     V = 0 | V0 - phi (x - a)/gap | -phi
struct BarrierSpec {
    BarrierFamily family = BarrierFamily::SymmetricRect;
    Energy V0;
    Energy phi;
    Length gap;
    Length a;

    static BarrierSpec symmetric(Energy v0, Length gap, Length a = Length::meters(0.0)) {
        return {BarrierFamily::SymmetricRect, v0, Energy::joules(0.0), gap, a};
    }
    static BarrierSpec asymmetric(Energy v0, Energy phi, Length gap, Length a = Length::meters(0.0)) {
        return {BarrierFamily::AsymmetricRect, v0, phi, gap, a};
    }
    static BarrierSpec linear_field(Energy v0, Energy phi, Length gap, Length a = Length::meters(0.0)) {
        return {BarrierFamily::LinearField, v0, phi, gap, a};
    }

    double left_edge() const { return a.in_meters(); }
    double right_edge() const { return a.in_meters() + gap.in_meters(); }

    /// Same barrier with a different gap (used for d/dl).
    BarrierSpec with_gap(Length g) const {
        BarrierSpec out = *this;
        out.gap = g;
        return out;
    }

    void validate() const {
        if (!(gap.in_meters() > 0.0) || !std::isfinite(gap.in_meters())) {
            throw DomainError("barrier: gap must be positive and finite");
        }
        if (!(V0.in_joules() > 0.0) || !std::isfinite(V0.in_joules())) {
            throw DomainError("barrier: V0 must be positive and finite");
        }
        if (!(phi.in_joules() >= 0.0) || !std::isfinite(phi.in_joules())) {
            throw DomainError("barrier: phi must be non-negative and finite");
        }
        if (family == BarrierFamily::SymmetricRect && phi.in_joules() != 0.0) {
            throw DomainError("barrier: symmetric rectangular barrier requires phi = 0");
        }
        if (!std::isfinite(a.in_meters())) {
            throw DomainError("barrier: left edge must be finite");
        }
    }

    /// V(x) in joules; a <= x < b is inside the barrier.
    double potential(double x) const {
        const double xa = left_edge();
        const double xb = right_edge();
        if (x < xa) return 0.0;
        if (x >= xb) return family == BarrierFamily::SymmetricRect ? 0.0 : -phi.in_joules();
        if (family == BarrierFamily::LinearField) {
            return V0.in_joules() - phi.in_joules() * (x - xa) / gap.in_meters();
        }
        return V0.in_joules();
    }

    /// dV/dx inside the barrier (the step discontinuities are not included).
    double interior_slope() const {
        return family == BarrierFamily::LinearField ? -phi.in_joules() / gap.in_meters() : 0.0;
    }

    /// Height of the downward step at a (entering) and b (leaving): V(a+) - V(a-), V(b-) - V(b+).
    double step_at_a() const { return V0.in_joules(); }
    double step_at_b() const {
        switch (family) {
            case BarrierFamily::SymmetricRect: return V0.in_joules();
            case BarrierFamily::AsymmetricRect: return V0.in_joules() + phi.in_joules();
            case BarrierFamily::LinearField: return V0.in_joules();
        }
        return 0.0;
    }
};

}  // namespace tunnelnoise
