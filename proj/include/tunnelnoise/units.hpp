#pragma once

// Physical constants and semantic scalar wrappers. Everything below the API
// boundary is SI; eV and nm only appear in the named constructors/accessors.

#include <cmath>
#include <string>

#include "tunnelnoise/errors.hpp"

namespace tunnelnoise {

struct PhysicalConstants {
    double hbar;               // J s
    double electron_mass;      // kg
    double elementary_charge;  // C
    double boltzmann;          // J/K
};

// CODATA 2018 (e, h, k_B exact by SI definition).
inline constexpr PhysicalConstants constants{
    1.054571817e-34,
    9.1093837015e-31,
    1.602176634e-19,
    1.380649e-23,
};

namespace si {
inline constexpr double hbar = constants.hbar;
inline constexpr double electron_mass = constants.electron_mass;
inline constexpr double elementary_charge = constants.elementary_charge;
inline constexpr double boltzmann = constants.boltzmann;
/// 2m/hbar^2 in 1/(J m^2): converts an energy into a squared wavenumber.
inline constexpr double two_m_over_hbar2 = 2.0 * electron_mass / (hbar * hbar);
inline constexpr double nanometer = 1e-9;
}  // namespace si

inline constexpr double ev_to_joule(double ev) { return ev * si::elementary_charge; }
inline constexpr double joule_to_ev(double j) { return j / si::elementary_charge; }

class Energy {
public:
    constexpr Energy() = default;
    static constexpr Energy joules(double v) { return Energy(v); }
    static constexpr Energy eV(double v) { return Energy(ev_to_joule(v)); }

    constexpr double in_joules() const { return joules_; }
    constexpr double in_eV() const { return joule_to_ev(joules_); }

    friend constexpr Energy operator+(Energy a, Energy b) { return Energy(a.joules_ + b.joules_); }
    friend constexpr Energy operator-(Energy a, Energy b) { return Energy(a.joules_ - b.joules_); }
    friend constexpr auto operator<=>(Energy, Energy) = default;

private:
    constexpr explicit Energy(double j) : joules_(j) {}
    double joules_ = 0.0;
};

class Length {
public:
    constexpr Length() = default;
    static constexpr Length meters(double v) { return Length(v); }
    static constexpr Length nm(double v) { return Length(v * si::nanometer); }

    constexpr double in_meters() const { return meters_; }
    constexpr double in_nm() const { return meters_ / si::nanometer; }

    friend constexpr Length operator+(Length a, Length b) { return Length(a.meters_ + b.meters_); }
    friend constexpr auto operator<=>(Length, Length) = default;

private:
    constexpr explicit Length(double m) : meters_(m) {}
    double meters_ = 0.0;
};

struct Wavenumber {
    double per_meter = 0.0;
    friend constexpr auto operator<=>(Wavenumber, Wavenumber) = default;
};

namespace detail {
// Raw-SI kernels used in hot paths.
inline double wavenumber_of(double kinetic_joules) {
    return std::sqrt(si::two_m_over_hbar2 * kinetic_joules);
}
}  // namespace detail

/// k = sqrt(2 m E) / hbar for a free electron of kinetic energy E.
inline Wavenumber wavenumber_free(Energy e) {
    if (!(e.in_joules() > 0.0) || !std::isfinite(e.in_joules())) {
        throw DomainError("wavenumber_free: energy must be positive and finite, got " +
                          std::to_string(e.in_eV()) + " eV");
    }
    return {detail::wavenumber_of(e.in_joules())};
}

/// k0 = sqrt(2 m (V0 - E)) / hbar, the decay constant under a barrier of height V0.
inline Wavenumber wavenumber_evanescent(Energy v0, Energy e) {
    const double gap = v0.in_joules() - e.in_joules();
    if (!(gap > 0.0) || !std::isfinite(gap)) {
        throw DomainError("wavenumber_evanescent: requires V0 > E (V0 = " +
                          std::to_string(v0.in_eV()) + " eV, E = " + std::to_string(e.in_eV()) +
                          " eV); above-barrier transport is not modelled");
    }
    return {detail::wavenumber_of(gap)};
}

}  // namespace tunnelnoise
