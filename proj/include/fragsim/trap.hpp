#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "fragsim/constants.hpp"
#include "fragsim/errors.hpp"

namespace fragsim {

// Physical description of the double-well trap and the gas. SI units except
// the barrier strength, which is naturally dimensionless in units of
// sqrt(hbar^3 omega_x / m).
//
// The harmonic part of the potential is m w^2 x^2, without the conventional
// 1/2; set conventional_half_factor to restore m w^2 x^2 / 2. All derived
// oscillator quantities use the effective conventional frequency sqrt(2) w
// (or w with the flag set).
struct TrapSpec {
    double mass_kg = 0.0;
    double scattering_length_m = 0.0;
    double omega_x = 0.0; // rad/s
    double omega_y = 0.0;
    double omega_z = 0.0;
    double barrier_width_m = 0.0;   // delta
    double barrier_strength = 0.0;  // alpha, units sqrt(hbar^3 omega_x / m)
    int particle_count = 0;         // even, >= 2
    bool conventional_half_factor = false;

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ValidationError(std::string("TrapSpec: ") + name + " must be positive");
        };
        positive(mass_kg, "mass_kg");
        positive(scattering_length_m, "scattering_length_m");
        positive(omega_x, "omega_x");
        positive(omega_y, "omega_y");
        positive(omega_z, "omega_z");
        positive(barrier_width_m, "barrier_width_m");
        if (barrier_strength < 0.0 || !std::isfinite(barrier_strength))
            throw ValidationError("TrapSpec: barrier_strength must be >= 0");
        if (particle_count < 2 || particle_count % 2 != 0)
            throw ValidationError("TrapSpec: particle_count must be even and >= 2");
    }
};

// Oscillator units of the x axis: hbar = m = omega_x = 1.
struct NaturalScale {
    double length_unit = 0.0; // a0 = sqrt(hbar / (m omega_x))  [m]
    double energy_unit = 0.0; // hbar omega_x                   [J]
    double time_unit = 0.0;   // 1 / omega_x                    [s]
    double interaction = 0.0; // g~ = 4 pi a_sc / a0, in hbar omega_x a0^3
};

inline NaturalScale to_natural(const TrapSpec& spec) {
    spec.validate();
    NaturalScale s;
    s.length_unit = std::sqrt(phys::hbar / (spec.mass_kg * spec.omega_x));
    s.energy_unit = phys::hbar * spec.omega_x;
    s.time_unit = 1.0 / spec.omega_x;
    s.interaction = 4.0 * std::numbers::pi * spec.scattering_length_m / s.length_unit;
    return s;
}

// U(x, y=0, z=0) in natural units. Built from x*x only, so U(-x) == U(x)
// bitwise.
struct PotentialProfile {
    double harmonic_coeff = 1.0;    // 1 as printed, 0.5 with the half-factor flag
    double barrier_amplitude = 0.0; // alpha / (sqrt(2 pi) delta), the peak height
    double barrier_width = 0.0;     // delta in a0
    double effective_frequency = 0.0; // conventional frequency of the harmonic term

    double operator()(double x) const {
        const double x2 = x * x;
        return harmonic_coeff * x2 +
               barrier_amplitude * std::exp(-x2 / (2.0 * barrier_width * barrier_width));
    }

    double harmonic(double x) const { return harmonic_coeff * x * x; }

    double barrier(double x) const {
        return barrier_amplitude * std::exp(-x * x / (2.0 * barrier_width * barrier_width));
    }
};

inline PotentialProfile potential_profile(const TrapSpec& spec) {
    const NaturalScale s = to_natural(spec);
    PotentialProfile p;
    p.harmonic_coeff = spec.conventional_half_factor ? 0.5 : 1.0;
    p.barrier_width = spec.barrier_width_m / s.length_unit;
    p.barrier_amplitude =
        spec.barrier_strength / (std::sqrt(2.0 * std::numbers::pi) * p.barrier_width);
    p.effective_frequency = spec.conventional_half_factor ? 1.0 : std::numbers::sqrt2;
    return p;
}

// Ground-state Gaussian of the transverse potential m w_t^2 y^2 (effective
// conventional frequency sqrt(2) w_t). quartic_integral is int g^4 dy, the
// factor that reduces one transverse axis of the 3D overlap integrals;
// zero_point_energy is the ground energy of that axis. Natural units of the
// x-axis oscillator.
struct TransverseFactor {
    double quartic_integral = 0.0;
    double zero_point_energy = 0.0;
};

inline TransverseFactor transverse_quartic_factor(double omega_t, const NaturalScale& scale,
                                                  bool conventional_half_factor = false) {
    if (!(omega_t > 0.0)) throw ValidationError("transverse_quartic_factor: omega_t must be positive");
    const double wt_natural = omega_t * scale.time_unit;
    const double w_eff = (conventional_half_factor ? 1.0 : std::numbers::sqrt2) * wt_natural;
    TransverseFactor f;
    f.quartic_integral = std::sqrt(w_eff / (2.0 * std::numbers::pi));
    f.zero_point_energy = 0.5 * w_eff;
    return f;
}

} // namespace fragsim
