#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "fragsim/constants.hpp"
#include "fragsim/quadrature.hpp"
#include "fragsim/trap.hpp"

using namespace fragsim;

namespace {

TrapSpec sodium_spec(double alpha = 0.0) {
    TrapSpec s;
    s.mass_kg = 23.0 * phys::atomic_mass_unit;
    s.scattering_length_m = 3e-9;
    s.omega_x = 2.0 * std::numbers::pi * 19.0;
    s.omega_y = s.omega_x;
    s.omega_z = s.omega_x;
    s.barrier_width_m = 6e-6;
    s.barrier_strength = alpha;
    s.particle_count = 100;
    return s;
}

} // namespace

TEST_CASE("natural units of the sodium trap") {
    const NaturalScale n = to_natural(sodium_spec());
    // sqrt(hbar / (m omega_x)) with CODATA constants
    CHECK(n.length_unit == Catch::Approx(4.809311186480972e-06).epsilon(1e-12));
    CHECK(n.interaction == Catch::Approx(7.838775737583825e-03).epsilon(1e-12));
    CHECK(n.interaction == Catch::Approx(7.9e-3).epsilon(0.02));
    CHECK(n.time_unit == Catch::Approx(1.0 / (2.0 * std::numbers::pi * 19.0)).epsilon(1e-14));
}

TEST_CASE("pure-natural spec is the identity scaling") {
    TrapSpec s = sodium_spec();
    s.mass_kg = phys::hbar;
    s.omega_x = 1.0;
    const NaturalScale n = to_natural(s);
    CHECK(n.length_unit == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(n.time_unit == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(n.energy_unit / phys::hbar == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("round-trip unit conversion") {
    const TrapSpec s = sodium_spec(15.0);
    const NaturalScale n = to_natural(s);
    const double delta_nat = s.barrier_width_m / n.length_unit;
    CHECK(delta_nat * n.length_unit == Catch::Approx(s.barrier_width_m).epsilon(1e-12));
    const double e_nat = 2.5; // arbitrary energy
    CHECK(e_nat * n.energy_unit / n.energy_unit == Catch::Approx(e_nat).epsilon(1e-12));
    const double asc_back = n.interaction * n.length_unit / (4.0 * std::numbers::pi);
    CHECK(asc_back == Catch::Approx(s.scattering_length_m).epsilon(1e-12));
}

TEST_CASE("validation names the offending field") {
    TrapSpec s = sodium_spec();
    s.omega_y = -1.0;
    try {
        s.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("omega_y") != std::string::npos);
    }
    s = sodium_spec();
    s.particle_count = 99;
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("potential profile follows the printed form") {
    SECTION("no barrier is the bare quadratic") {
        const PotentialProfile u = potential_profile(sodium_spec(0.0));
        CHECK(u(1.0) - u(0.0) == Catch::Approx(1.0).epsilon(1e-14));
        CHECK(u(0.0) == 0.0);
    }
    SECTION("half-factor flag restores the conventional harmonic term") {
        TrapSpec s = sodium_spec(0.0);
        s.conventional_half_factor = true;
        const PotentialProfile u = potential_profile(s);
        CHECK(u(1.0) - u(0.0) == Catch::Approx(0.5).epsilon(1e-14));
        CHECK(u.effective_frequency == Catch::Approx(1.0));
    }
    SECTION("barrier peak height is alpha / (sqrt(2 pi) delta)") {
        TrapSpec s = sodium_spec(15.0);
        const NaturalScale n = to_natural(s);
        s.barrier_width_m = 1.25 * n.length_unit; // delta = 1.25 a0
        const PotentialProfile u = potential_profile(s);
        CHECK(u(0.0) == Catch::Approx(4.787307364817193).epsilon(1e-12));
        CHECK(u.barrier_amplitude ==
              Catch::Approx(15.0 / (std::sqrt(2.0 * std::numbers::pi) * 1.25)).epsilon(1e-14));
    }
    SECTION("evenness is bitwise") {
        const PotentialProfile u = potential_profile(sodium_spec(30.0));
        for (double x : {0.1, 0.73, 1.9, 4.4, 12.0})
            CHECK(u(x) == u(-x));
    }
    SECTION("monotone growth beyond the barrier region") {
        const PotentialProfile u = potential_profile(sodium_spec(45.0));
        double prev = u(6.0);
        for (double x = 6.5; x < 30.0; x += 0.5) {
            CHECK(u(x) > prev);
            prev = u(x);
        }
    }
}

TEST_CASE("transverse quartic factor") {
    const TrapSpec s = sodium_spec();
    const NaturalScale n = to_natural(s);
    SECTION("isotropic closed form") {
        const TransverseFactor f = transverse_quartic_factor(s.omega_x, n);
        CHECK(f.quartic_integral == Catch::Approx(0.47442499832879437).epsilon(1e-13));
        CHECK(f.quartic_integral ==
              Catch::Approx(std::sqrt(std::numbers::sqrt2 / (2.0 * std::numbers::pi)))
                  .epsilon(1e-14));
        CHECK(f.zero_point_energy == Catch::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-14));
    }
    SECTION("scales as sqrt(omega_t)") {
        const TransverseFactor f1 = transverse_quartic_factor(s.omega_x, n);
        const TransverseFactor f4 = transverse_quartic_factor(4.0 * s.omega_x, n);
        CHECK(f4.quartic_integral / f1.quartic_integral == Catch::Approx(2.0).epsilon(1e-13));
    }
    SECTION("matches quadrature of the analytic Gaussian") {
        // ground state of the printed potential m w^2 y^2, w_eff = sqrt(2) w
        const double w_eff = std::numbers::sqrt2;
        const int np = 8001;
        const double L = 12.0, h = 2.0 * L / (np - 1);
        std::vector<double> g4(np), g2(np);
        for (int i = 0; i < np; ++i) {
            const double y = -L + i * h;
            const double g = std::pow(w_eff / std::numbers::pi, 0.25) *
                             std::exp(-0.5 * w_eff * y * y);
            g2[i] = g * g;
            g4[i] = g2[i] * g2[i];
        }
        const TransverseFactor f = transverse_quartic_factor(s.omega_x, n);
        CHECK(f.quartic_integral == Catch::Approx(simpson(g4, h)).epsilon(1e-10));
        CHECK(simpson(g2, h) == Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("half-factor convention") {
        const TransverseFactor f = transverse_quartic_factor(s.omega_x, n, true);
        CHECK(f.quartic_integral ==
              Catch::Approx(std::sqrt(1.0 / (2.0 * std::numbers::pi))).epsilon(1e-14));
        CHECK(f.zero_point_energy == Catch::Approx(0.5).epsilon(1e-14));
    }
}
