#pragma once

#include <cstdint>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "fragsim/constants.hpp"
#include "fragsim/errors.hpp"
#include "fragsim/trap.hpp"

namespace fragsim {

// One JSON document drives every subcommand; field names carry units.
// Frequencies are linear frequencies in Hz (omega = 2 pi f), matching the
// "2 pi x 19 Hz" way trap parameters are usually quoted.
struct SweepConfig {
    // trap
    double mass_kg = 0.0;
    double scattering_length_nm = 0.0;
    double omega_x_hz = 0.0;
    double omega_y_hz = 0.0;
    double omega_z_hz = 0.0;
    double delta_um = 0.0;
    double alpha_natural = 0.0; // used by the single-alpha subcommands
    int particle_count = 0;
    bool conventional_half_factor = false;

    // grid / solver
    int grid_point_count = 0;        // 0: auto
    double grid_half_extent = 0.0;   // natural units; 0: auto
    int mode_count = 4;
    double residual_tolerance = 1e-10;

    // sweep
    std::vector<double> alpha_values;

    // approximations
    bool approx_continuum = true;
    bool approx_two_coefficient = true;

    // interference
    bool interference_enabled = false;
    double wavenumber_natural = 8.0;
    int detections_per_run = 200;
    int run_count = 500;
    std::uint64_t master_seed = 1;
    std::string initial_state = "ground"; // ground | dual | single

    // output
    std::string output_directory = "out";
    bool dump_profiles = false;
    bool dump_coefficients = false;

    TrapSpec trap(double alpha) const {
        TrapSpec t;
        t.mass_kg = mass_kg;
        t.scattering_length_m = scattering_length_nm * 1e-9;
        t.omega_x = 2.0 * std::numbers::pi * omega_x_hz;
        t.omega_y = 2.0 * std::numbers::pi * omega_y_hz;
        t.omega_z = 2.0 * std::numbers::pi * omega_z_hz;
        t.barrier_width_m = delta_um * 1e-6;
        t.barrier_strength = alpha;
        t.particle_count = particle_count;
        t.conventional_half_factor = conventional_half_factor;
        return t;
    }

    void validate() const {
        trap(alpha_natural).validate();
        if (alpha_values.empty())
            throw ValidationError("config: sweep needs at least one alpha value");
        double prev = -1.0;
        for (double a : alpha_values) {
            if (a < 0.0) throw ValidationError("config: alpha values must be >= 0");
            if (a <= prev) throw ValidationError("config: alpha values must be strictly increasing");
            prev = a;
        }
        if (grid_point_count != 0 && (grid_point_count < 5 || grid_point_count % 2 == 0))
            throw ValidationError("config: grid.point_count must be odd (or 0 for auto)");
        if (mode_count < 4) throw ValidationError("config: grid.mode_count must be >= 4");
        if (!(residual_tolerance > 0.0))
            throw ValidationError("config: solver.residual_tolerance must be positive");
        if (detections_per_run < 1 || run_count < 1)
            throw ValidationError("config: interference counts must be >= 1");
        if (initial_state != "ground" && initial_state != "dual" && initial_state != "single")
            throw ValidationError("config: interference.initial_state must be ground, dual or single");
        if (!(wavenumber_natural > 0.0))
            throw ValidationError("config: interference.wavenumber_natural must be positive");
    }
};

inline SweepConfig parse_config(const nlohmann::json& j) {
    SweepConfig c;
    try {
        const auto& trap = j.at("trap");
        if (trap.contains("mass_kg"))
            c.mass_kg = trap.at("mass_kg").get<double>();
        else if (trap.contains("mass_u"))
            c.mass_kg = trap.at("mass_u").get<double>() * phys::atomic_mass_unit;
        else
            throw ValidationError("config: trap.mass_kg or trap.mass_u required");
        c.scattering_length_nm = trap.at("scattering_length_nm").get<double>();
        c.omega_x_hz = trap.at("omega_x_hz").get<double>();
        c.omega_y_hz = trap.at("omega_y_hz").get<double>();
        c.omega_z_hz = trap.at("omega_z_hz").get<double>();
        c.delta_um = trap.at("delta_um").get<double>();
        c.alpha_natural = trap.value("alpha_natural", 0.0);
        c.particle_count = trap.at("particle_count").get<int>();
        c.conventional_half_factor = trap.value("conventional_half_factor", false);

        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            c.grid_point_count = g.value("point_count", 0);
            c.grid_half_extent = g.value("half_extent_natural", 0.0);
            c.mode_count = g.value("mode_count", 4);
        }
        if (j.contains("solver"))
            c.residual_tolerance = j.at("solver").value("residual_tolerance", 1e-10);

        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            if (s.contains("alpha_list")) {
                c.alpha_values = s.at("alpha_list").get<std::vector<double>>();
            } else {
                const double start = s.at("alpha_start").get<double>();
                const double stop = s.at("alpha_stop").get<double>();
                const int count = s.at("alpha_count").get<int>();
                if (count < 1) throw ValidationError("config: sweep.alpha_count must be >= 1");
                if (count == 1) {
                    c.alpha_values = {start};
                } else {
                    if (!(stop > start))
                        throw ValidationError("config: sweep.alpha_stop must exceed alpha_start");
                    c.alpha_values.resize(count);
                    for (int i = 0; i < count; ++i)
                        c.alpha_values[i] = start + (stop - start) * i / (count - 1);
                }
            }
        } else {
            c.alpha_values = {c.alpha_natural};
        }

        if (j.contains("approximations")) {
            const auto& a = j.at("approximations");
            c.approx_continuum = a.value("continuum", true);
            c.approx_two_coefficient = a.value("two_coefficient", true);
        }
        if (j.contains("interference")) {
            const auto& i = j.at("interference");
            c.interference_enabled = i.value("enabled", false);
            c.wavenumber_natural = i.value("wavenumber_natural", 8.0);
            c.detections_per_run = i.value("detections_per_run", 200);
            c.run_count = i.value("run_count", 500);
            c.master_seed = i.value("master_seed", std::uint64_t{1});
            c.initial_state = i.value("initial_state", std::string("ground"));
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            c.output_directory = o.value("directory", std::string("out"));
            c.dump_profiles = o.value("dump_profiles", false);
            c.dump_coefficients = o.value("dump_coefficients", false);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: parse error in ") + path + ": " + e.what());
    }
    return parse_config(j);
}

// Normalized echo of the configuration; parse_config(config_json(c)) == c.
inline nlohmann::json config_json(const SweepConfig& c) {
    nlohmann::json j;
    j["trap"] = {{"mass_kg", c.mass_kg},
                 {"scattering_length_nm", c.scattering_length_nm},
                 {"omega_x_hz", c.omega_x_hz},
                 {"omega_y_hz", c.omega_y_hz},
                 {"omega_z_hz", c.omega_z_hz},
                 {"delta_um", c.delta_um},
                 {"alpha_natural", c.alpha_natural},
                 {"particle_count", c.particle_count},
                 {"conventional_half_factor", c.conventional_half_factor}};
    j["grid"] = {{"point_count", c.grid_point_count},
                 {"half_extent_natural", c.grid_half_extent},
                 {"mode_count", c.mode_count}};
    j["solver"] = {{"residual_tolerance", c.residual_tolerance}};
    j["sweep"] = {{"alpha_list", c.alpha_values}};
    j["approximations"] = {{"continuum", c.approx_continuum},
                           {"two_coefficient", c.approx_two_coefficient}};
    j["interference"] = {{"enabled", c.interference_enabled},
                         {"wavenumber_natural", c.wavenumber_natural},
                         {"detections_per_run", c.detections_per_run},
                         {"run_count", c.run_count},
                         {"master_seed", c.master_seed},
                         {"initial_state", c.initial_state}};
    j["output"] = {{"directory", c.output_directory},
                   {"dump_profiles", c.dump_profiles},
                   {"dump_coefficients", c.dump_coefficients}};
    return j;
}

} // namespace fragsim
