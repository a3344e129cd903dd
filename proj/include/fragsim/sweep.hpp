#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "fragsim/closed_form.hpp"
#include "fragsim/config.hpp"
#include "fragsim/csv.hpp"
#include "fragsim/fock.hpp"
#include "fragsim/interference.hpp"
#include "fragsim/modes.hpp"
#include "fragsim/trap.hpp"

namespace fragsim {

inline constexpr const char* version_string = "0.1.0";

// One sweep point. Numeric fields are NaN when the stage that produces
// them failed; `error` carries the reason.
struct SweepRow {
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double eps_s = std::numeric_limits<double>::quiet_NaN();
    double eps_a = std::numeric_limits<double>::quiet_NaN();
    double eps_s1 = std::numeric_limits<double>::quiet_NaN();
    double eps12 = std::numeric_limits<double>::quiet_NaN();
    double t0 = std::numeric_limits<double>::quiet_NaN();
    double t1 = std::numeric_limits<double>::quiet_NaN();
    double t2 = std::numeric_limits<double>::quiet_NaN();
    double energy = std::numeric_limits<double>::quiet_NaN();
    double c1 = std::numeric_limits<double>::quiet_NaN();
    double delta_n1 = std::numeric_limits<double>::quiet_NaN();
    double c2 = std::numeric_limits<double>::quiet_NaN();
    double cont_sigma = std::numeric_limits<double>::quiet_NaN();
    double cont_c1 = std::numeric_limits<double>::quiet_NaN();
    double cont_delta_n1 = std::numeric_limits<double>::quiet_NaN();
    bool cont_valid = false;
    double tc_gamma = std::numeric_limits<double>::quiet_NaN();
    double tc_zeta = std::numeric_limits<double>::quiet_NaN();
    double tc_c1 = std::numeric_limits<double>::quiet_NaN();
    double tc_delta_n1 = std::numeric_limits<double>::quiet_NaN();
    bool tc_valid = false;
    double validity_ratio = std::numeric_limits<double>::quiet_NaN();
    double tunneling_time_s = std::numeric_limits<double>::quiet_NaN();
    std::string cont_agreement = "na"; // pass | fail | na
    std::string tc_agreement = "na";
    std::string error;

    // Kept for per-point dumps.
    ModeSet modes;
    FockState ground;
    std::vector<double> profile_u;
};

inline SweepRow evaluate_point(const SweepConfig& cfg, double alpha) {
    SweepRow row;
    row.alpha = alpha;
    const TrapSpec spec = cfg.trap(alpha);
    const NaturalScale scale = to_natural(spec);

    ModeSolveOptions opt;
    opt.point_count = cfg.grid_point_count;
    opt.half_extent = cfg.grid_half_extent;
    opt.count = cfg.mode_count;
    opt.tol = cfg.residual_tolerance;

    row.modes = build_modes(spec, opt);
    {
        const PotentialProfile profile = potential_profile(spec);
        const Grid1D& g = row.modes.spectrum.grid;
        row.profile_u.resize(g.point_count);
        for (int i = 0; i < g.point_count; ++i) row.profile_u[i] = profile(g.x(i));
    }
    const auto& c = row.modes.constants;
    row.eps_s = row.modes.spectrum.eps_s;
    row.eps_a = row.modes.spectrum.eps_a;
    row.eps_s1 = row.modes.spectrum.eps_s1;
    row.eps12 = c.eps12;
    row.t0 = c.t0;
    row.t1 = c.t1;
    row.t2 = c.t2;

    TwoModeParams params;
    params.eps11 = c.eps11;
    params.eps12 = c.eps12;
    params.interaction = scale.interaction;
    params.t0 = c.t0;
    params.t1 = c.t1;
    params.t2 = c.t2;
    params.particle_count = spec.particle_count;

    row.ground = ground_state(params, cfg.residual_tolerance);
    const CoherenceReport rep = observables(row.ground);
    row.energy = row.ground.energy;
    row.c1 = rep.c1;
    row.delta_n1 = rep.delta_n1;
    row.c2 = rep.c2;

    const Diagnostics diag = diagnostics(row.modes, scale.interaction, spec.particle_count, scale);
    row.validity_ratio = diag.validity_ratio;
    row.tunneling_time_s = diag.tunneling_time_s;

    if (cfg.approx_continuum) {
        try {
            const ContinuumResult cr = continuum_approx(params);
            row.cont_sigma = cr.sigma;
            row.cont_c1 = cr.c1;
            row.cont_delta_n1 = cr.delta_n1;
            row.cont_valid = cr.valid;
            if (row.delta_n1 >= 1.5)
                row.cont_agreement =
                    (std::fabs(cr.delta_n1 - row.delta_n1) <= 0.05 * row.delta_n1 &&
                     std::fabs(cr.c1 - row.c1) <= 0.02)
                        ? "pass"
                        : "fail";
        } catch (const SolverError&) {
            row.cont_valid = false; // outside continuum validity, leave fields empty
        }
    }
    if (cfg.approx_two_coefficient) {
        const TwoCoefResult tc = two_coefficient_approx(params);
        row.tc_gamma = tc.gamma;
        row.tc_zeta = tc.zeta;
        row.tc_c1 = tc.c1;
        row.tc_delta_n1 = tc.delta_n1;
        row.tc_valid = tc.valid;
        if (row.c1 <= 0.1 && std::fabs(tc.zeta) < 0.1 && std::isfinite(tc.c1))
            row.tc_agreement = (std::fabs(tc.c1 - row.c1) <= 0.1 * std::fabs(row.c1) &&
                                std::fabs(tc.delta_n1 - row.delta_n1) <= 0.1 * row.delta_n1)
                                   ? "pass"
                                   : "fail";
    }
    return row;
}

// Evaluate all sweep points, optionally across worker threads. Per-point
// failures land in the row's error column; the sweep continues.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, int workers = 1) {
    cfg.validate();
    const int count = static_cast<int>(cfg.alpha_values.size());
    std::vector<SweepRow> rows(count);
    auto work = [&](int i) {
        try {
            rows[i] = evaluate_point(cfg, cfg.alpha_values[i]);
        } catch (const std::exception& e) {
            rows[i] = SweepRow{};
            rows[i].alpha = cfg.alpha_values[i];
            rows[i].error = e.what();
        }
    };
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) work(i);
    } else {
        std::atomic<int> next{0};
        auto drain = [&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(workers, count); ++t) pool.emplace_back(drain);
        for (auto& t : pool) t.join();
    }
    return rows;
}

namespace detail {

inline std::string alpha_tag(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", alpha);
    return buf;
}

} // namespace detail

inline void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    CsvWriter w(path);
    for (const char* name :
         {"alpha", "eps_s", "eps_a", "eps_s1", "eps12", "t0", "t1", "t2", "energy", "c1",
          "delta_n1", "c2", "cont_sigma", "cont_c1", "cont_delta_n1", "cont_valid", "tc_gamma",
          "tc_zeta", "tc_c1", "tc_delta_n1", "tc_valid", "validity_ratio", "tunneling_time_s",
          "cont_agreement", "tc_agreement", "error"})
        w.field(name);
    w.end_row();
    for (const auto& r : rows) {
        w.field(r.alpha);
        w.field(r.eps_s);
        w.field(r.eps_a);
        w.field(r.eps_s1);
        w.field(r.eps12);
        w.field(r.t0);
        w.field(r.t1);
        w.field(r.t2);
        w.field(r.energy);
        w.field(r.c1);
        w.field(r.delta_n1);
        w.field(r.c2);
        w.field(r.cont_sigma);
        w.field(r.cont_c1);
        w.field(r.cont_delta_n1);
        w.field(r.cont_valid);
        w.field(r.tc_gamma);
        w.field(r.tc_zeta);
        w.field(r.tc_c1);
        w.field(r.tc_delta_n1);
        w.field(r.tc_valid);
        w.field(r.validity_ratio);
        w.field(r.tunneling_time_s);
        w.field(r.cont_agreement);
        w.field(r.tc_agreement);
        w.field(r.error);
        w.end_row();
    }
}

// x, U, phi1, phi2 along the x axis (Fig. 1 style).
inline void write_profile_csv(const SweepRow& row, const std::string& path) {
    const auto& g = row.modes.spectrum.grid;
    const auto& p1 = row.modes.pair.phi_1;
    const auto& p2 = row.modes.pair.phi_2;
    CsvWriter w(path);
    for (const char* name : {"x", "U", "phi1", "phi2"}) w.field(name);
    w.end_row();
    for (int i = 0; i < g.point_count; ++i) {
        w.field(g.x(i));
        w.field(row.profile_u.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : row.profile_u[i]);
        w.field(p1[i]);
        w.field(p2[i]);
        w.end_row();
    }
}

// N1, C_N1 (Fig. 1 lower panels).
inline void write_coefficients_csv(const FockState& s, const std::string& path) {
    CsvWriter w(path);
    w.field("N1");
    w.field("C_N1");
    w.end_row();
    for (int n1 = 0; n1 <= s.particle_count; ++n1) {
        w.field(n1);
        w.field(s.amplitudes[n1]);
        w.end_row();
    }
}

struct InterferenceResult {
    std::vector<DetectionRun> runs;
    FringeStatistics stats;
    double reference_c1 = 0.0;
};

// R independent runs with per-run seeds derived from the master seed.
inline InterferenceResult run_interference(const FockState& state, const SweepConfig& cfg,
                                           int workers = 1) {
    InterferenceResult res;
    res.reference_c1 = observables(state).c1;
    const ComplexFockState initial = far_field(state, cfg.wavenumber_natural);
    const int count = cfg.run_count;
    res.runs.resize(count);
    auto work = [&](int i) {
        res.runs[i] =
            sample_run(initial, cfg.detections_per_run, derive_seed(cfg.master_seed, i));
    };
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) work(i);
    } else {
        std::atomic<int> next{0};
        auto drain = [&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(workers, count); ++t) pool.emplace_back(drain);
        for (auto& t : pool) t.join();
    }
    res.stats = fringe_statistics(res.runs, cfg.wavenumber_natural);
    return res;
}

// One row per run plus a summary row.
inline void write_interference_csv(const InterferenceResult& res, const std::string& path) {
    CsvWriter w(path);
    for (const char* name : {"kind", "seed", "visibility", "phase", "mean_pattern_visibility",
                             "phase_dispersion", "reference_c1"})
        w.field(name);
    w.end_row();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& run : res.runs) {
        w.field("run");
        w.field(run.seed);
        w.field(run.visibility);
        w.field(run.phase);
        w.field(nan);
        w.field(nan);
        w.field(nan);
        w.end_row();
    }
    w.field("summary");
    w.field("");
    w.field(nan);
    w.field(nan);
    w.field(res.stats.mean_pattern_visibility);
    w.field(res.stats.phase_dispersion);
    w.field(res.reference_c1);
    w.end_row();
}

struct EmitResult {
    std::vector<std::string> files;
};

// Sweep CSV plus optional per-alpha dumps; paths are rooted at
// cfg.output_directory unless `out_dir` overrides it.
inline EmitResult emit_outputs(const std::vector<SweepRow>& rows, const SweepConfig& cfg,
                               std::string out_dir = "") {
    if (rows.empty()) throw ValidationError("emit_outputs: no rows");
    if (out_dir.empty()) out_dir = cfg.output_directory;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);
    EmitResult out;
    const std::string sweep_path = out_dir + "/sweep.csv";
    write_sweep_csv(rows, sweep_path);
    out.files.push_back(sweep_path);
    for (const auto& r : rows) {
        if (!r.error.empty()) continue;
        if (cfg.dump_profiles) {
            const std::string p = out_dir + "/profile_alpha" + detail::alpha_tag(r.alpha) + ".csv";
            write_profile_csv(r, p);
            out.files.push_back(p);
        }
        if (cfg.dump_coefficients) {
            const std::string p =
                out_dir + "/coefficients_alpha" + detail::alpha_tag(r.alpha) + ".csv";
            write_coefficients_csv(r.ground, p);
            out.files.push_back(p);
        }
    }
    return out;
}

inline void write_metadata(const SweepConfig& cfg, const std::string& command,
                           const std::vector<std::string>& files, double wall_seconds,
                           const std::string& path) {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config_json(cfg);
    j["master_seed"] = cfg.master_seed;
    j["versions"] = {{"fragsim", version_string}, {"compiler", __VERSION__}};
    j["wall_time_seconds"] = wall_seconds;
    j["outputs"] = files;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

} // namespace fragsim
