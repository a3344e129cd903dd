// fragsim: restricted-variational ground states of repulsive bosons in a
// symmetric double well, their coherence observables, closed-form
// approximations, and a double-slit detection Monte Carlo.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fragsim/fragsim.hpp"

namespace {

using namespace fragsim;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_io = 4;

struct Cli {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int workers = 1;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SweepConfig load(const Cli& cli) {
    SweepConfig cfg = load_config(cli.config_path);
    if (!cli.out_dir.empty()) cfg.output_directory = cli.out_dir;
    if (cli.seed) cfg.master_seed = *cli.seed;
    return cfg;
}

void print_point(const SweepRow& row) {
    std::printf("alpha            = %.6g\n", row.alpha);
    std::printf("eps_s, eps_a     = %.12g, %.12g\n", row.eps_s, row.eps_a);
    std::printf("eps_s1           = %.12g\n", row.eps_s1);
    std::printf("eps12            = %.12g\n", row.eps12);
    std::printf("T0, T1, T2       = %.12g, %.12g, %.12g\n", row.t0, row.t1, row.t2);
    std::printf("validity_ratio   = %.6g\n", row.validity_ratio);
    std::printf("tunneling_time_s = %.6g\n", row.tunneling_time_s);
}

int cmd_modes(const Cli& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = load(cli);
    SweepRow row = evaluate_point(cfg, cfg.alpha_natural);
    print_point(row);
    std::filesystem::create_directories(cfg.output_directory);
    const std::string profile =
        cfg.output_directory + "/profile_alpha" + detail::alpha_tag(row.alpha) + ".csv";
    write_profile_csv(row, profile);
    write_metadata(cfg, "modes", {profile}, seconds_since(t0),
                   cfg.output_directory + "/run_metadata.json");
    return exit_ok;
}

int cmd_ground(const Cli& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = load(cli);
    SweepRow row = evaluate_point(cfg, cfg.alpha_natural);
    print_point(row);
    std::printf("E                = %.12g\n", row.energy);
    std::printf("C1               = %.12g\n", row.c1);
    std::printf("dN1              = %.12g\n", row.delta_n1);
    std::printf("C2               = %.12g\n", row.c2);
    std::filesystem::create_directories(cfg.output_directory);
    const std::string coeffs =
        cfg.output_directory + "/coefficients_alpha" + detail::alpha_tag(row.alpha) + ".csv";
    write_coefficients_csv(row.ground, coeffs);
    write_metadata(cfg, "ground", {coeffs}, seconds_since(t0),
                   cfg.output_directory + "/run_metadata.json");
    return exit_ok;
}

int cmd_approx(const Cli& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = load(cli);
    const TrapSpec spec = cfg.trap(cfg.alpha_natural);
    const NaturalScale scale = to_natural(spec);
    ModeSolveOptions opt{cfg.grid_point_count, cfg.grid_half_extent, cfg.mode_count,
                         cfg.residual_tolerance};
    const ModeSet modes = build_modes(spec, opt);
    TwoModeParams p{modes.constants.eps11, modes.constants.eps12, scale.interaction,
                    modes.constants.t0,    modes.constants.t1,    modes.constants.t2,
                    spec.particle_count};

    std::filesystem::create_directories(cfg.output_directory);
    const std::string path = cfg.output_directory + "/approx.csv";
    CsvWriter w(path);
    for (const char* name :
         {"alpha", "eps12", "t0", "t1", "t2", "cont_sigma", "cont_c1", "cont_delta_n1",
          "cont_energy", "cont_valid", "tc_gamma", "tc_zeta", "tc_c1", "tc_delta_n1",
          "tc_energy", "tc_valid"})
        w.field(name);
    w.end_row();
    w.field(cfg.alpha_natural);
    w.field(p.eps12);
    w.field(p.t0);
    w.field(p.t1);
    w.field(p.t2);
    try {
        const ContinuumResult cr = continuum_approx(p);
        w.field(cr.sigma);
        w.field(cr.c1);
        w.field(cr.delta_n1);
        w.field(cr.energy);
        w.field(cr.valid);
        std::printf("continuum: sigma=%.6g C1=%.6g dN1=%.6g valid=%d\n", cr.sigma, cr.c1,
                    cr.delta_n1, cr.valid ? 1 : 0);
    } catch (const SolverError& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        w.field(nan);
        w.field(nan);
        w.field(nan);
        w.field(nan);
        w.field(false);
        std::printf("continuum: %s\n", e.what());
    }
    const TwoCoefResult tc = two_coefficient_approx(p);
    w.field(tc.gamma);
    w.field(tc.zeta);
    w.field(tc.c1);
    w.field(tc.delta_n1);
    w.field(tc.energy);
    w.field(tc.valid);
    w.end_row();
    std::printf("two-coefficient: gamma=%.6g zeta=%.6g C1=%.6g dN1=%.6g valid=%d\n", tc.gamma,
                tc.zeta, tc.c1, tc.delta_n1, tc.valid ? 1 : 0);
    write_metadata(cfg, "approx", {path}, seconds_since(t0),
                   cfg.output_directory + "/run_metadata.json");
    return exit_ok;
}

int cmd_sweep(const Cli& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = load(cli);
    const auto rows = run_sweep(cfg, cli.workers);
    int failed = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) {
            ++failed;
            std::fprintf(stderr, "alpha=%g failed: %s\n", r.alpha, r.error.c_str());
        }
    EmitResult emitted = emit_outputs(rows, cfg);
    write_metadata(cfg, "sweep", emitted.files, seconds_since(t0),
                   cfg.output_directory + "/run_metadata.json");
    std::printf("sweep: %zu points, %d failed, wrote %s/sweep.csv\n", rows.size(), failed,
                cfg.output_directory.c_str());
    return failed == static_cast<int>(rows.size()) ? exit_numerical : exit_ok;
}

int cmd_interfere(const Cli& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = load(cli);
    FockState state;
    if (cfg.initial_state == "dual") {
        state = FockState{cfg.particle_count, dual_condensate_amplitudes(cfg.particle_count), 0.0};
    } else if (cfg.initial_state == "single") {
        state = FockState{cfg.particle_count, binomial_amplitudes(cfg.particle_count), 0.0};
    } else {
        SweepRow row = evaluate_point(cfg, cfg.alpha_natural);
        state = row.ground;
    }
    const InterferenceResult res = run_interference(state, cfg, cli.workers);
    std::filesystem::create_directories(cfg.output_directory);
    const std::string path = cfg.output_directory + "/interference.csv";
    write_interference_csv(res, path);
    write_metadata(cfg, "interfere", {path}, seconds_since(t0),
                   cfg.output_directory + "/run_metadata.json");
    std::printf("interference: %d runs x %d detections\n", cfg.run_count, cfg.detections_per_run);
    std::printf("mean_pattern_visibility = %.6g\n", res.stats.mean_pattern_visibility);
    std::printf("phase_dispersion        = %.6g\n", res.stats.phase_dispersion);
    std::printf("reference C1            = %.6g\n", res.reference_c1);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode double-well condensate fragmentation simulator"};
    app.require_subcommand(1);

    Cli cli;
    std::uint64_t seed_value = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "JSON configuration file")->required();
        sub->add_option("--out", cli.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed_value, "master seed (overrides config)")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--workers", cli.workers, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* modes = app.add_subcommand("modes", "single-alpha mode solve and profile dump");
    auto* ground = app.add_subcommand("ground", "single-alpha many-body ground state");
    auto* sweep = app.add_subcommand("sweep", "barrier-strength sweep");
    auto* interfere = app.add_subcommand("interfere", "double-slit detection Monte Carlo");
    auto* approx = app.add_subcommand("approx", "closed-form approximations only");
    for (auto* sub : {modes, ground, sweep, interfere, approx}) add_common(sub);

    CLI11_PARSE(app, argc, argv);
    if (seed_set) cli.seed = seed_value;

    try {
        if (modes->parsed()) return cmd_modes(cli);
        if (ground->parsed()) return cmd_ground(cli);
        if (sweep->parsed()) return cmd_sweep(cli);
        if (interfere->parsed()) return cmd_interfere(cli);
        if (approx->parsed()) return cmd_approx(cli);
    } catch (const fragsim::ValidationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const fragsim::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_io;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_numerical;
    }
    return exit_ok;
}
