#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "fragsim/errors.hpp"
#include "fragsim/fock.hpp"
#include "fragsim/rng.hpp"

namespace fragsim {

// Far-field two-mode state: phi_1, phi_2 replaced by plane waves e^{ikx},
// e^{-ikx} with uniform envelopes. amplitudes[N1] is the amplitude for N1
// particles remaining in mode 1 out of `remaining` total.
struct ComplexFockState {
    int remaining = 0;
    double wavenumber = 0.0;
    std::vector<std::complex<double>> amplitudes;
};

struct DetectionRun {
    std::uint64_t seed = 0;
    std::vector<double> positions;
    double visibility = 0.0; // in [0, 1]
    double phase = 0.0;      // in [-pi, pi)
};

inline ComplexFockState far_field(const FockState& s, double wavenumber) {
    if (!(wavenumber > 0.0)) throw ValidationError("far_field: wavenumber must be positive");
    ComplexFockState c;
    c.remaining = s.particle_count;
    c.wavenumber = wavenumber;
    c.amplitudes.assign(s.amplitudes.begin(), s.amplitudes.end());
    return c;
}

// beta = (2/M) <a2+ a1>; the one-detection density is
// I(x) = 1 + Re(beta e^{2ikx}) = 1 + |beta| cos(2kx + arg beta).
// For the real initial ground state beta equals C1.
inline std::complex<double> fringe_amplitude(const ComplexFockState& s) {
    const int m = s.remaining;
    if (m < 1) throw ValidationError("fringe_amplitude: no particles remain");
    std::complex<double> acc = 0.0;
    for (int n1 = 0; n1 + 1 <= m; ++n1)
        acc += std::conj(s.amplitudes[n1]) * s.amplitudes[n1 + 1] *
               std::sqrt((n1 + 1.0) * (m - n1));
    return 2.0 * acc / static_cast<double>(m);
}

// Unnormalized single-detection density at x (flat envelope, one fringe
// period is x in [0, pi/k)).
inline double intensity_profile(const ComplexFockState& s, double x) {
    const std::complex<double> beta = fringe_amplitude(s);
    const std::complex<double> rot(std::cos(2.0 * s.wavenumber * x),
                                   std::sin(2.0 * s.wavenumber * x));
    return 1.0 + (beta * rot).real();
}

// Apply the annihilation field Psi(x) = e^{ikx} a1 + e^{-ikx} a2 and
// renormalize: one atom removed at x.
inline ComplexFockState detect_at(const ComplexFockState& s, double x) {
    const int m = s.remaining;
    if (m < 2) throw ValidationError("detect_at: need at least two particles");
    ComplexFockState out;
    out.remaining = m - 1;
    out.wavenumber = s.wavenumber;
    out.amplitudes.resize(m);
    const std::complex<double> ep(std::cos(s.wavenumber * x), std::sin(s.wavenumber * x));
    const std::complex<double> em = std::conj(ep);
    double norm2 = 0.0;
    for (int n1 = 0; n1 < m; ++n1) {
        const std::complex<double> a =
            ep * std::sqrt(n1 + 1.0) * s.amplitudes[n1 + 1] +
            em * std::sqrt(static_cast<double>(m - n1)) * s.amplitudes[n1];
        out.amplitudes[n1] = a;
        norm2 += std::norm(a);
    }
    if (!(norm2 > 1e-14 * m))
        throw SolverError("detect_at: detection at a dark fringe annihilates the state");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : out.amplitudes) a *= inv;
    return out;
}

// One experimental run: m sequential detections sampled from the exact
// conditional density by rejection over one fringe period, then a fringe
// fit from the first Fourier coefficient at spatial frequency 2k.
inline DetectionRun sample_run(const ComplexFockState& initial, int detections,
                               std::uint64_t seed) {
    if (detections < 1) throw ValidationError("sample_run: detections must be >= 1");
    if (detections > initial.remaining - 1)
        throw ValidationError("sample_run: detections must leave at least one particle");
    const double k = initial.wavenumber;
    const double period = std::numbers::pi / k;

    Rng rng(seed);
    ComplexFockState state = initial;
    DetectionRun run;
    run.seed = seed;
    run.positions.reserve(detections);
    for (int j = 0; j < detections; ++j) {
        const std::complex<double> beta = fringe_amplitude(state);
        const double mag = std::abs(beta);
        const double arg = std::arg(beta);
        const double bound = 1.0 + mag;
        double x = 0.0;
        for (;;) {
            x = rng.uniform(0.0, period);
            const double u = rng.uniform();
            if (u * bound <= 1.0 + mag * std::cos(2.0 * k * x + arg)) break;
        }
        run.positions.push_back(x);
        state = detect_at(state, x);
    }

    std::complex<double> f = 0.0;
    for (double x : run.positions)
        f += std::complex<double>(std::cos(2.0 * k * x), -std::sin(2.0 * k * x));
    f *= 2.0 / static_cast<double>(detections);
    run.visibility = std::min(std::abs(f), 1.0);
    run.phase = std::arg(f);
    if (run.phase >= std::numbers::pi) run.phase = -std::numbers::pi;
    return run;
}

struct FringeStatistics {
    double mean_pattern_visibility = 0.0; // |(2/total) sum e^{-2ikx}| over all detections
    double phase_dispersion = 0.0;        // circular variance of per-run phases
};

inline FringeStatistics fringe_statistics(const std::vector<DetectionRun>& runs, double k) {
    if (runs.size() < 2) throw ValidationError("fringe_statistics: need at least two runs");
    std::complex<double> pooled = 0.0;
    std::complex<double> phases = 0.0;
    std::size_t total = 0;
    for (const auto& run : runs) {
        for (double x : run.positions)
            pooled += std::complex<double>(std::cos(2.0 * k * x), -std::sin(2.0 * k * x));
        total += run.positions.size();
        phases += std::complex<double>(std::cos(run.phase), std::sin(run.phase));
    }
    FringeStatistics fs;
    fs.mean_pattern_visibility = 2.0 * std::abs(pooled) / static_cast<double>(total);
    fs.phase_dispersion = 1.0 - std::abs(phases) / static_cast<double>(runs.size());
    return fs;
}

// Rayleigh test for circular uniformity of phases; small p rejects
// uniformity.
inline double rayleigh_uniformity_pvalue(const std::vector<double>& phases) {
    const std::size_t n = phases.size();
    if (n < 2) throw ValidationError("rayleigh_uniformity_pvalue: need at least two phases");
    std::complex<double> acc = 0.0;
    for (double p : phases) acc += std::complex<double>(std::cos(p), std::sin(p));
    const double rbar = std::abs(acc) / static_cast<double>(n);
    const double z = static_cast<double>(n) * rbar * rbar;
    const double p = std::exp(-z) * (1.0 + (2.0 * z - z * z) / (4.0 * n));
    return std::clamp(p, 0.0, 1.0);
}

} // namespace fragsim
