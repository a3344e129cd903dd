#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "fragsim/errors.hpp"
#include "fragsim/fock.hpp"

namespace fragsim {

// Gaussian-envelope solution of the recurrence, valid while the amplitudes
// vary smoothly (delta_n1 >= 1, i.e. C1 >~ 0.88).
struct ContinuumResult {
    double a_coeff = 0.0;
    double b_coeff = 0.0;
    double sigma = 0.0;
    double delta_n1 = 0.0; // N sigma
    double c1 = 0.0;
    double energy = 0.0;
    // Reduced form depending only on g T0 / |eps12|; present when the
    // cross-interaction terms are negligible (N g |T1|, N g T2 <= 0.01 |eps12|).
    std::optional<double> simplified_sigma;
    bool valid = false; // delta_n1 >= 1
};

inline ContinuumResult continuum_approx(const TwoModeParams& p) {
    const double n = p.particle_count;
    const double g = p.interaction;
    const double den = -p.eps12 - n * g * (p.t1 + p.t2);
    if (!(std::fabs(den) > 0.0) || !std::isfinite(den))
        throw SolverError("continuum_approx: vanishing denominator, outside continuum validity");

    ContinuumResult r;
    r.a_coeff = 1.5 / n * (-p.eps12 - n * g * (p.t1 + 4.0 / 3.0 * p.t2)) / den;
    r.b_coeff = (-p.eps12 - n * g * (p.t1 + 1.5 * p.t2 - 0.5 * p.t0)) / den;
    const double root = -r.a_coeff + std::sqrt(r.a_coeff * r.a_coeff + r.b_coeff);
    if (!(root > 0.0))
        throw SolverError("continuum_approx: non-positive frequency, outside continuum validity");
    r.sigma = 1.0 / (2.0 * std::sqrt(n)) / std::sqrt(root);
    r.delta_n1 = n * r.sigma;
    r.c1 = std::exp(-1.0 / (8.0 * r.sigma * r.sigma * n * n)) *
           (1.0 + 1.0 / n - 2.0 * r.sigma * r.sigma);
    r.energy = n * (den / (4.0 * n * n * r.sigma * r.sigma) + (p.eps11 + p.eps12) +
                    n * g * (0.25 * p.t0 + p.t1 + 0.75 * p.t2));
    if (n * g * std::fabs(p.t1) <= 0.01 * std::fabs(p.eps12) &&
        n * g * p.t2 <= 0.01 * std::fabs(p.eps12))
        r.simplified_sigma = 1.0 / (2.0 * std::sqrt(n)) /
                             std::sqrt(1.0 + 0.5 * n * g * p.t0 / (-p.eps12));
    r.valid = r.delta_n1 >= 1.0;
    return r;
}

// Three-amplitude solution sqrt(1-2 gamma^2), gamma, gamma around N/2,
// valid for strong barriers (|gamma|, |zeta| << 1).
struct TwoCoefResult {
    double gamma = 0.0;
    double zeta = 0.0;
    double c1 = 0.0;       // NaN when |gamma| >= 1/sqrt(2)
    double delta_n1 = 0.0; // sqrt(2) gamma
    double energy = 0.0;
    std::vector<double> amplitudes; // empty when |gamma| >= 1/sqrt(2)
    bool valid = false;             // |gamma| <= 0.1 and |zeta| <= 0.1
    bool degenerate_zeta = false;   // zeta reported as 0 at the exact infinite-barrier limit
};

inline TwoCoefResult two_coefficient_approx(const TwoModeParams& p) {
    p.validate();
    const double n = p.particle_count;
    const double g = p.interaction;
    const double j = std::sqrt(0.5 * n * (0.5 * n + 1.0));
    const double coupling = -p.eps12 - g * (n - 1.0) * p.t1;

    TwoCoefResult r;
    r.gamma = j * coupling / (g * p.t0);
    if (coupling == 0.0) {
        r.zeta = 0.0;
        r.degenerate_zeta = true;
    } else {
        r.zeta = n * n * g * p.t2 / (j * coupling);
    }
    r.delta_n1 = std::numbers::sqrt2 * r.gamma;
    r.energy = n * p.eps11 + (0.25 * n * (n - 2.0) - 2.0 * r.gamma * r.gamma) * g * p.t0;
    if (std::fabs(r.gamma) < 1.0 / std::numbers::sqrt2) {
        const double w = std::sqrt(1.0 - 2.0 * r.gamma * r.gamma);
        r.c1 = 2.0 * r.gamma * w * std::sqrt(1.0 + 2.0 / n);
        const int half = p.particle_count / 2;
        r.amplitudes.assign(p.particle_count + 1, 0.0);
        r.amplitudes[half] = w;
        r.amplitudes[half + 1] = r.gamma;
        r.amplitudes[half - 1] = r.gamma;
    } else {
        r.c1 = std::numeric_limits<double>::quiet_NaN();
    }
    r.valid = std::fabs(r.gamma) <= 0.1 && std::fabs(r.zeta) <= 0.1;
    return r;
}

// Amplitudes sampled from the continuum Gaussian C(u) at u = (N1 - N/2)/N,
// renormalized on the lattice.
inline std::vector<double> gaussian_coefficients(double sigma, int particle_count) {
    if (!(sigma > 0.0)) throw ValidationError("gaussian_coefficients: sigma must be positive");
    if (particle_count < 2 || particle_count % 2 != 0)
        throw ValidationError("gaussian_coefficients: particle_count must be even and >= 2");
    const int n = particle_count;
    std::vector<double> c(n + 1);
    for (int n1 = 0; n1 <= n; ++n1) {
        const double u = (n1 - n / 2) / static_cast<double>(n);
        c[n1] = std::exp(-u * u / (4.0 * sigma * sigma));
    }
    double s = 0.0;
    for (double x : c) s += x * x;
    s = std::sqrt(s);
    for (double& x : c) x /= s;
    return c;
}

} // namespace fragsim
