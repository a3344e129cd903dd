#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fragsim/banded.hpp"
#include "fragsim/errors.hpp"

namespace fragsim {

// Inputs of the two-mode many-body Hamiltonian, natural units.
struct TwoModeParams {
    double eps11 = 0.0;
    double eps12 = 0.0;      // <= 0
    double interaction = 0.0; // g~
    double t0 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    int particle_count = 0;

    void validate() const {
        if (particle_count < 2 || particle_count % 2 != 0)
            throw ValidationError("TwoModeParams: particle_count must be even and >= 2");
        if (particle_count > 16384)
            throw ValidationError(
                "TwoModeParams: particle_count > 16384 unsupported; use the closed forms");
        if (eps12 > 0.0) throw ValidationError("TwoModeParams: eps12 must be <= 0");
        if (!(t0 > 0.0)) throw ValidationError("TwoModeParams: t0 must be positive");
    }
};

// Real amplitudes C_{N1}, N1 = 0..N, with C_{N1} = C_{N-N1} and C_{N/2} >= 0.
struct FockState {
    int particle_count = 0;
    std::vector<double> amplitudes;
    double energy = 0.0;
};

struct CoherenceReport {
    double c1 = 0.0;       // <a1+ a2 + a2+ a1> / N
    double delta_n1 = 0.0; // std deviation of N1
    double c2 = 0.0;       // function of delta_n1 alone
    double jz_mean = 0.0;  // N c1 / 2
};

inline double second_order_coherence(double delta_n1, int particle_count) {
    const double r = delta_n1 / particle_count;
    return (1.0 - 4.0 * r * r) /
           (static_cast<double>(particle_count - 2) / particle_count + 4.0 * r * r);
}

// Pentadiagonal matrix of the five-term recurrence over C_{N1}; dimension
// N+1, half-bandwidth 2. Band arrays are reflection-symmetric under
// N1 -> N-N1 by construction.
inline SymmetricBandedMatrix assemble_hamiltonian(const TwoModeParams& p) {
    p.validate();
    const int n = p.particle_count;
    const double g = p.interaction;
    SymmetricBandedMatrix h;
    h.n = n + 1;
    h.half_bandwidth = 2;
    h.diag.resize(n + 1);
    h.band1.resize(n);
    h.band2.resize(n - 1);
    for (int n1 = 0; n1 <= n; ++n1) {
        const double a = n1;
        const double b = n - n1;
        h.diag[n1] = n * p.eps11 + 0.5 * g * p.t0 * (a * a + b * b - n) + 2.0 * g * p.t2 * a * b;
    }
    const double hop = p.eps12 + g * p.t1 * (n - 1);
    for (int n1 = 0; n1 < n; ++n1)
        h.band1[n1] = hop * std::sqrt((n1 + 1.0) * (n - n1));
    for (int n1 = 0; n1 + 1 < n; ++n1)
        h.band2[n1] =
            0.5 * g * p.t2 * std::sqrt((n1 + 1.0) * (n1 + 2.0) * (n - n1) * (n - n1 - 1.0));
    return h;
}

// Lowest eigenpair, then a symmetrize-and-renormalize post-pass: the
// ansatz requires C_{N1} = C_{N-N1}, which a solver may break at
// degeneracy. E is the Lagrange multiplier, equal to <H>.
inline FockState ground_state(const TwoModeParams& p, double tol = 1e-10) {
    const SymmetricBandedMatrix h = assemble_hamiltonian(p);
    auto pairs = lowest_eigenpairs(h, 1, tol);
    std::vector<double> c = pairs[0].eigenvector;
    const int n = p.particle_count;

    auto symmetrized = [&](const std::vector<double>& v) {
        std::vector<double> s(v.size());
        for (int i = 0; i <= n; ++i) s[i] = 0.5 * (v[i] + v[n - i]);
        return s;
    };
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };

    std::vector<double> sym = symmetrized(c);
    double ns = norm(sym);
    if (ns < 0.1) {
        // Degenerate ground space with an antisymmetric representative;
        // pick the more symmetric member of the pair.
        auto two = lowest_eigenpairs(h, std::min(2, n + 1), tol);
        for (const auto& ep : two) {
            auto cand = symmetrized(ep.eigenvector);
            const double nc = norm(cand);
            if (nc > ns) {
                sym = std::move(cand);
                ns = nc;
            }
        }
        if (ns < 0.1)
            throw SolverError("ground_state: could not recover a reflection-symmetric ground state");
    }
    for (double& x : sym) x /= ns;
    if (sym[n / 2] < 0.0)
        for (double& x : sym) x = -x;

    return FockState{n, std::move(sym), pairs[0].eigenvalue};
}

// <C|H|C> for a given amplitude vector; used as a redundant check of the
// band assembly.
inline double energy_expectation(const TwoModeParams& p, const std::vector<double>& c) {
    const SymmetricBandedMatrix h = assemble_hamiltonian(p);
    std::vector<double> hc;
    h.multiply(c, hc);
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) e += c[i] * hc[i];
    return e;
}

inline CoherenceReport observables(const FockState& s) {
    const int n = s.particle_count;
    const auto& c = s.amplitudes;
    if (static_cast<int>(c.size()) != n + 1)
        throw ValidationError("observables: amplitude vector has wrong length");
    double hop = 0.0, mean = 0.0, mean2 = 0.0;
    for (int n1 = 0; n1 <= n; ++n1) {
        if (n1 < n) hop += c[n1] * c[n1 + 1] * std::sqrt((n1 + 1.0) * (n - n1));
        const double w = c[n1] * c[n1];
        mean += n1 * w;
        mean2 += static_cast<double>(n1) * n1 * w;
    }
    CoherenceReport r;
    r.c1 = 2.0 * hop / n;
    r.delta_n1 = std::sqrt(std::max(mean2 - mean * mean, 0.0));
    r.c2 = second_order_coherence(r.delta_n1, n);
    r.jz_mean = 0.5 * n * r.c1;
    return r;
}

// Binomial amplitudes of the single condensate |N>_{phi_s} in the
// localized basis; exact for g = 0.
inline std::vector<double> binomial_amplitudes(int particle_count) {
    const int n = particle_count;
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double lg = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                 std::lgamma(n - k + 1.0)) -
                          0.5 * n * std::numbers::ln2;
        c[k] = std::exp(lg);
    }
    double s = 0.0;
    for (double x : c) s += x * x;
    s = std::sqrt(s);
    for (double& x : c) x /= s;
    return c;
}

// Dual condensate |N/2, N/2>.
inline std::vector<double> dual_condensate_amplitudes(int particle_count) {
    std::vector<double> c(particle_count + 1, 0.0);
    c[particle_count / 2] = 1.0;
    return c;
}

} // namespace fragsim
