#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fragsim/banded.hpp"
#include "fragsim/errors.hpp"
#include "fragsim/quadrature.hpp"
#include "fragsim/trap.hpp"

namespace fragsim {

// Uniform symmetric grid on [-L, L] with hard-wall boundaries. Points are
// x_i = (i - (n-1)/2) h so that x_i + x_{n-1-i} == 0 bitwise.
struct Grid1D {
    double half_extent = 0.0;
    int point_count = 0;

    static Grid1D uniform(double half_extent, int point_count) {
        if (!(half_extent > 0.0)) throw ValidationError("Grid1D: half_extent must be positive");
        if (point_count < 5 || point_count % 2 == 0)
            throw ValidationError("Grid1D: point_count must be odd and >= 5");
        return Grid1D{half_extent, point_count};
    }

    double spacing() const { return 2.0 * half_extent / (point_count - 1); }
    double x(int i) const { return (i - (point_count - 1) / 2) * spacing(); }
};

// Lowest eigenfunctions of -(1/2) d^2/dx^2 + U(x), classified by parity.
// phi_s, phi_a carry int phi^2 dx = 1 (Simpson norm on the grid).
struct ModeSpectrum {
    Grid1D grid;
    std::vector<double> phi_s; // symmetric ground state
    std::vector<double> phi_a; // antisymmetric first excited state
    double eps_s = 0.0;
    double eps_a = 0.0;
    double eps_s1 = 0.0; // first symmetric excited state
};

struct LocalizedPair {
    std::vector<double> phi_1; // right well
    std::vector<double> phi_2; // mirror image, left well
};

// The five constants of the two-mode many-body Hamiltonian, 3D-reduced.
// eps11 includes the transverse zero-point energy; eps12 does not acquire
// transverse terms because phi_1 and phi_2 share the transverse state.
struct TwoModeConstants {
    double eps11 = 0.0;
    double eps12 = 0.0; // (eps_s - eps_a)/2 <= 0
    double t0 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
};

struct ModeSet {
    ModeSpectrum spectrum;
    LocalizedPair pair;
    TwoModeConstants constants;
};

namespace detail {

inline double simpson_norm(const std::vector<double>& f, double h) {
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
    return std::sqrt(simpson(sq, h));
}

// Normalized reflection overlap; +-1 for parity eigenstates.
inline double parity_indicator(const std::vector<double>& f, double /*h*/) {
    const std::size_t n = f.size();
    double s = 0.0, nn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += f[i] * f[n - 1 - i];
        nn += f[i] * f[i];
    }
    return nn > 0.0 ? s / nn : 0.0;
}

} // namespace detail

// Solve the linear mode equation on the grid with second-order centered
// finite differences and Dirichlet walls. Degenerate doublets (huge
// barriers) are rotated into parity eigenstates before classification.
inline ModeSpectrum solve_modes(const PotentialProfile& profile, const Grid1D& grid,
                                int count = 4, double tol = 1e-10) {
    if (count < 4) throw ValidationError("solve_modes: count must be >= 4");
    if (profile.barrier_width > 0.0 && grid.spacing() > profile.barrier_width / 8.0)
        throw ValidationError("solve_modes: grid spacing must resolve the barrier (h <= delta/8)");

    const int n = grid.point_count;
    const double h = grid.spacing();
    const int dim = n - 2;
    if (count > dim) throw ValidationError("solve_modes: grid too coarse for requested count");

    SymmetricBandedMatrix fd;
    fd.n = dim;
    fd.half_bandwidth = 1;
    fd.diag.resize(dim);
    fd.band1.assign(dim - 1, -0.5 / (h * h));
    for (int i = 0; i < dim; ++i) fd.diag[i] = 1.0 / (h * h) + profile(grid.x(i + 1));

    const double tol_eff = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon());
    auto pairs = lowest_eigenpairs(fd, count, tol_eff);

    // Embed on the full grid (zero at the walls) and Simpson-normalize.
    struct State {
        double energy;
        std::vector<double> values;
        int parity; // +1 even, -1 odd
    };
    std::vector<State> states(count);
    for (int j = 0; j < count; ++j) {
        std::vector<double> full(n, 0.0);
        std::copy(pairs[j].eigenvector.begin(), pairs[j].eigenvector.end(), full.begin() + 1);
        const double nrm = detail::simpson_norm(full, h);
        for (double& v : full) v /= nrm;
        states[j] = State{pairs[j].eigenvalue, std::move(full), 0};
    }

    auto rayleigh = [&](const std::vector<double>& full) {
        std::vector<double> v(full.begin() + 1, full.end() - 1);
        std::vector<double> av;
        fd.multiply(v, av);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < dim; ++i) {
            num += v[i] * av[i];
            den += v[i] * v[i];
        }
        return num / den;
    };

    // Rotate near-degenerate pairs into even/odd combinations.
    const double gap_tol = 1e-8 * std::max(1.0, std::fabs(states.back().energy));
    for (int j = 0; j + 1 < count; ++j) {
        if (std::fabs(states[j + 1].energy - states[j].energy) > gap_tol) continue;
        const auto& u = states[j].values;
        const auto& w = states[j + 1].values;
        std::vector<double> even(n), odd(n);
        std::vector<double> eu(n), ou(n), ew(n), ow(n);
        for (int i = 0; i < n; ++i) {
            eu[i] = 0.5 * (u[i] + u[n - 1 - i]);
            ou[i] = 0.5 * (u[i] - u[n - 1 - i]);
            ew[i] = 0.5 * (w[i] + w[n - 1 - i]);
            ow[i] = 0.5 * (w[i] - w[n - 1 - i]);
        }
        even = detail::simpson_norm(eu, h) >= detail::simpson_norm(ew, h) ? eu : ew;
        odd = detail::simpson_norm(ou, h) >= detail::simpson_norm(ow, h) ? ou : ow;
        const double ne = detail::simpson_norm(even, h);
        const double no = detail::simpson_norm(odd, h);
        if (ne < 1e-6 || no < 1e-6)
            throw SolverError("solve_modes: failed to split a degenerate doublet by parity");
        for (int i = 0; i < n; ++i) {
            even[i] /= ne;
            odd[i] /= no;
        }
        states[j].values = even;
        states[j].energy = rayleigh(even);
        states[j + 1].values = odd;
        states[j + 1].energy = rayleigh(odd);
        if (states[j].energy > states[j + 1].energy) std::swap(states[j], states[j + 1]);
        ++j;
    }

    for (auto& st : states) {
        const double p = detail::parity_indicator(st.values, h);
        if (std::fabs(p) < 0.9)
            throw SolverError("solve_modes: ambiguous parity classification; refine the grid");
        st.parity = p > 0.0 ? 1 : -1;
    }
    if (!(states[0].parity == 1 && states[1].parity == -1))
        throw SolverError("solve_modes: lowest two states are not even-then-odd");

    // Tail containment for the two states that enter the constants.
    for (int j = 0; j < 2; ++j) {
        const auto& v = states[j].values;
        const double edge = std::max(std::fabs(v[1]), std::fabs(v[n - 2]));
        if (edge * std::sqrt(h) > 1e-5)
            throw ValidationError("solve_modes: half_extent too small, wavefunction reaches the wall");
    }

    ModeSpectrum out;
    out.grid = grid;
    out.eps_s = states[0].energy;
    out.eps_a = states[1].energy;
    out.phi_s = std::move(states[0].values);
    out.phi_a = std::move(states[1].values);
    out.eps_s1 = std::numeric_limits<double>::quiet_NaN();
    for (int j = 2; j < count; ++j)
        if (states[j].parity == 1) {
            out.eps_s1 = states[j].energy;
            break;
        }
    if (!std::isfinite(out.eps_s1))
        throw SolverError("solve_modes: no symmetric excited state among the requested count");

    // Sign conventions: phi_s positive at its peak, phi_a positive on the
    // right well peak, fixing theta = 0 in phi_1(-x) = e^{i theta} phi_2(x).
    {
        auto& ps = out.phi_s;
        int arg = 0;
        for (int i = 0; i < n; ++i)
            if (std::fabs(ps[i]) > std::fabs(ps[arg])) arg = i;
        if (ps[arg] < 0.0)
            for (double& v : ps) v = -v;

        auto& pa = out.phi_a;
        const int mid = (n - 1) / 2;
        int argr = mid + 1;
        for (int i = mid + 1; i < n; ++i)
            if (std::fabs(pa[i]) > std::fabs(pa[argr])) argr = i;
        if (pa[argr] < 0.0)
            for (double& v : pa) v = -v;
    }
    return out;
}

// phi_1 = (phi_s + phi_a)/sqrt(2) lives in the right well; phi_2 is its
// mirror image.
inline LocalizedPair localized_pair(const ModeSpectrum& modes) {
    const std::size_t n = modes.phi_s.size();
    LocalizedPair pair;
    pair.phi_1.resize(n);
    pair.phi_2.resize(n);
    const double r = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < n; ++i) {
        pair.phi_1[i] = r * (modes.phi_s[i] + modes.phi_a[i]);
        pair.phi_2[i] = r * (modes.phi_s[i] - modes.phi_a[i]);
    }
    return pair;
}

// Simpson quadrature of the x-axis overlap integrals, reduced from 3D by
// the analytic transverse factors.
inline TwoModeConstants overlap_integrals(const ModeSpectrum& modes, const LocalizedPair& pair,
                                          const TransverseFactor& fy, const TransverseFactor& fz) {
    const std::size_t n = pair.phi_1.size();
    if (n != static_cast<std::size_t>(modes.grid.point_count))
        throw ValidationError("overlap_integrals: pair does not match the spectrum grid");
    const double h = modes.grid.spacing();
    std::vector<double> f0(n), f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pair.phi_1[i];
        const double q = pair.phi_2[i];
        f0[i] = p * p * p * p;
        f1[i] = p * p * p * q;
        f2[i] = p * p * q * q;
    }
    const double trans = fy.quartic_integral * fz.quartic_integral;
    TwoModeConstants c;
    c.t0 = simpson(f0, h) * trans;
    c.t1 = simpson(f1, h) * trans;
    c.t2 = simpson(f2, h) * trans;
    // Clamp splitting noise at exact degeneracy (huge barriers) so that
    // eps12 <= 0 holds.
    c.eps12 = std::min(0.0, 0.5 * (modes.eps_s - modes.eps_a));
    c.eps11 = 0.5 * (modes.eps_s + modes.eps_a) + fy.zero_point_energy + fz.zero_point_energy;
    return c;
}

struct Diagnostics {
    // g N T0 / (eps_s1 - eps_s), the printed perturbative criterion.
    double validity_ratio = 0.0;
    bool valid = false;    // ratio < 0.1
    bool marginal = false; // ratio < 1
    // N at which the dual-condensate interaction energy g T0 N(N-2)/4
    // reaches the gap; this is the scale behind the quoted particle-number
    // limits of the perturbative treatment.
    double perturbative_limit_n = 0.0;
    double tunneling_time_s = 0.0; // hbar / (eps_a - eps_s), in seconds
};

inline Diagnostics diagnostics(const ModeSet& modes, double interaction, int particle_count,
                               const NaturalScale& scale) {
    const double gap = modes.spectrum.eps_s1 - modes.spectrum.eps_s;
    const double g_t0 = interaction * modes.constants.t0;
    Diagnostics d;
    d.validity_ratio = g_t0 * particle_count / gap;
    d.valid = d.validity_ratio < 0.1;
    d.marginal = d.validity_ratio < 1.0;
    d.perturbative_limit_n = 1.0 + std::sqrt(1.0 + 4.0 * gap / g_t0);
    const double split = -2.0 * modes.constants.eps12; // eps_a - eps_s
    d.tunneling_time_s = split > 0.0 ? scale.time_unit / split
                                     : std::numeric_limits<double>::infinity();
    return d;
}

struct ModeSolveOptions {
    int point_count = 0;      // 0: auto
    double half_extent = 0.0; // 0: auto, 1.5x the turning point of state `count`
    int count = 4;
    double tol = 1e-10;
};

inline Grid1D auto_grid(const TrapSpec& spec, const ModeSolveOptions& opt = {}) {
    const PotentialProfile profile = potential_profile(spec);
    double half = opt.half_extent;
    if (half <= 0.0) {
        const double energy_est =
            (opt.count + 1.5) * profile.effective_frequency + profile.barrier_amplitude;
        half = 1.5 * std::sqrt(energy_est / profile.harmonic_coeff);
    }
    int n = opt.point_count;
    if (n <= 0) {
        const double h_target = std::min(profile.barrier_width / 8.0, 5e-3);
        n = static_cast<int>(std::ceil(2.0 * half / h_target)) + 1;
        n = std::clamp(n, 201, 20001);
        if (n % 2 == 0) ++n;
    }
    return Grid1D::uniform(half, n);
}

// Full pipeline: spectrum, localized pair, and the five constants.
inline ModeSet build_modes(const TrapSpec& spec, const ModeSolveOptions& opt = {}) {
    spec.validate();
    const NaturalScale scale = to_natural(spec);
    const PotentialProfile profile = potential_profile(spec);
    const Grid1D grid = auto_grid(spec, opt);
    ModeSet m;
    m.spectrum = solve_modes(profile, grid, opt.count, opt.tol);
    m.pair = localized_pair(m.spectrum);
    m.constants = overlap_integrals(
        m.spectrum, m.pair, transverse_quartic_factor(spec.omega_y, scale, spec.conventional_half_factor),
        transverse_quartic_factor(spec.omega_z, scale, spec.conventional_half_factor));
    return m;
}

} // namespace fragsim
