#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "fragsim/errors.hpp"
#include "fragsim/rng.hpp"

namespace fragsim {

// Real symmetric banded matrix, upper bands stored: diag[i] = A(i,i),
// band1[i] = A(i,i+1), band2[i] = A(i,i+2). Symmetry holds by construction.
struct SymmetricBandedMatrix {
    int n = 0;
    int half_bandwidth = 1; // 1 or 2
    std::vector<double> diag;
    std::vector<double> band1;
    std::vector<double> band2; // unused when half_bandwidth == 1

    void validate() const {
        if (n < 1) throw ValidationError("banded: dimension must be >= 1");
        if (half_bandwidth != 1 && half_bandwidth != 2)
            throw ValidationError("banded: half_bandwidth must be 1 or 2");
        if (static_cast<int>(diag.size()) != n ||
            static_cast<int>(band1.size()) != std::max(n - 1, 0) ||
            (half_bandwidth == 2 && static_cast<int>(band2.size()) != std::max(n - 2, 0)))
            throw ValidationError("banded: band array lengths do not match dimension");
        auto finite = [](const std::vector<double>& v) {
            for (double x : v)
                if (!std::isfinite(x)) return false;
            return true;
        };
        if (!finite(diag) || !finite(band1) || (half_bandwidth == 2 && !finite(band2)))
            throw ValidationError("banded: non-finite band entry");
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : diag) m = std::max(m, std::fabs(x));
        for (double x : band1) m = std::max(m, std::fabs(x));
        if (half_bandwidth == 2)
            for (double x : band2) m = std::max(m, std::fabs(x));
        return m;
    }

    // y = A x
    void multiply(const std::vector<double>& x, std::vector<double>& y) const {
        y.assign(n, 0.0);
        for (int i = 0; i < n; ++i) y[i] = diag[i] * x[i];
        for (int i = 0; i + 1 < n; ++i) {
            y[i] += band1[i] * x[i + 1];
            y[i + 1] += band1[i] * x[i];
        }
        if (half_bandwidth == 2)
            for (int i = 0; i + 2 < n; ++i) {
                y[i] += band2[i] * x[i + 2];
                y[i + 2] += band2[i] * x[i];
            }
    }
};

struct EigenPair {
    double eigenvalue = 0.0;
    std::vector<double> eigenvector;
    // ||A v - lambda v||_2 / max(1, ||A||_inf-estimate); dimensionless
    double residual_norm = 0.0;
};

namespace detail {

// LDL^T of (A - shift I) without pivoting. Returns the number of negative
// pivots, which by Sylvester's law equals the number of eigenvalues below
// the shift. Zero pivots are nudged and counted as negative, the standard
// slicing convention.
struct BandedLdlt {
    int n = 0;
    int b = 1;
    std::vector<double> d, l1, l2;

    int factor(const SymmetricBandedMatrix& a, double shift, double pivot_floor) {
        n = a.n;
        b = a.half_bandwidth;
        d.assign(n, 0.0);
        l1.assign(std::max(n - 1, 0), 0.0);
        if (b == 2) l2.assign(std::max(n - 2, 0), 0.0);
        int negatives = 0;
        for (int i = 0; i < n; ++i) {
            double s = a.diag[i] - shift;
            if (i >= 1) s -= l1[i - 1] * l1[i - 1] * d[i - 1];
            if (b == 2 && i >= 2) s -= l2[i - 2] * l2[i - 2] * d[i - 2];
            if (s == 0.0) s = -pivot_floor;
            if (s < 0.0) ++negatives;
            if (std::fabs(s) < pivot_floor) s = std::copysign(pivot_floor, s);
            d[i] = s;
            if (i + 1 < n) {
                double t = a.band1[i];
                if (b == 2 && i >= 1) t -= l2[i - 1] * l1[i - 1] * d[i - 1];
                l1[i] = t / d[i];
            }
            if (b == 2 && i + 2 < n) l2[i] = a.band2[i] / d[i];
        }
        return negatives;
    }

    // Solve (A - shift I) x = rhs in place.
    void solve(std::vector<double>& x) const {
        for (int i = 0; i < n; ++i) {
            if (i >= 1) x[i] -= l1[i - 1] * x[i - 1];
            if (b == 2 && i >= 2) x[i] -= l2[i - 2] * x[i - 2];
        }
        for (int i = 0; i < n; ++i) x[i] /= d[i];
        for (int i = n - 1; i >= 0; --i) {
            if (i + 1 < n) x[i] -= l1[i] * x[i + 1];
            if (b == 2 && i + 2 < n) x[i] -= l2[i] * x[i + 2];
        }
    }
};

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void fill_start_vector(std::vector<double>& v, std::uint64_t counter) {
    std::uint64_t state = 0xD1B54A32D192ED03ULL ^ (counter * 0x9E3779B97F4A7C15ULL);
    for (double& x : v) {
        x = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
    }
}

} // namespace detail

// k lowest eigenpairs of a symmetric banded matrix via inertia-count
// bisection followed by shifted inverse iteration with the banded LDL^T
// factorization. Deterministic for a fixed matrix; eigenvalues ascending;
// eigenvector sign fixed so the first largest-magnitude component is
// positive. `tol` bounds the scaled residual (see EigenPair).
inline std::vector<EigenPair> lowest_eigenpairs(const SymmetricBandedMatrix& a, int k,
                                                double tol = 1e-10) {
    a.validate();
    if (k < 1 || k > a.n)
        throw ValidationError("lowest_eigenpairs: k must satisfy 1 <= k <= n");
    if (!(tol > 0.0)) throw ValidationError("lowest_eigenpairs: tol must be positive");

    const int n = a.n;
    const double scale = std::max(1.0, a.max_abs());
    const double eps = std::numeric_limits<double>::epsilon();
    const double pivot_floor = eps * eps * scale;

    // Gershgorin bounds
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(a.band1[i - 1]);
        if (i + 1 < n) r += std::fabs(a.band1[i]);
        if (a.half_bandwidth == 2) {
            if (i > 1) r += std::fabs(a.band2[i - 2]);
            if (i + 2 < n) r += std::fabs(a.band2[i]);
        }
        lo = std::min(lo, a.diag[i] - r);
        hi = std::max(hi, a.diag[i] + r);
    }

    detail::BandedLdlt ldlt;
    std::vector<double> shifts(k);
    for (int j = 0; j < k; ++j) {
        double l = lo, h = hi;
        for (int it = 0; it < 120 && (h - l) > 4.0 * eps * std::max({std::fabs(l), std::fabs(h), 1.0}); ++it) {
            double mid = 0.5 * (l + h);
            if (ldlt.factor(a, mid, pivot_floor) >= j + 1)
                h = mid;
            else
                l = mid;
        }
        shifts[j] = 0.5 * (l + h);
    }

    const long budget = 10L * n;
    std::vector<EigenPair> result;
    result.reserve(k);
    std::vector<double> v(n), w(n), av(n);
    for (int j = 0; j < k; ++j) {
        ldlt.factor(a, shifts[j], eps * scale);
        std::uint64_t counter = static_cast<std::uint64_t>(j);
        detail::fill_start_vector(v, counter);
        double best_res = std::numeric_limits<double>::infinity();
        double lambda = shifts[j];
        bool converged = false;
        for (long it = 0; it < budget; ++it) {
            w = v;
            ldlt.solve(w);
            for (const auto& prev : result) {
                double c = detail::dot(prev.eigenvector, w);
                for (int i = 0; i < n; ++i) w[i] -= c * prev.eigenvector[i];
            }
            double nw = detail::norm2(w);
            if (!(nw > 1e-8) || !std::isfinite(nw)) {
                counter += k + 1;
                detail::fill_start_vector(v, counter);
                continue;
            }
            for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
            a.multiply(v, av);
            lambda = detail::dot(v, av);
            double res = 0.0;
            for (int i = 0; i < n; ++i) {
                double r = av[i] - lambda * v[i];
                res += r * r;
            }
            res = std::sqrt(res) / scale;
            best_res = std::min(best_res, res);
            if (res <= tol) {
                converged = true;
                best_res = res;
                break;
            }
        }
        if (!converged)
            throw SolverError("lowest_eigenpairs: inverse iteration exhausted its budget", best_res);

        int arg = 0;
        double m = 0.0;
        for (int i = 0; i < n; ++i)
            if (std::fabs(v[i]) > m) {
                m = std::fabs(v[i]);
                arg = i;
            }
        if (v[arg] < 0.0)
            for (double& x : v) x = -x;

        result.push_back(EigenPair{lambda, v, best_res});
    }

    std::stable_sort(result.begin(), result.end(),
                     [](const EigenPair& x, const EigenPair& y) { return x.eigenvalue < y.eigenvalue; });
    return result;
}

} // namespace fragsim
