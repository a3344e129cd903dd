#pragma once

// Test-only brute-force eigensolver: classical cyclic Jacobi on a dense
// symmetric matrix. Kept independent of the banded solver on purpose.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct DenseEigen {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // vectors[j] for values[j]
};

inline DenseEigen jacobi_eigen(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    auto off = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
        return s;
    };

    for (int sweep = 0; sweep < 200 && off() > 1e-26 * n * n; ++sweep) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a[order[j]][order[j]] < a[order[i]][order[i]]) std::swap(order[i], order[j]);

    DenseEigen out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
        out.values[j] = a[order[j]][order[j]];
        for (int i = 0; i < n; ++i) out.vectors[j][i] = v[i][order[j]];
    }
    return out;
}

} // namespace oracle
