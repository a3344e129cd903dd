#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fragsim/banded.hpp"
#include "fragsim/rng.hpp"

#include "dense_oracle.hpp"

using namespace fragsim;

namespace {

SymmetricBandedMatrix make_banded(int n, int b) {
    SymmetricBandedMatrix m;
    m.n = n;
    m.half_bandwidth = b;
    m.diag.assign(n, 0.0);
    m.band1.assign(n - 1, 0.0);
    if (b == 2) m.band2.assign(std::max(n - 2, 0), 0.0);
    return m;
}

std::vector<std::vector<double>> to_dense(const SymmetricBandedMatrix& m) {
    std::vector<std::vector<double>> a(m.n, std::vector<double>(m.n, 0.0));
    for (int i = 0; i < m.n; ++i) a[i][i] = m.diag[i];
    for (int i = 0; i + 1 < m.n; ++i) a[i][i + 1] = a[i + 1][i] = m.band1[i];
    if (m.half_bandwidth == 2)
        for (int i = 0; i + 2 < m.n; ++i) a[i][i + 2] = a[i + 2][i] = m.band2[i];
    return a;
}

double align_error(const std::vector<double>& a, const std::vector<double>& b) {
    double dp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dp += a[i] * b[i];
    const double sign = dp >= 0.0 ? 1.0 : -1.0;
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::fabs(a[i] - sign * b[i]));
    return err;
}

} // namespace

TEST_CASE("2x2 exchange matrix") {
    auto m = make_banded(2, 1);
    m.band1[0] = 1.0;
    auto pairs = lowest_eigenpairs(m, 2, 1e-12);
    REQUIRE(pairs[0].eigenvalue == Catch::Approx(-1.0).margin(1e-12));
    REQUIRE(pairs[1].eigenvalue == Catch::Approx(1.0).margin(1e-12));
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(pairs[0].eigenvector[0] == Catch::Approx(r).margin(1e-10));
    CHECK(pairs[0].eigenvector[1] == Catch::Approx(-r).margin(1e-10));
}

TEST_CASE("tridiagonal Laplacian spectrum") {
    const int n = 50;
    auto m = make_banded(n, 1);
    for (int i = 0; i < n; ++i) m.diag[i] = 2.0;
    for (int i = 0; i + 1 < n; ++i) m.band1[i] = -1.0;
    auto pairs = lowest_eigenpairs(m, 5, 1e-10);
    for (int j = 0; j < 5; ++j) {
        const double expected = 2.0 - 2.0 * std::cos((j + 1) * std::numbers::pi / (n + 1));
        CHECK(pairs[j].eigenvalue == Catch::Approx(expected).margin(1e-10));
        CHECK(pairs[j].residual_norm <= 1e-10);
    }
}

TEST_CASE("pentadiagonal 3x3 against the closed form") {
    // N = 2 Fock matrix with eps11 = 0, g T0 = 1, T1 = T2 = 0, eps12 = -1
    auto m = make_banded(3, 2);
    m.diag = {1.0, 0.0, 1.0};
    m.band1 = {-std::numbers::sqrt2, -std::numbers::sqrt2};
    m.band2 = {0.0};
    auto pairs = lowest_eigenpairs(m, 1, 1e-12);
    const double expected = 0.5 * (1.0 - std::sqrt(17.0));
    CHECK(pairs[0].eigenvalue == Catch::Approx(expected).margin(1e-12));

    auto dense = oracle::jacobi_eigen(to_dense(m));
    CHECK(pairs[0].eigenvalue == Catch::Approx(dense.values[0]).margin(1e-12));
}

TEST_CASE("random banded matrices match the dense oracle") {
    Rng rng(0xB4DED);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform() * 60);
        const int b = trial % 2 == 0 ? 1 : 2;
        auto m = make_banded(n, b);
        for (int i = 0; i < n; ++i) m.diag[i] = rng.uniform(-2.0, 2.0);
        for (int i = 0; i + 1 < n; ++i) m.band1[i] = rng.uniform(-2.0, 2.0);
        if (b == 2)
            for (int i = 0; i + 2 < n; ++i) m.band2[i] = rng.uniform(-2.0, 2.0);

        const int k = std::min(3, n);
        auto pairs = lowest_eigenpairs(m, k, 1e-11);
        auto dense = oracle::jacobi_eigen(to_dense(m));
        for (int j = 0; j < k; ++j) {
            REQUIRE(pairs[j].eigenvalue == Catch::Approx(dense.values[j]).margin(1e-10));
            if (j + 1 < n && dense.values[j + 1] - dense.values[j] > 1e-6)
                CHECK(align_error(pairs[j].eigenvector, dense.vectors[j]) < 1e-8);
        }
        for (int j = 0; j + 1 < k; ++j)
            CHECK(pairs[j].eigenvalue <= pairs[j + 1].eigenvalue);
    }
}

TEST_CASE("identity shift moves eigenvalues, not eigenvectors") {
    Rng rng(42);
    const int n = 40;
    auto m = make_banded(n, 2);
    for (int i = 0; i < n; ++i) m.diag[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i + 1 < n; ++i) m.band1[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i + 2 < n; ++i) m.band2[i] = rng.uniform(-1.0, 1.0);
    auto base = lowest_eigenpairs(m, 2, 1e-11);

    const double shift = 0.73;
    auto shifted = m;
    for (double& d : shifted.diag) d += shift;
    auto moved = lowest_eigenpairs(shifted, 2, 1e-11);
    for (int j = 0; j < 2; ++j) {
        CHECK(moved[j].eigenvalue - base[j].eigenvalue == Catch::Approx(shift).margin(1e-9));
        CHECK(align_error(base[j].eigenvector, moved[j].eigenvector) < 1e-7);
    }
}

TEST_CASE("degenerate pair returns an orthonormal basis") {
    auto m = make_banded(4, 1);
    m.diag = {1.0, 1.0, 3.0, 4.0};
    auto pairs = lowest_eigenpairs(m, 2, 1e-12);
    CHECK(pairs[0].eigenvalue == Catch::Approx(1.0).margin(1e-12));
    CHECK(pairs[1].eigenvalue == Catch::Approx(1.0).margin(1e-12));
    double dot = 0.0;
    for (int i = 0; i < 4; ++i) dot += pairs[0].eigenvector[i] * pairs[1].eigenvector[i];
    CHECK(std::fabs(dot) < 1e-10);
}

TEST_CASE("input validation") {
    auto m = make_banded(3, 1);
    CHECK_THROWS_AS(lowest_eigenpairs(m, 4, 1e-10), ValidationError);
    CHECK_THROWS_AS(lowest_eigenpairs(m, 0, 1e-10), ValidationError);
    CHECK_THROWS_AS(lowest_eigenpairs(m, 1, 0.0), ValidationError);
    m.diag[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(lowest_eigenpairs(m, 1, 1e-10), ValidationError);
}

TEST_CASE("iteration budget exhaustion reports the best residual") {
    auto m = make_banded(4, 1);
    m.diag = {0.5, -0.25, 1.5, 2.0};
    m.band1 = {0.3, -0.2, 0.1};
    try {
        lowest_eigenpairs(m, 1, 1e-300);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.best_residual > 0.0);
        CHECK(e.best_residual < 1e-10);
    }
}
