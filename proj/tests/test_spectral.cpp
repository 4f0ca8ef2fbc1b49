#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "rosa/spectral.hpp"

using namespace rosa;

TEST_CASE("pseudo-circulant structure and dense expansion") {
    PseudoCirculant m{4, {3, 1, 0, -1}};
    auto d = m.dense();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            // constant along diagonals, sign flip across the wrap
            int i2 = i + 1, j2 = j + 1;
            if (i2 < 4 && j2 < 4) CHECK(d[i][j] == d[i2][j2]);
            if (i < 3) CHECK(d[i + 1][0] == -d[0][4 - 1 - i]);
        }
    CHECK(d[0][0] == 3);
    CHECK(d[1][0] == 1);
    CHECK(d[0][1] == -m.firstColumn[3]);
}

TEST_CASE("elementary matrices sum to the expansion matrix") {
    for (int n : {4, 6, 10}) {
        Edgeword u = subrosa_edgeword(n);
        AbelianVector ab = abelianize(u);
        PseudoCirculant sum{n, std::vector<long long>(n, 0)};
        for (int i = 0; i < n / 2; ++i) sum = sum + ab[i] * elementary_matrix(n, i);
        CHECK(sum == expansion_matrix(n, u));
    }
}

TEST_CASE("expansion acts on each plane basis as the scalar lambda_k") {
    for (int n : {4, 6, 8, 12}) {
        Edgeword u = subrosa_edgeword(n);
        auto m = expansion_matrix(n, u).dense();
        Spectrum s = spectrum(n, u);
        for (int k = 0; k < n / 2; ++k) {
            PlaneBasis b = plane_basis(n, k);
            for (const auto& row : {b.cosRow, b.sinRow}) {
                for (int i = 0; i < n; ++i) {
                    double mi = 0;
                    for (int j = 0; j < n; ++j) mi += m[i][j] * row[j];
                    CHECK(std::fabs(mi - s.lambdas[k] * row[i]) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("complex eigenvector identity for random pseudo-circulants") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long long> coef(-9, 9);
    for (int n = 4; n <= 12; n += 2) {
        for (int trial = 0; trial < 200; ++trial) {
            PseudoCirculant m{n, std::vector<long long>(n)};
            for (auto& c : m.firstColumn) c = coef(rng);
            auto d = m.dense();
            for (int r = 0; r < n; ++r) {  // zeta = exp(i(2r+1)pi/n), zeta^n = -1
                std::complex<double> zeta = std::polar(1.0, (2.0 * r + 1.0) * M_PI / n);
                // first-column convention: eigenvalue is sum m_j zeta^{-j}
                std::complex<double> lambda = 0;
                std::complex<double> zj = 1;
                for (int j = 0; j < n; ++j) {
                    lambda += double(m.firstColumn[j]) * zj;
                    zj *= std::conj(zeta);
                }
                for (int i = 0; i < n; ++i) {
                    std::complex<double> mv = 0;
                    for (int j = 0; j < n; ++j)
                        mv += double(d[i][j]) * std::pow(zeta, double(j));
                    std::complex<double> lv = lambda * std::pow(zeta, double(i));
                    CHECK(std::abs(mv - lv) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("Q_n near-orthogonality identities") {
    for (int n = 4; n <= 40; n += 2) {
        int half = n / 2;
        EigenvalueMatrix q = eigenvalue_matrix(n);
        // D[j][l] = cos((2j+1) l pi / n); Q_n D^T = (n/2) Id
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j) {
                double acc = 0;
                for (int l = 0; l < half; ++l)
                    acc += q.entries[i][l] * std::cos((2.0 * j + 1.0) * l * M_PI / n);
                CHECK(std::fabs(acc - (i == j ? n / 2.0 : 0.0)) < 1e-9);
            }
        // Q_n gamma^T = (n/2, 0, ..., 0)
        for (int i = 0; i < half; ++i) {
            double acc = 0;
            for (int l = 0; l < half; ++l) acc += q.entries[i][l] * std::cos(l * M_PI / n);
            CHECK(std::fabs(acc - (i == 0 ? n / 2.0 : 0.0)) < 1e-9);
        }
    }
}

TEST_CASE("Sub Rosa spectra match the closed form and published values") {
    const std::vector<std::pair<int, std::vector<double>>> table = {
        {4, {6.83, 1.17}},
        {6, {14.93, 2, 1.07}},
        {8, {26.27, 3.24, 1.45, 1.04}},
        {10, {40.86, 4.85, 2, 1.26, 1.03}},
        {12, {58.70, 6.83, 2.70, 1.59, 1.17, 1.02}},
    };
    for (const auto& [n, expected] : table) {
        Spectrum s = spectrum(n, subrosa_edgeword(n));
        REQUIRE(static_cast<int>(s.lambdas.size()) == n / 2);
        for (int k = 0; k < n / 2; ++k) {
            CHECK(std::fabs(s.lambdas[k] - expected[k]) < 0.01);
            CHECK(std::fabs(s.lambdas[k] - subrosa_eigenvalue(n, k)) < 1e-9);
            CHECK(s.lambdas[k] > 1);
        }
        CHECK(classify_planarity(s) == Planarity::NonPlanar);
    }
}

TEST_CASE("planarity classification cases") {
    CHECK(classify_planarity(Spectrum{4, {6.83, 0.34}}) == Planarity::PlanarSlope0);
    CHECK(classify_planarity(Spectrum{4, {6.83, -0.34}}) == Planarity::PlanarSlope0);
    CHECK(classify_planarity(Spectrum{4, {6.83, 1.17}}) == Planarity::NonPlanar);
    CHECK(classify_planarity(Spectrum{4, {6.83, 1.0}}) == Planarity::Indeterminate);
    CHECK(classify_planarity(Spectrum{4, {6.83, -1.0}}) == Planarity::Indeterminate);
    CHECK(classify_planarity(Spectrum{4, {0.5, 0.3}}) == Planarity::Indeterminate);
    // contracting on the slope plane but expanding elsewhere is not planar-0
    CHECK(classify_planarity(Spectrum{4, {0.5, 2.0}}) == Planarity::Indeterminate);
    CHECK(classify_planarity(Spectrum{6, {14.93, 2, 1.07}}) == Planarity::NonPlanar);
    CHECK_THROWS_AS(classify_planarity(Spectrum{4, {2, 0.5}}, 0.0), PreconditionFailed);
    // tolerance widens the indeterminate band
    CHECK(classify_planarity(Spectrum{4, {6.83, 0.95}}, 0.1) == Planarity::Indeterminate);
}
