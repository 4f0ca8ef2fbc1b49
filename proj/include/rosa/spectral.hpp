#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rosa/edgeword.hpp"
#include "rosa/errors.hpp"
#include "rosa/geometry.hpp"

namespace rosa {

// n x n integer matrix with m_{i,j} = -m_{i',j'} whenever i-j = i'-j' +- n,
// fully determined by its first column (m_0,...,m_{n-1}).
struct PseudoCirculant {
    int n = 0;
    std::vector<long long> firstColumn;

    long long entry(int i, int j) const {
        int d = i - j;
        return d >= 0 ? firstColumn[d] : -firstColumn[d + n];
    }

    std::vector<std::vector<long long>> dense() const {
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = entry(i, j);
        return m;
    }

    friend PseudoCirculant operator+(PseudoCirculant a, const PseudoCirculant& b) {
        for (int i = 0; i < a.n; ++i) a.firstColumn[i] += b.firstColumn[i];
        return a;
    }
    friend PseudoCirculant operator*(long long s, PseudoCirculant a) {
        for (auto& c : a.firstColumn) c *= s;
        return a;
    }
    bool operator==(const PseudoCirculant&) const = default;
};

// T_{n,0} = Id; for i > 0, first column has m_i = 1, m_{n-i} = -1.
inline PseudoCirculant elementary_matrix(int n, int i) {
    require_even_n(n);
    if (i < 0 || i >= n / 2) throw PreconditionFailed("elementary matrix index out of range");
    PseudoCirculant m{n, std::vector<long long>(n, 0)};
    if (i == 0) {
        m.firstColumn[0] = 1;
    } else {
        m.firstColumn[i] = 1;
        m.firstColumn[n - i] = -1;
    }
    return m;
}

// Expansion matrix of the edgeword u: sum_i [u]_i T_{n,i}.
inline PseudoCirculant expansion_matrix(int n, const Edgeword& u) {
    require_even_n(n);
    if (u.n != n) throw PreconditionFailed("edgeword alphabet does not match n");
    validate_edgeword(u);
    AbelianVector ab = abelianize(u);
    PseudoCirculant m{n, std::vector<long long>(n, 0)};
    m.firstColumn[0] = ab[0];
    for (int i = 1; i < n / 2; ++i) {
        m.firstColumn[i] = ab[i];
        m.firstColumn[n - i] = -ab[i];
    }
    return m;
}

// Q_n[i][j] = eta_j cos((2i+1) j pi / n), eta_0 = 1, eta_j = 2 otherwise;
// maps abelianized edgewords to the eigenvalues on the planes E_n^k.
struct EigenvalueMatrix {
    int n = 0;
    std::vector<std::vector<double>> entries;  // (n/2) x (n/2)
};

inline EigenvalueMatrix eigenvalue_matrix(int n) {
    require_even_n(n);
    int half = n / 2;
    EigenvalueMatrix q{n, std::vector<std::vector<double>>(half, std::vector<double>(half))};
    for (int i = 0; i < half; ++i)
        for (int j = 0; j < half; ++j) {
            double eta = j == 0 ? 1.0 : 2.0;
            q.entries[i][j] = eta * std::cos((2.0 * i + 1.0) * j * M_PI / n);
        }
    return q;
}

// Eigenvalues of the expansion of u on E_n^0, ..., E_n^{n/2-1}.
struct Spectrum {
    int n = 0;
    std::vector<double> lambdas;
};

inline Spectrum spectrum(int n, const Edgeword& u) {
    if (u.letters.empty()) throw PreconditionFailed("spectrum of empty edgeword");
    EigenvalueMatrix q = eigenvalue_matrix(n);
    AbelianVector ab = abelianize(u);
    if (static_cast<int>(ab.size()) != n / 2)
        throw PreconditionFailed("edgeword alphabet does not match n");
    Spectrum s{n, std::vector<double>(n / 2, 0.0)};
    for (int k = 0; k < n / 2; ++k)
        for (int j = 0; j < n / 2; ++j) s.lambdas[k] += q.entries[k][j] * ab[j];
    return s;
}

// Closed form for the Sub Rosa eigenvalues: 1/sin^2((2k+1)pi/(2n)).
inline double subrosa_eigenvalue(int n, int k) {
    require_even_n(n);
    if (k < 0 || k >= n / 2) throw PreconditionFailed("plane index k out of range");
    double s = std::sin((2.0 * k + 1.0) * M_PI / (2.0 * n));
    return 1.0 / (s * s);
}

enum class Planarity { PlanarSlope0, NonPlanar, Indeterminate };

inline std::string to_string(Planarity p) {
    switch (p) {
        case Planarity::PlanarSlope0: return "PlanarSlope0";
        case Planarity::NonPlanar: return "NonPlanar";
        case Planarity::Indeterminate: return "Indeterminate";
    }
    return "?";
}

// PlanarSlope0: expanding on E_n^0 only, strictly contracting elsewhere.
// NonPlanar: expanding on at least two planes (expanding dimension >= 4).
// Anything within tol of the unit circle is Indeterminate.
inline Planarity classify_planarity(const Spectrum& s, double tol = 1e-6) {
    if (tol <= 0) throw PreconditionFailed("tolerance must be positive");
    int expanding = 0, undecided = 0;
    for (double l : s.lambdas) {
        double a = std::fabs(l);
        if (a > 1 + tol)
            ++expanding;
        else if (a >= 1 - tol)
            ++undecided;
    }
    if (expanding >= 2) return Planarity::NonPlanar;
    if (undecided > 0) return Planarity::Indeterminate;
    if (expanding == 1 && s.lambdas[0] > 1 + tol) return Planarity::PlanarSlope0;
    return Planarity::Indeterminate;
}

}  // namespace rosa
