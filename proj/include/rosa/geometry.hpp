#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "rosa/algebraic.hpp"
#include "rosa/errors.hpp"

namespace rosa {

inline void require_even_n(int n) {
    if (n < 4 || n % 2 != 0) throw PreconditionFailed("n must be even and >= 4");
}

struct Vec2 {
    double x = 0, y = 0;
    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

// One of the 2n unit directions +/- v_i, v_i = (cos(i*pi/n), sin(i*pi/n)).
struct DirectionIndex {
    int i = 0;     // 0 <= i < n
    int sign = 1;  // +1 for v_i, -1 for -v_i

    // Canonical form of v_d for any integer d, using v_{i+n} = -v_i.
    static DirectionIndex from_raw(int d, int n) {
        d %= 2 * n;
        if (d < 0) d += 2 * n;
        return d < n ? DirectionIndex{d, +1} : DirectionIndex{d - n, -1};
    }
    int raw(int n) const { return sign > 0 ? i : i + n; }
    DirectionIndex reversed(int n) const { return from_raw(raw(n) + n, n); }
    bool operator==(const DirectionIndex&) const = default;
};

inline Vec2 direction_vector(int n, DirectionIndex d) {
    require_even_n(n);
    if (d.i < 0 || d.i >= n) throw PreconditionFailed("direction index out of range");
    double th = d.i * M_PI / n;
    return {d.sign * std::cos(th), d.sign * std::sin(th)};
}

// Integer point of Z^n: the lift of a tiling vertex.
using LiftedPoint = std::vector<int>;

inline LiftedPoint lifted_zero(int n) { return LiftedPoint(n, 0); }

inline LiftedPoint operator+(LiftedPoint a, const LiftedPoint& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline LiftedPoint operator-(LiftedPoint a, const LiftedPoint& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

// Unit step of the lifted direction d: +e_i or -e_i.
inline void lifted_step(LiftedPoint& p, DirectionIndex d) { p[d.i] += d.sign; }

inline Vec2 embed(int n, const LiftedPoint& p) {
    Vec2 r;
    for (int i = 0; i < n; ++i) {
        double th = i * M_PI / n;
        r.x += p[i] * std::cos(th);
        r.y += p[i] * std::sin(th);
    }
    return r;
}

// Generators of the invariant plane E_n^k.
struct PlaneBasis {
    int n = 0, k = 0;
    std::vector<double> cosRow, sinRow;  // cos/sin((2k+1) i pi / n), 0 <= i < n
};

inline PlaneBasis plane_basis(int n, int k) {
    require_even_n(n);
    if (k < 0 || k >= n / 2) throw PreconditionFailed("plane index k out of range");
    PlaneBasis b{n, k, std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        double th = (2.0 * k + 1.0) * i * M_PI / n;
        b.cosRow[i] = std::cos(th);
        b.sinRow[i] = std::sin(th);
    }
    return b;
}

// Components of p along the (orthogonal) generators of the plane.
// |cosRow|^2 = |sinRow|^2 = n/2, so the projection is two dot products.
inline Vec2 plane_component(const std::vector<double>& p, const PlaneBasis& b) {
    double pc = 0, ps = 0;
    for (int i = 0; i < b.n; ++i) {
        pc += p[i] * b.cosRow[i];
        ps += p[i] * b.sinRow[i];
    }
    double s = std::sqrt(2.0 / b.n);
    return {pc * s, ps * s};
}

inline Vec2 plane_component(const LiftedPoint& p, const PlaneBasis& b) {
    return plane_component(std::vector<double>(p.begin(), p.end()), b);
}

// Euclidean distance from p to span(basis).
inline double slope_distance(const std::vector<double>& p, const PlaneBasis& b) {
    double norm2 = 0;
    for (double c : p) norm2 += c * c;
    Vec2 comp = plane_component(p, b);
    double d2 = norm2 - comp.x * comp.x - comp.y * comp.y;
    return d2 > 0 ? std::sqrt(d2) : 0.0;
}

inline double slope_distance(const LiftedPoint& p, const PlaneBasis& b) {
    return slope_distance(std::vector<double>(p.begin(), p.end()), b);
}

// One step of the lifted rotation by pi/n: e_i -> e_{i+1}, e_{n-1} -> -e_0.
inline LiftedPoint rotate_lifted(const LiftedPoint& p, int steps = 1) {
    int n = static_cast<int>(p.size());
    steps %= 2 * n;
    if (steps < 0) steps += 2 * n;
    LiftedPoint r(n, 0);
    for (int i = 0; i < n; ++i) {
        int d = i + steps;
        int sign = 1;
        if (d >= 2 * n) d -= 2 * n;
        if (d >= n) {
            d -= n;
            sign = -1;
        }
        r[d] += sign * p[i];
    }
    return r;
}

// Unit integer square at position pos spanned by e_i and e_j, i < j:
// the lift of the rhombus tile of type (i, j).
struct Tile {
    LiftedPoint pos;
    int8_t i = 0, j = 0;

    bool operator==(const Tile&) const = default;
    friend bool operator<(const Tile& a, const Tile& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

// Tile with a corner at `corner` spanned by signed unit vectors d1, d2.
inline Tile tile_from_corner(int n, LiftedPoint corner, DirectionIndex d1, DirectionIndex d2) {
    if (d1.sign < 0) corner[d1.i] -= 1;
    if (d2.sign < 0) corner[d2.i] -= 1;
    int a = d1.i, b = d2.i;
    if (a > b) std::swap(a, b);
    if (a == b) throw PreconditionFailed("degenerate tile");
    return Tile{std::move(corner), static_cast<int8_t>(a), static_cast<int8_t>(b)};
}

// Rotation action on tiles: type (i, n-1) at x maps to (0, i+1) at rho(x)-e_0,
// other types (i, j) map to (i+1, j+1) at rho(x).
inline Tile rotate_tile(const Tile& t, int steps = 1) {
    int n = static_cast<int>(t.pos.size());
    steps %= 2 * n;
    if (steps < 0) steps += 2 * n;
    Tile r = t;
    for (int s = 0; s < steps; ++s) {
        LiftedPoint p = rotate_lifted(r.pos, 1);
        if (r.j == n - 1) {
            p[0] -= 1;
            r = Tile{std::move(p), 0, static_cast<int8_t>(r.i + 1)};
        } else {
            r = Tile{std::move(p), static_cast<int8_t>(r.i + 1), static_cast<int8_t>(r.j + 1)};
        }
    }
    return r;
}

inline double tile_area(int n, const Tile& t) { return std::sin((t.j - t.i) * M_PI / n); }

// Four corners of the tile, in Z^n.
inline std::array<LiftedPoint, 4> tile_corners(const Tile& t) {
    LiftedPoint a = t.pos, b = t.pos, c = t.pos, d = t.pos;
    b[t.i] += 1;
    c[t.j] += 1;
    d[t.i] += 1;
    d[t.j] += 1;
    return {a, b, c, d};
}

}  // namespace rosa
