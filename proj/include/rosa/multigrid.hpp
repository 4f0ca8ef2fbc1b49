#pragma once

#include <cmath>
#include <vector>

#include "rosa/algebraic.hpp"
#include "rosa/edgeword.hpp"
#include "rosa/errors.hpp"
#include "rosa/geometry.hpp"
#include "rosa/substitution.hpp"

namespace rosa {

// De Bruijn multigrid G_n(1/2): for each family j in [0, n) the grid lines
// { z : z.v_j = k - 1/2, k integer }.  Offsets other than 1/2 are out of
// scope (regularity of G_n(1/2) is assumed).

// Word read by the positive horizontal ray: crossings of vertical lines
// (family 0) emit the letter 0; coincident double-crossings of the families
// (j, n-j) emit the letter 2j.  Positions are (k - 1/2)/cos(j*pi/n), ordered
// by exact comparison; this must reproduce the billiard word.
inline Edgeword halfline_word(int n, int L) {
    require_even_n(n);
    if (L < 0) throw PreconditionFailed("negative length");
    int families = n / 2;  // family n/2 is parallel to the ray, families > n/2 pair up
    std::vector<long long> next(families, 1);
    std::vector<AlgebraicReal> cosv;
    for (int j = 0; j < families; ++j) cosv.push_back(AlgebraicReal::cos_pi(j, n));
    Edgeword word{n, {}};
    word.letters.reserve(L);
    for (int step = 0; step < L; ++step) {
        int best = 0;
        for (int j = 1; j < families; ++j) {
            auto lhs = AlgebraicReal::rational(2 * next[j] - 1) * cosv[best];
            auto rhs = AlgebraicReal::rational(2 * next[best] - 1) * cosv[j];
            if (compare_exact(lhs, rhs) == Ordering::Less) best = j;
        }
        // The paired family n-j crosses the ray at the same point: with
        // z = (t, 0) and t*cos(j*pi/n) = k - 1/2 we get
        // z.v_{n-j} = -t*cos(j*pi/n) = (1-k) - 1/2, an exact line of index 1-k.
        if (best > 0) {
            double t = (next[best] - 0.5) / std::cos(best * M_PI / n);
            double paired = t * std::cos((n - best) * M_PI / n) + 0.5;
            if (std::fabs(paired - std::round(paired)) > 1e-9)
                throw ConsistencyError("paired grid family misses the ray crossing");
        }
        word.letters.push_back(2 * best);
        next[best]++;
    }
    return word;
}

// Dual rhombus tiling of G_n(1/2) restricted to intersections within the
// given radius, recentered so the central vertex (the dual of the cell
// containing the origin) lifts to 0.  Triple intersections are impossible
// at offsets 1/2 and abort if detected.
inline LiftedPatch dual_patch(int n, double radius) {
    require_even_n(n);
    if (n > kMaxPatchN) throw PreconditionFailed("n exceeds the supported patch dimension");
    if (radius <= 0) throw PreconditionFailed("radius must be positive");
    if (radius > 300) throw LimitExceeded("multigrid radius cap exceeded");

    std::vector<Vec2> v(n);
    for (int j = 0; j < n; ++j) v[j] = {std::cos(j * M_PI / n), std::sin(j * M_PI / n)};

    long long kLo = static_cast<long long>(std::ceil(0.5 - radius));
    long long kHi = static_cast<long long>(std::floor(0.5 + radius));

    std::vector<Tile> tiles;
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = j1 + 1; j2 < n; ++j2) {
            double det = v[j1].cross(v[j2]);  // sin((j2-j1)*pi/n) != 0
            for (long long k1 = kLo; k1 <= kHi; ++k1)
                for (long long k2 = kLo; k2 <= kHi; ++k2) {
                    double c1 = k1 - 0.5, c2 = k2 - 0.5;
                    Vec2 z{(c1 * v[j2].y - c2 * v[j1].y) / det,
                           (c2 * v[j1].x - c1 * v[j2].x) / det};
                    if (z.norm() > radius) continue;
                    LiftedPoint q(n, 0);
                    q[j1] = static_cast<int>(k1);
                    q[j2] = static_cast<int>(k2);
                    for (int i = 0; i < n; ++i) {
                        if (i == j1 || i == j2) continue;
                        double a = z.dot(v[i]) + 0.5;
                        if (std::fabs(a - std::round(a)) < 1e-9)
                            throw ConsistencyError(
                                "degenerate triple intersection in the multigrid");
                        q[i] = static_cast<int>(std::ceil(a));
                    }
                    for (int i = 0; i < n; ++i) q[i] -= 1;  // central vertex lifts to 0
                    tiles.push_back(Tile{std::move(q), static_cast<int8_t>(j1),
                                         static_cast<int8_t>(j2)});
                }
        }
    return patch_from_tiles(n, tiles);
}

}  // namespace rosa
