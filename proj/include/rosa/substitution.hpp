#pragma once

#include <algorithm>
#include <array>
#include <cstring>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rosa/edgeword.hpp"
#include "rosa/errors.hpp"
#include "rosa/geometry.hpp"
#include "rosa/kenyon.hpp"
#include "rosa/spectral.hpp"

namespace rosa {

inline constexpr int kMaxPatchN = 12;

// Compact tile for large patches: coordinates in int16, type in two bytes.
struct PackedTile {
    std::array<int16_t, kMaxPatchN> c{};
    int8_t i = 0, j = 0;

    friend bool operator<(const PackedTile& a, const PackedTile& b) {
        int r = std::memcmp(a.c.data(), b.c.data(), sizeof(a.c));
        if (r != 0) return r < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
    friend bool operator==(const PackedTile& a, const PackedTile& b) {
        return a.i == b.i && a.j == b.j && a.c == b.c;
    }
};

inline PackedTile pack_tile(int n, const Tile& t) {
    PackedTile p;
    for (int d = 0; d < n; ++d) {
        if (t.pos[d] < -32000 || t.pos[d] > 32000)
            throw LimitExceeded("patch coordinates exceed packed range");
        p.c[d] = static_cast<int16_t>(t.pos[d]);
    }
    p.i = t.i;
    p.j = t.j;
    return p;
}

inline Tile unpack_tile(int n, const PackedTile& p) {
    Tile t{LiftedPoint(n, 0), p.i, p.j};
    for (int d = 0; d < n; ++d) t.pos[d] = p.c[d];
    return t;
}

// Edge-to-edge patch of lifted tiles; tiles kept sorted and unique.
struct LiftedPatch {
    int n = 0;
    std::vector<PackedTile> tiles;

    size_t size() const { return tiles.size(); }
    bool contains(const PackedTile& t) const {
        return std::binary_search(tiles.begin(), tiles.end(), t);
    }
    void normalize() {
        std::sort(tiles.begin(), tiles.end());
        tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
    }
};

inline LiftedPatch patch_from_tiles(int n, const std::vector<Tile>& ts) {
    LiftedPatch p{n, {}};
    p.tiles.reserve(ts.size());
    for (const Tile& t : ts) p.tiles.push_back(pack_tile(n, t));
    p.normalize();
    return p;
}

// The 2n narrow rhombi around the origin.
inline LiftedPatch star_pattern(int n) {
    require_even_n(n);
    std::vector<Tile> ts;
    for (int d = 0; d < 2 * n; ++d)
        ts.push_back(tile_from_corner(n, lifted_zero(n), DirectionIndex::from_raw(d, n),
                                      DirectionIndex::from_raw(d + 1, n)));
    return patch_from_tiles(n, ts);
}

inline LiftedPatch rotate_patch(const LiftedPatch& p, int steps = 1) {
    LiftedPatch r{p.n, {}};
    r.tiles.reserve(p.tiles.size());
    for (const PackedTile& t : p.tiles)
        r.tiles.push_back(pack_tile(p.n, rotate_tile(unpack_tile(p.n, t), steps)));
    r.normalize();
    return r;
}

inline LiftedPatch translate_patch(const LiftedPatch& p, const LiftedPoint& by) {
    LiftedPatch r{p.n, {}};
    r.tiles.reserve(p.tiles.size());
    for (const PackedTile& t : p.tiles) {
        Tile u = unpack_tile(p.n, t);
        u.pos = u.pos + by;
        r.tiles.push_back(pack_tile(p.n, u));
    }
    r.normalize();
    return r;
}

// Edge-to-edge audit: every undirected unit edge is shared by at most two
// tiles.  (Tiles step only in +e_d, so an edge is keyed by its lower corner
// and axis.)
inline void validate_patch(const LiftedPatch& p) {
    struct EdgeKey {
        std::array<int16_t, kMaxPatchN> c;
        int8_t axis;
        bool operator<(const EdgeKey& o) const {
            int r = std::memcmp(c.data(), o.c.data(), sizeof(c));
            if (r != 0) return r < 0;
            return axis < o.axis;
        }
        bool operator==(const EdgeKey& o) const { return axis == o.axis && c == o.c; }
    };
    std::vector<EdgeKey> edges;
    edges.reserve(p.tiles.size() * 4);
    for (const PackedTile& t : p.tiles) {
        EdgeKey base{t.c, 0};
        auto push = [&](std::array<int16_t, kMaxPatchN> at, int axis) {
            edges.push_back({at, static_cast<int8_t>(axis)});
        };
        auto bumped = [&](int axis) {
            auto a = t.c;
            a[axis] += 1;
            return a;
        };
        push(t.c, t.i);
        push(t.c, t.j);
        push(bumped(t.i), t.j);
        push(bumped(t.j), t.i);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t a = 0; a + 2 < edges.size(); ++a)
        if (edges[a] == edges[a + 1] && edges[a] == edges[a + 2])
            throw ConsistencyError("patch is not edge-to-edge: edge shared by >2 tiles");
}

// One metatile class: the expanded rhombus of angle k*pi/n with its
// canonical interior tiling and the bisected rhombi straddling its sides.
struct Metatile {
    BoundaryPolygon poly;
    std::vector<Tile> full;  // interior tiles
    std::vector<Tile> half;  // boundary tiles, shared with the neighbour
};

// The bisected rhombi along the four sides (one per letter 2m, straddling
// the side with its diagonal on it).
inline std::vector<Tile> boundary_half_tiles(int n, const Edgeword& u, int k) {
    const std::array<int, 4> sideRaw = {0, k, n, n + k};
    std::vector<Tile> halves;
    LiftedPoint pos = lifted_zero(n);
    for (int side = 0; side < 4; ++side) {
        std::vector<int> letters = u.letters;
        if (side >= 2) std::reverse(letters.begin(), letters.end());
        for (int letter : letters) {
            int s = sideRaw[side];
            if (letter == 0) {
                lifted_step(pos, DirectionIndex::from_raw(s, n));
            } else {
                int m = letter / 2;
                DirectionIndex d1 = DirectionIndex::from_raw(s + m, n);
                DirectionIndex d2 = DirectionIndex::from_raw(s - m, n);
                halves.push_back(tile_from_corner(n, pos, d1, d2));
                lifted_step(pos, d1);
                lifted_step(pos, d2);
            }
        }
    }
    return halves;
}

struct SubstitutionRule {
    int n = 0;
    Edgeword u;
    PseudoCirculant expansion;
    Spectrum spec;
    std::vector<Metatile> meta;  // meta[k-1] = class k, 1 <= k <= n/2

    // decomposition of each tile type as a rotation of a canonical class
    struct Orbit {
        int k = 0, s = 0;
        LiftedPoint offset;  // position of rotate^s(t_{0,k} at the origin)
    };
    std::map<std::pair<int, int>, Orbit> orbit;

    // rotated metatile tile sets, indexed [k-1][s]
    std::vector<std::array<std::pair<std::vector<Tile>, std::vector<Tile>>, 24>> rotated;

    double lambda0() const { return spec.lambdas[0]; }

    LiftedPoint phi(const LiftedPoint& x) const {
        LiftedPoint r(n, 0);
        for (int row = 0; row < n; ++row) {
            long long acc = 0;
            for (int col = 0; col < n; ++col) acc += expansion.entry(row, col) * x[col];
            r[row] = static_cast<int>(acc);
        }
        return r;
    }
};

inline LiftedPoint expansion_vector(const SubstitutionRule& rule, int i) {
    if (i < 0 || i >= rule.n) throw PreconditionFailed("expansion vector index out of range");
    LiftedPoint v(rule.n, 0);
    for (int row = 0; row < rule.n; ++row) v[row] = static_cast<int>(rule.expansion.entry(row, i));
    return v;
}

inline SubstitutionRule build_substitution(int n, const Edgeword& u, bool forceCorners = true) {
    require_even_n(n);
    if (n > kMaxPatchN) throw PreconditionFailed("n exceeds the supported patch dimension");
    auto crit = tileability_criterion(n, u);
    if (!crit.ok)
        throw PreconditionFailed("edgeword fails the tileability criterion at x=" +
                                 std::to_string(crit.x) + " j=" + std::to_string(crit.j));

    SubstitutionRule rule;
    rule.n = n;
    rule.u = u;
    rule.expansion = expansion_matrix(n, u);
    rule.spec = spectrum(n, u);

    for (int k = 1; k <= n / 2; ++k) {
        Metatile m{boundary_polygon(n, u, k), {}, boundary_half_tiles(n, u, k)};
        KenyonMatching mt = build_matching(m.poly);
        m.full = tile_interior(m.poly, mt, forceCorners).tiles;

        double halfArea = 0;
        for (const Tile& t : m.half) halfArea += tile_area(n, t);
        double expected = rule.lambda0() * rule.lambda0() * std::sin(k * M_PI / n);
        double actual = m.poly.area + halfArea / 2;
        if (std::fabs(actual - expected) > 1e-9 * std::max(1.0, expected))
            throw ConsistencyError("metatile area does not match the expansion");
        rule.meta.push_back(std::move(m));
    }

    for (int k = 1; k <= n / 2; ++k) {
        Tile t{lifted_zero(n), 0, static_cast<int8_t>(k)};
        for (int s = 0; s < 2 * n; ++s) {
            rule.orbit.emplace(std::make_pair(static_cast<int>(t.i), static_cast<int>(t.j)),
                               SubstitutionRule::Orbit{k, s, t.pos});
            t = rotate_tile(t);
        }
    }

    rule.rotated.resize(n / 2);
    for (int k = 1; k <= n / 2; ++k)
        for (int s = 0; s < 2 * n; ++s) {
            auto& slot = rule.rotated[k - 1][s];
            for (const Tile& t : rule.meta[k - 1].full) slot.first.push_back(rotate_tile(t, s));
            for (const Tile& t : rule.meta[k - 1].half) slot.second.push_back(rotate_tile(t, s));
        }
    return rule;
}

// One substitution step.  Every tile is replaced by the (rotated, shifted)
// metatile of its class; bisected boundary rhombi arrive once from each of
// the two adjacent metatiles and are merged by identical key.  Contribution
// units (2 = interior, 1 = boundary half) above 2 signal an inconsistent
// gluing.  The half-weighted area identity is audited on every call.
inline LiftedPatch apply(const SubstitutionRule& rule, const LiftedPatch& patch,
                         size_t tileBudget = 8000000) {
    int n = rule.n;
    if (patch.n != n) throw PreconditionFailed("patch dimension does not match rule");

    struct Contribution {
        PackedTile t;
        int8_t units;
        bool operator<(const Contribution& o) const { return t < o.t; }
    };
    std::vector<Contribution> contrib;
    double inArea = 0;

    for (const PackedTile& pt : patch.tiles) {
        Tile in = unpack_tile(n, pt);
        inArea += tile_area(n, in);
        const auto& orb = rule.orbit.at({in.i, in.j});
        LiftedPoint shift = rule.phi(in.pos - orb.offset);
        const auto& [full, half] = rule.rotated[orb.k - 1][orb.s];
        if (contrib.size() + full.size() + half.size() > tileBudget * 2)
            throw LimitExceeded("substitution output exceeds the tile budget");
        for (const Tile& t : full)
            contrib.push_back({pack_tile(n, Tile{t.pos + shift, t.i, t.j}), 2});
        for (const Tile& t : half)
            contrib.push_back({pack_tile(n, Tile{t.pos + shift, t.i, t.j}), 1});
    }

    std::sort(contrib.begin(), contrib.end());
    LiftedPatch out{n, {}};
    double outHalves = 0;
    size_t a = 0;
    while (a < contrib.size()) {
        size_t b = a;
        int units = 0;
        while (b < contrib.size() && contrib[b].t == contrib[a].t) units += contrib[b++].units;
        if (units > 2)
            throw ConflictError("metatile gluing conflict: tile claimed more than twice");
        outHalves += units * std::sin((contrib[a].t.j - contrib[a].t.i) * M_PI / n);
        out.tiles.push_back(contrib[a].t);
        a = b;
    }

    double expected = rule.lambda0() * rule.lambda0() * inArea;
    if (std::fabs(outHalves / 2 - expected) > 1e-9 * std::max(1.0, expected))
        throw ConsistencyError("area identity violated during substitution");
    if (out.size() > tileBudget) throw LimitExceeded("substitution output exceeds the tile budget");
    return out;
}

inline LiftedPatch iterate(const SubstitutionRule& rule, LiftedPatch seed, int k,
                           size_t tileBudget = 8000000) {
    if (k < 0) throw PreconditionFailed("negative iteration count");
    for (int step = 0; step < k; ++step) seed = apply(rule, seed, tileBudget);
    return seed;
}

// ---- primitivity ---------------------------------------------------------

// true iff sigma^m of every prototile contains every tile type.
inline bool is_primitive_order(const SubstitutionRule& rule, int m) {
    if (m < 1) throw PreconditionFailed("primitivity order must be >= 1");
    int n = rule.n;
    auto typeId = [n](int i, int j) { return i * n + j; };
    int N = n * n;
    std::vector<std::vector<bool>> reach(N, std::vector<bool>(N, false));
    std::vector<int> types;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) types.push_back(typeId(i, j));

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& orb = rule.orbit.at({i, j});
            const auto& [full, half] = rule.rotated[orb.k - 1][orb.s];
            for (const Tile& t : full) reach[typeId(i, j)][typeId(t.i, t.j)] = true;
            for (const Tile& t : half) reach[typeId(i, j)][typeId(t.i, t.j)] = true;
        }

    std::vector<std::vector<bool>> power = reach;
    for (int step = 1; step < m; ++step) {
        std::vector<std::vector<bool>> next(N, std::vector<bool>(N, false));
        for (int a : types)
            for (int b : types)
                if (power[a][b])
                    for (int c : types)
                        if (reach[b][c]) next[a][c] = true;
        power = std::move(next);
    }
    for (int a : types)
        for (int b : types)
            if (!power[a][b]) return false;
    return true;
}

// ---- star seed -----------------------------------------------------------

inline bool contains_star_at(const LiftedPatch& patch, const LiftedPoint& v) {
    int n = patch.n;
    for (int d = 0; d < 2 * n; ++d) {
        Tile t = tile_from_corner(n, v, DirectionIndex::from_raw(d, n),
                                  DirectionIndex::from_raw(d + 1, n));
        if (!patch.contains(pack_tile(n, t))) return false;
    }
    return true;
}

inline bool find_star(const LiftedPatch& patch) {
    int n = patch.n;
    for (const PackedTile& pt : patch.tiles) {
        if (pt.i != 0 || pt.j != 1) continue;  // star tiles include a (0,1) at its centre
        if (contains_star_at(patch, unpack_tile(n, pt).pos)) return true;
    }
    return false;
}

struct SeedReport {
    bool starAtCenter = false;       // star contained in sigma(star)
    bool circleContained = false;    // inscribed circle of sigma(star) vs star
    std::vector<int> starDepth;      // per class k: minimal m with a star in sigma^m(t)
    int maxDepth = 0;

    bool ok(int n) const {
        if (!starAtCenter || !circleContained) return false;
        for (int d : starDepth)
            if (d > n / 2 + 1) return false;
        return true;
    }
};

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double t = (p - a).dot(ab) / ab.dot(ab);
    t = std::clamp(t, 0.0, 1.0);
    Vec2 c = a + t * ab;
    return (p - c).norm();
}

// Minimal distance from the origin to the boundary of the patch union.
inline double inscribed_radius(const LiftedPatch& patch) {
    int n = patch.n;
    std::map<std::pair<LiftedPoint, int>, int> census;
    for (const PackedTile& pt : patch.tiles) {
        Tile t = unpack_tile(n, pt);
        LiftedPoint bi = t.pos, bj = t.pos;
        bi[t.i] += 1;
        bj[t.j] += 1;
        census[{t.pos, t.i}]++;
        census[{t.pos, t.j}]++;
        census[{bi, t.j}]++;
        census[{bj, t.i}]++;
    }
    double r = std::numeric_limits<double>::infinity();
    for (const auto& [key, count] : census) {
        if (count != 1) continue;
        Vec2 a = embed(n, key.first);
        LiftedPoint q = key.first;
        q[key.second] += 1;
        r = std::min(r, point_segment_distance({0, 0}, a, embed(n, q)));
    }
    return r;
}

inline double circumscribed_radius(const LiftedPatch& patch) {
    int n = patch.n;
    double r = 0;
    for (const PackedTile& pt : patch.tiles)
        for (const LiftedPoint& c : tile_corners(unpack_tile(n, pt)))
            r = std::max(r, embed(n, c).norm());
    return r;
}

// Checks the three parts of the seed property.  The per-prototile star
// search materializes sigma^m(t) only while it fits the tile budget; deeper
// occurrences follow from a found star in the image of any tile type the
// patch already contains.
inline SeedReport verify_star_seed(const SubstitutionRule& rule, size_t tileBudget = 8000000) {
    int n = rule.n;
    SeedReport rep;
    LiftedPatch star = star_pattern(n);
    LiftedPatch sstar = apply(rule, star, tileBudget);
    rep.starAtCenter = true;
    for (const PackedTile& t : star.tiles)
        if (!sstar.contains(t)) rep.starAtCenter = false;
    rep.circleContained = inscribed_radius(sstar) > circumscribed_radius(star);

    int half = n / 2;
    const int unknown = 1000000;
    std::vector<int> direct(half + 1, unknown);
    for (int k = 1; k <= half; ++k) {
        LiftedPatch p = patch_from_tiles(n, {Tile{lifted_zero(n), 0, static_cast<int8_t>(k)}});
        for (int m = 1; m <= half + 1; ++m) {
            double growth = rule.lambda0() * rule.lambda0();
            if (static_cast<double>(p.size()) * growth * 1.5 > static_cast<double>(tileBudget))
                break;
            p = apply(rule, p, tileBudget);
            if (find_star(p)) {
                direct[k] = m;
                break;
            }
        }
    }
    // sigma^{1+m'}(t_k) contains a rotated translate of sigma^{m'}(t_{k'})
    // for every class k' appearing in the metatile of class k.
    std::vector<int> best = direct;
    for (bool changed = true; changed;) {
        changed = false;
        for (int k = 1; k <= half; ++k) {
            int viaChild = unknown;
            auto scan = [&](const std::vector<Tile>& ts) {
                for (const Tile& t : ts) {
                    int kc = rule.orbit.at({t.i, t.j}).k;
                    if (best[kc] != unknown) viaChild = std::min(viaChild, best[kc] + 1);
                }
            };
            scan(rule.meta[k - 1].full);
            scan(rule.meta[k - 1].half);
            if (viaChild < best[k]) {
                best[k] = viaChild;
                changed = true;
            }
        }
    }
    rep.starDepth.assign(best.begin() + 1, best.end());
    rep.maxDepth = *std::max_element(rep.starDepth.begin(), rep.starDepth.end());
    return rep;
}

// ---- Planar Rosa selection -------------------------------------------------

struct SelectionRow {
    int i = 0;
    bool allLetters = false, criterion = false, corners = false, planar = false,
         primitive = false;
    std::string note;
};

struct SelectionResult {
    int i = 0;
    Edgeword u;
    SubstitutionRule rule;
    Spectrum spec;
    std::vector<SelectionRow> log;
};

// Minimal i such that P_i = pref_i(w).reverse(pref_i(w)) gives a tileable,
// corner-compatible, planar (slope E_n^0), order-2 primitive substitution.
inline SelectionResult select_planar_rosa(int n, int maxI, double tol = 1e-6) {
    require_even_n(n);
    if (maxI < 1) throw PreconditionFailed("maxI must be >= 1");
    std::vector<SelectionRow> log;
    Edgeword w = billiard_prefix(n, maxI);
    for (int i = 1; i <= maxI; ++i) {
        SelectionRow row;
        row.i = i;
        Edgeword u{n, std::vector<int>(w.letters.begin(), w.letters.begin() + i)};
        u.letters.insert(u.letters.end(), u.letters.rbegin(), u.letters.rend());

        row.allLetters = all_letters_present(u);
        if (!row.allLetters) {
            row.note = "missing letters";
            log.push_back(row);
            continue;
        }
        auto crit = tileability_criterion(n, u);
        row.criterion = crit.ok;
        if (!crit.ok) {
            row.note = "criterion witness at x=" + std::to_string(crit.x);
            log.push_back(row);
            continue;
        }
        row.corners = true;
        for (int k = 1; k < n; ++k)
            if (!corner_crossing_check(n, u, k)) {
                row.corners = false;
                row.note = "corner check fails at k=" + std::to_string(k);
                break;
            }
        if (!row.corners) {
            log.push_back(row);
            continue;
        }
        Spectrum s = spectrum(n, u);
        row.planar = classify_planarity(s, tol) == Planarity::PlanarSlope0;
        if (!row.planar) {
            row.note = "classification " + to_string(classify_planarity(s, tol));
            log.push_back(row);
            continue;
        }
        SubstitutionRule rule = build_substitution(n, u, true);
        row.primitive = is_primitive_order(rule, 2);
        if (!row.primitive) {
            row.note = "not primitive of order 2";
            log.push_back(row);
            continue;
        }
        log.push_back(row);
        return SelectionResult{i, u, std::move(rule), s, std::move(log)};
    }
    std::string msg = "no admissible candidate up to i=" + std::to_string(maxI);
    throw NotFound(msg);
}

}  // namespace rosa
