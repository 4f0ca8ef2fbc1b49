#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "rosa/edgeword.hpp"
#include "rosa/errors.hpp"
#include "rosa/geometry.hpp"

namespace rosa {

struct BoundaryEdge {
    DirectionIndex dir;
    int side = -1;     // 0..3, or -1 for interior edges created during peeling
    int seq = -1;      // index of this edge within its side's edge sequence
    int letter = -1;   // edgeword letter that produced the edge
};

// Boundary of the metatile of angles k*pi/n and (n-k)*pi/n with edgeword u
// on each side (reversed on the two returning sides).  Letter 0 contributes
// one unit edge along the side direction v_s; letter 2m contributes the
// interior half-path v_{s+m}, v_{s-m} of the bisected rhombus.
struct BoundaryPolygon {
    int n = 0, k = 0;
    Edgeword u;
    std::vector<BoundaryEdge> edges;       // counterclockwise, closed
    std::vector<LiftedPoint> vertices;     // vertices[e] = start of edges[e]
    std::vector<Vec2> embedded;            // 2D embeddings of vertices
    double area = 0;                       // shoelace area

    int size() const { return static_cast<int>(edges.size()); }
};

inline BoundaryPolygon boundary_polygon(int n, const Edgeword& u, int k) {
    require_even_n(n);
    validate_edgeword(u);
    if (u.n != n) throw PreconditionFailed("edgeword alphabet does not match n");
    if (u.letters.empty()) throw PreconditionFailed("empty edgeword");
    if (k < 1 || k > n / 2) throw PreconditionFailed("metatile angle index out of range");

    BoundaryPolygon p{n, k, u, {}, {}, {}, 0};
    const std::array<int, 4> sideRaw = {0, k, n, n + k};
    LiftedPoint pos = lifted_zero(n);
    for (int side = 0; side < 4; ++side) {
        std::vector<int> letters = u.letters;
        if (side >= 2) std::reverse(letters.begin(), letters.end());
        int seq = 0;
        for (int letter : letters) {
            int s = sideRaw[side];
            std::vector<DirectionIndex> dirs;
            if (letter == 0) {
                dirs = {DirectionIndex::from_raw(s, n)};
            } else {
                int m = letter / 2;
                dirs = {DirectionIndex::from_raw(s + m, n), DirectionIndex::from_raw(s - m, n)};
            }
            for (DirectionIndex d : dirs) {
                p.edges.push_back({d, side, seq++, letter});
                p.vertices.push_back(pos);
                lifted_step(pos, d);
            }
        }
    }
    if (pos != lifted_zero(n)) throw ConsistencyError("metatile boundary does not close");
    p.embedded.reserve(p.vertices.size());
    for (const auto& v : p.vertices) p.embedded.push_back(embed(n, v));
    double a = 0;
    for (int e = 0; e < p.size(); ++e) {
        const Vec2& q = p.embedded[e];
        const Vec2& r = p.embedded[(e + 1) % p.size()];
        a += q.cross(r);
    }
    p.area = a / 2;
    return p;
}

// Outcome of the counting-function criterion; on failure carries the
// violating triple (x, u_x, j).
struct TileabilityResult {
    bool ok = true;
    int x = -1, ux = -1, j = -1;
};

// Strict comparison with the infinity convention: finite < infinite passes,
// anything involving an infinite left side fails.
inline bool counting_less(int lhs, int rhs) {
    if (lhs == kInfinity) return false;
    if (rhs == kInfinity) return true;
    return lhs < rhs;
}

inline TileabilityResult tileability_criterion(int n, const Edgeword& u) {
    require_even_n(n);
    if (u.n != n) throw PreconditionFailed("edgeword alphabet does not match n");
    validate_edgeword(u);
    if (!all_letters_present(u)) throw PreconditionFailed("criterion needs every letter present");
    if (balance_constant(u) > 2) throw PreconditionFailed("criterion needs a 2-almost-balanced word");
    int L = static_cast<int>(u.letters.size());
    for (int x = 0; x < L; ++x) {
        int ux = u.letters[x];
        int rhs = counting_inverse(u, std::abs(ux - 2), counting(u, ux, x + 1));
        for (int j = ux + 2; j <= n - 2; j += 2) {
            int lhs = counting_inverse(u, std::abs(j - 2), counting(u, j, x + 1));
            if (!counting_less(lhs, rhs)) return {false, x, ux, j};
        }
    }
    return {true, -1, -1, -1};
}

// The four-case corner analysis: does the chain of the first edge (letter 0)
// cross the chain of the first rhombus (letter 2) in the corner of angle
// k*pi/n?  Cases k < n/2, k = n/2 and k = n/2+1 hold whenever every letter
// appears; the remaining case reduces to a counting inequality.
inline bool corner_crossing_check(int n, const Edgeword& u, int k) {
    require_even_n(n);
    validate_edgeword(u);
    if (u.letters.size() < 2 || u.letters[0] != 0 || u.letters[1] != 2)
        throw PreconditionFailed("corner check needs an edgeword starting with 02");
    if (k < 1 || k >= n) throw PreconditionFailed("corner angle index out of range");
    if (!all_letters_present(u)) return false;
    if (k <= n / 2 + 1) return true;
    int kp = n - k;  // 0 < kp < n/2 - 1
    int L = static_cast<int>(u.letters.size());
    int lhs = counting_inverse(u, 0, counting(u, 2 * kp, L) + 1);
    int rhs = counting_inverse(u, 2, counting(u, 2 * kp + 2, L) + 1);
    return counting_less(rhs, lhs);
}

// Pairing of boundary edges into chains.
struct KenyonMatching {
    std::vector<int> partner;  // partner[e] = matched edge index
    std::vector<int> chain;    // chain[e] = pair id, 0 <= id < chains
    int chains = 0;
};

inline bool cyclic_between(int a, int x, int b, int m) {
    // is x strictly inside the cyclic interval (a, b)?
    auto norm = [&](int v) { return ((v - a) % m + m) % m; };
    return norm(x) > 0 && norm(x) < norm(b);
}

inline bool pairs_interleave(int a1, int a2, int b1, int b2, int m) {
    return cyclic_between(a1, b1, a2, m) != cyclic_between(a1, b2, a2, m);
}

inline Vec2 perp_ccw(Vec2 v) { return {-v.y, v.x}; }

inline KenyonMatching build_matching(const BoundaryPolygon& p) {
    int m = p.size();
    KenyonMatching mt{std::vector<int>(m, -1), std::vector<int>(m, -1), 0};

    for (int type = 0; type < p.n; ++type) {
        std::vector<int> idx;
        int balance = 0;
        for (int e = 0; e < m; ++e)
            if (p.edges[e].dir.i == type) {
                idx.push_back(e);
                balance += p.edges[e].dir.sign;
            }
        if (balance != 0)
            throw NoMatching("K1", "edge type " + std::to_string(type) +
                                       " has unequal orientation counts");
        // Nearest non-crossing pairing: repeatedly match the first cyclically
        // adjacent pair of opposite orientations.
        std::vector<int> rem = idx;
        while (!rem.empty()) {
            int sz = static_cast<int>(rem.size());
            int found = -1;
            for (int j = 0; j < sz; ++j) {
                int e1 = rem[j], e2 = rem[(j + 1) % sz];
                if (p.edges[e1].dir.sign != p.edges[e2].dir.sign) {
                    found = j;
                    break;
                }
            }
            if (found < 0) throw NoMatching("K1", "orientations cannot be paired");
            int e1 = rem[found], e2 = rem[(found + 1) % rem.size()];
            mt.partner[e1] = e2;
            mt.partner[e2] = e1;
            mt.chain[e1] = mt.chain[e2] = mt.chains++;
            rem.erase(std::find(rem.begin(), rem.end(), e1));
            rem.erase(std::find(rem.begin(), rem.end(), e2));
        }
    }

    // Collect each chain's two boundary positions.
    std::vector<std::array<int, 2>> pos(mt.chains, {-1, -1});
    for (int e = 0; e < m; ++e) {
        auto& pr = pos[mt.chain[e]];
        (pr[0] < 0 ? pr[0] : pr[1]) = e;
    }

    auto edge_vec = [&](int e) { return direction_vector(p.n, p.edges[e].dir); };
    auto edge_mid = [&](int e) { return p.embedded[e] + 0.5 * edge_vec(e); };

    for (int c1 = 0; c1 < mt.chains; ++c1) {
        auto [a1, a2] = pos[c1];
        // K2: same-type chains must not cross.
        for (int c2 = c1 + 1; c2 < mt.chains; ++c2) {
            auto [b1, b2] = pos[c2];
            if (p.edges[a1].dir.i == p.edges[b1].dir.i && pairs_interleave(a1, a2, b1, b2, m))
                throw NoMatching("K2", "same-type chains " + std::to_string(c1) + "," +
                                           std::to_string(c2) + " cross");
        }
        // K3: the partner lies on the interior side of the edge.
        if ((edge_mid(a2) - edge_mid(a1)).dot(perp_ccw(edge_vec(a1))) <= 0)
            throw NoMatching("K3", "chain " + std::to_string(c1) + " is not visible");
        // K4: peripheral monotonicity on every crossing pair.
        for (int c2 = c1 + 1; c2 < mt.chains; ++c2) {
            auto [b1, b2] = pos[c2];
            if (!pairs_interleave(a1, a2, b1, b2, m)) continue;
            int b = cyclic_between(a1, b1, a2, m) ? b1 : b2;
            if (perp_ccw(edge_vec(a1)).dot(edge_vec(b)) <= 0)
                throw NoMatching("K4", "chains " + std::to_string(c1) + "," +
                                           std::to_string(c2) + " cross with no real rhombus");
        }
    }
    return mt;
}

struct InteriorTiling {
    std::vector<Tile> tiles;  // sorted
};

// ---- post-hoc validation of any produced tiling ------------------------

namespace detail {

using UndirectedEdge = std::pair<LiftedPoint, LiftedPoint>;

inline UndirectedEdge undirected(LiftedPoint a, LiftedPoint b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

}  // namespace detail

inline void validate_tiling(const BoundaryPolygon& p, const InteriorTiling& t) {
    double tileArea = 0;
    std::map<detail::UndirectedEdge, int> census;
    for (const Tile& tile : t.tiles) {
        tileArea += tile_area(p.n, tile);
        auto [a, b, c, d] = tile_corners(tile);
        census[detail::undirected(a, b)]++;
        census[detail::undirected(a, c)]++;
        census[detail::undirected(b, d)]++;
        census[detail::undirected(c, d)]++;
    }
    double scale = std::max(1.0, std::fabs(p.area));
    if (std::fabs(tileArea - p.area) > 1e-9 * scale)
        throw ConsistencyError("tiling area does not match polygon area");

    std::map<detail::UndirectedEdge, int> boundary;
    for (int e = 0; e < p.size(); ++e) {
        LiftedPoint a = p.vertices[e];
        LiftedPoint b = a;
        lifted_step(b, p.edges[e].dir);
        boundary[detail::undirected(std::move(a), std::move(b))]++;
    }
    for (const auto& [edge, count] : census) {
        if (count == 2) {
            if (boundary.count(edge)) throw ConsistencyError("interior edge lies on the boundary");
        } else if (count == 1) {
            if (!boundary.count(edge)) throw ConsistencyError("tiling not edge-to-edge");
        } else {
            throw ConsistencyError("edge shared by more than two tiles");
        }
    }
    int onBoundary = 0;
    for (const auto& [edge, count] : boundary) {
        if (count != 1) throw ConsistencyError("degenerate polygon boundary");
        if (census.count(edge) && census.at(edge) == 1) ++onBoundary;
    }
    if (!t.tiles.empty() && onBoundary != p.size())
        throw ConsistencyError("tiling boundary does not match the polygon");
}

// ---- brute-force backtracking tiler -------------------------------------

enum class BruteForceStatus { Tiled, Untileable };

struct BruteForceResult {
    BruteForceStatus status = BruteForceStatus::Untileable;
    InteriorTiling tiling;
};

namespace detail {

struct RegionEdge {
    LiftedPoint start;
    DirectionIndex dir;
};

using Region = std::vector<RegionEdge>;

inline void simplify_spikes(Region& r) {
    bool changed = true;
    while (changed && !r.empty()) {
        changed = false;
        int sz = static_cast<int>(r.size());
        for (int e = 0; e < sz; ++e) {
            int f = (e + 1) % sz;
            int n = static_cast<int>(r[e].start.size());
            if (r[f].dir == r[e].dir.reversed(n)) {
                if (f > e)
                    r.erase(r.begin() + e, r.begin() + e + 2);
                else
                    r.erase(r.begin() + e), r.erase(r.begin());
                changed = true;
                break;
            }
        }
    }
}

inline std::string region_key(const Region& r) {
    if (r.empty()) return "";
    // The edges form a contiguous loop, so the cyclic direction sequence
    // determines the region up to translation.  Canonical form: the
    // lexicographically least rotation of that sequence.
    int sz = static_cast<int>(r.size());
    int n = static_cast<int>(r[0].start.size());
    std::string s(sz, '\0');
    for (int e = 0; e < sz; ++e) s[e] = static_cast<char>(r[e].dir.raw(n));
    int best = 0;
    for (int a = 1; a < sz; ++a) {
        int t = 0;
        while (t < sz && s[(a + t) % sz] == s[(best + t) % sz]) ++t;
        if (t < sz && s[(a + t) % sz] < s[(best + t) % sz]) best = a;
    }
    std::string key(sz, '\0');
    for (int t = 0; t < sz; ++t) key[t] = s[(best + t) % sz];
    return key;
}

// strict segment intersection (interiors cross) with tolerance
inline bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return (q - p).cross(r - p); };
    constexpr double eps = 1e-9;
    double o1 = orient(a, b, c), o2 = orient(a, b, d);
    double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < -eps && o3 * o4 < -eps;
}

inline bool point_in_quad(Vec2 p, const std::array<Vec2, 4>& q) {
    constexpr double eps = 1e-9;
    for (int i = 0; i < 4; ++i) {
        Vec2 a = q[i], b = q[(i + 1) % 4];
        if ((b - a).cross(p - a) < eps) return false;
    }
    return true;
}

struct BruteForcer {
    int n;
    long long nodeLimit;
    long long nodes = 0;
    std::unordered_set<std::string> failed;
    std::vector<Tile> tiles;

    bool solve(Region region) {
        simplify_spikes(region);
        if (region.empty()) return true;
        if (region.size() < 4 || region.size() % 2 != 0) return false;
        if (++nodes > nodeLimit) throw LimitExceeded("brute-force node limit exceeded");

        std::string key = region_key(region);
        if (failed.count(key)) return false;

        // Split at a pinch vertex into independent loops.
        int sz = static_cast<int>(region.size());
        std::map<LiftedPoint, int> seen;
        for (int e = 0; e < sz; ++e) {
            auto [it, fresh] = seen.emplace(region[e].start, e);
            if (!fresh) {
                Region a(region.begin() + it->second, region.begin() + e);
                Region b(region.begin() + e, region.end());
                b.insert(b.end(), region.begin(), region.begin() + it->second);
                size_t mark = tiles.size();
                if (solve(std::move(a)) && solve(std::move(b))) return true;
                tiles.resize(mark);
                failed.insert(key);
                return false;
            }
        }

        // Every placement subtracts its tile's area from the signed area, so
        // a region too small to hold the thinnest rhombus is a dead end (and
        // this bounds the recursion depth even for self-crossing boundaries).
        std::vector<Vec2> emb(sz);
        for (int e = 0; e < sz; ++e) emb[e] = embed(n, region[e].start);
        double area = 0;
        for (int e = 0; e < sz; ++e) area += emb[e].cross(emb[(e + 1) % sz]);
        if (area / 2 < std::sin(M_PI / n) - 1e-9) {
            failed.insert(key);
            return false;
        }

        // Lowest (then leftmost) vertex; branch over the tile containing the
        // outgoing boundary edge there.
        int vi = 0;
        for (int e = 1; e < sz; ++e) {
            if (emb[e].y < emb[vi].y - 1e-9 ||
                (emb[e].y < emb[vi].y + 1e-9 && emb[e].x < emb[vi].x - 1e-9))
                vi = e;
        }
        const RegionEdge& eOut = region[vi];
        const RegionEdge& eIn = region[(vi + sz - 1) % sz];
        int aOut = eOut.dir.raw(n);
        int aInRev = eIn.dir.reversed(n).raw(n);
        int wedge = ((aInRev - aOut) % (2 * n) + 2 * n) % (2 * n);

        for (int delta = 1; delta <= std::min(wedge, n - 1); ++delta) {
            DirectionIndex d = DirectionIndex::from_raw(aOut + delta, n);
            Vec2 vOut = direction_vector(n, eOut.dir);
            Vec2 vD = direction_vector(n, d);
            Vec2 A = emb[vi];
            std::array<Vec2, 4> quad = {A, A + vOut, A + vOut + vD, A + vD};
            bool fits = true;
            for (int e = 0; e < sz && fits; ++e) {
                Vec2 s = emb[e], t = emb[(e + 1) % sz];
                if (point_in_quad(s, quad)) fits = false;
                for (int q = 0; q < 4 && fits; ++q)
                    if (segments_cross(s, t, quad[q], quad[(q + 1) % 4])) fits = false;
            }
            if (!fits) continue;

            Region next = region;
            LiftedPoint corner = eOut.start;
            LiftedPoint c1 = corner;
            lifted_step(c1, d);
            LiftedPoint c2 = c1;
            lifted_step(c2, eOut.dir);
            next[vi] = {corner, d};
            next.insert(next.begin() + vi + 1,
                        {RegionEdge{c1, eOut.dir}, RegionEdge{c2, d.reversed(n)}});
            size_t mark = tiles.size();
            tiles.push_back(tile_from_corner(n, corner, eOut.dir, d));
            if (solve(std::move(next))) return true;
            tiles.resize(mark);
        }
        failed.insert(key);
        return false;
    }
};

}  // namespace detail

inline BruteForceResult brute_force_tile(const BoundaryPolygon& p, long long nodeLimit = 2000000) {
    detail::BruteForcer bf{p.n, nodeLimit};
    detail::Region region;
    for (int e = 0; e < p.size(); ++e) region.push_back({p.vertices[e], p.edges[e].dir});
    BruteForceResult res;
    // A self-crossing boundary cannot enclose a tiling: tiles never overlap.
    // Placements preserve simplicity, so only the input needs this check.
    int sz = p.size();
    std::vector<Vec2> emb(sz);
    for (int e = 0; e < sz; ++e) emb[e] = embed(p.n, p.vertices[e]);
    for (int a = 0; a < sz; ++a)
        for (int b = a + 1; b < sz; ++b)
            if (detail::segments_cross(emb[a], emb[(a + 1) % sz], emb[b], emb[(b + 1) % sz]))
                return res;
    if (bf.solve(std::move(region))) {
        res.status = BruteForceStatus::Tiled;
        res.tiling.tiles = std::move(bf.tiles);
        std::sort(res.tiling.tiles.begin(), res.tiling.tiles.end());
        validate_tiling(p, res.tiling);
    }
    return res;
}

// ---- matching-driven chain peeling --------------------------------------

namespace detail {

struct PeelEdge {
    LiftedPoint start;
    DirectionIndex dir;
    int chain;
    int side = -1, seq = -1;  // provenance for corner forcing
};

}  // namespace detail

// Tiles the polygon by peeling rhombi at the crossings of matched chains.
// With forceCorners the eight narrow rhombi flanking the four corners are
// placed first (CornerConditionFailed when any is not immediately ready).
// Falls back to brute force when peeling gets stuck; the result is always
// validated post-hoc.
inline InteriorTiling tile_interior(const BoundaryPolygon& p, const KenyonMatching& m,
                                    bool forceCorners = false) {
    int sz = p.size();
    // Which chain pairs cross (in the original cyclic order)?
    std::vector<std::array<int, 2>> pos(m.chains, {-1, -1});
    for (int e = 0; e < sz; ++e) {
        auto& pr = pos[m.chain[e]];
        (pr[0] < 0 ? pr[0] : pr[1]) = e;
    }
    auto chains_cross = [&](int c1, int c2) {
        return c1 != c2 &&
               pairs_interleave(pos[c1][0], pos[c1][1], pos[c2][0], pos[c2][1], sz);
    };

    std::vector<detail::PeelEdge> b;
    for (int e = 0; e < sz; ++e)
        b.push_back({p.vertices[e], p.edges[e].dir, m.chain[e], p.edges[e].side, p.edges[e].seq});

    std::set<std::pair<int, int>> used;
    InteriorTiling result;

    // Tiles are unoriented, so substitution images must be invariant under
    // every lattice rotation mapping the polygon to itself (the half turn
    // for palindromic words; the square metatile also has a quarter turn).
    // Each symmetry is x -> rot^r(x) + v; placements get mirrored under all.
    struct Symmetry {
        int r;
        LiftedPoint v;
    };
    std::vector<Symmetry> syms;
    for (int shift : {sz / 4, sz / 2, 3 * sz / 4}) {
        int r = ((p.edges[shift].dir.raw(p.n) - p.edges[0].dir.raw(p.n)) % (2 * p.n) + 2 * p.n) %
                (2 * p.n);
        LiftedPoint v = p.vertices[shift] - rotate_lifted(p.vertices[0], r);
        bool ok = true;
        for (int e = 0; e < sz && ok; ++e) {
            int f = (e + shift) % sz;
            if (!(p.vertices[f] == rotate_lifted(p.vertices[e], r) + v) ||
                p.edges[f].dir.raw(p.n) != (p.edges[e].dir.raw(p.n) + r) % (2 * p.n))
                ok = false;
        }
        if (ok) syms.push_back({r, v});
    }

    auto convex = [&](const detail::PeelEdge& e1, const detail::PeelEdge& e2) {
        int d = ((e2.dir.raw(p.n) - e1.dir.raw(p.n)) % (2 * p.n) + 2 * p.n) % (2 * p.n);
        return d > 0 && d < p.n;
    };
    auto ready = [&](int t) {
        int sz2 = static_cast<int>(b.size());
        const auto& e1 = b[t];
        const auto& e2 = b[(t + 1) % sz2];
        if (e1.chain == e2.chain) return false;
        if (!chains_cross(e1.chain, e2.chain)) return false;
        if (used.count({std::min(e1.chain, e2.chain), std::max(e1.chain, e2.chain)})) return false;
        return convex(e1, e2);
    };
    auto place = [&](int t) {
        int sz2 = static_cast<int>(b.size());
        detail::PeelEdge e1 = b[t];
        detail::PeelEdge e2 = b[(t + 1) % sz2];
        result.tiles.push_back(tile_from_corner(p.n, e1.start, e1.dir, e2.dir));
        used.insert({std::min(e1.chain, e2.chain), std::max(e1.chain, e2.chain)});
        LiftedPoint mid = e1.start;
        lifted_step(mid, e2.dir);
        detail::PeelEdge n1{e1.start, e2.dir, e2.chain};
        detail::PeelEdge n2{mid, e1.dir, e1.chain};
        if ((t + 1) % sz2 == 0) {  // pair wraps around the vector end
            b[t] = n1;
            b[0] = n2;
        } else {
            b[t] = n1;
            b[t + 1] = n2;
        }
    };
    // Place every symmetry image of the tile just placed at corner A spanned
    // by (d1, d2).  Image chain pairs may not interleave in the original
    // cyclic order (they can cross an even number of times), so only
    // convexity and chain distinctness are checked; validation has the final
    // word.  A candidate equal to an already placed image is a fixed tile of
    // the symmetry (e.g. a square on the centre) and is skipped.
    auto place_images = [&](const LiftedPoint& A, DirectionIndex d1, DirectionIndex d2) {
        std::vector<Tile> round = {result.tiles.back()};
        for (const auto& g : syms) {
            LiftedPoint s = rotate_lifted(A, g.r) + g.v;
            DirectionIndex r1 = DirectionIndex::from_raw(d1.raw(p.n) + g.r, p.n);
            DirectionIndex r2 = DirectionIndex::from_raw(d2.raw(p.n) + g.r, p.n);
            Tile cand = tile_from_corner(p.n, s, r1, r2);
            if (std::find(round.begin(), round.end(), cand) != round.end()) continue;
            int szb = static_cast<int>(b.size());
            for (int t = 0; t < szb; ++t) {
                const auto& e1 = b[t];
                const auto& e2 = b[(t + 1) % szb];
                if (!(e1.start == s) || !(e1.dir == r1) || !(e2.dir == r2)) continue;
                if (e1.chain != e2.chain && convex(e1, e2)) {
                    place(t);
                    round.push_back(cand);
                }
                break;
            }
        }
    };

    auto remove_spikes = [&]() {
        bool changed = true;
        while (changed && !b.empty()) {
            changed = false;
            int sz2 = static_cast<int>(b.size());
            for (int t = 0; t < sz2; ++t) {
                int f = (t + 1) % sz2;
                if (b[t].chain == b[f].chain && b[f].dir == b[t].dir.reversed(p.n)) {
                    if (f > t)
                        b.erase(b.begin() + t, b.begin() + t + 2);
                    else
                        b.erase(b.begin() + t), b.erase(b.begin());
                    changed = true;
                    break;
                }
            }
        }
    };

    if (forceCorners) {
        // First two and last two edges of every side form the narrow corner
        // rhombi.  At a sharp corner the same rhombus flanks both adjacent
        // sides: placing it consumes the other side's pair as a spike, so a
        // vanished pair means the corner is already done.
        int perSide = sz / 4;
        for (int side = 0; side < 4; ++side)
            for (int first : {0, perSide - 2}) {
                remove_spikes();
                int t = -1;
                for (int e = 0; e < static_cast<int>(b.size()); ++e)
                    if (b[e].side == side && b[e].seq == first) t = e;
                if (t < 0) continue;
                const auto& e2 = b[(t + 1) % b.size()];
                if (e2.side != side || e2.seq != first + 1 || !ready(t))
                    throw CornerConditionFailed("corner rhombus not placeable on side " +
                                                std::to_string(side));
                LiftedPoint A = b[t].start;
                DirectionIndex d1 = b[t].dir, d2 = e2.dir;
                place(t);
                place_images(A, d1, d2);
            }
    }

    bool stuck = false;
    while (!b.empty()) {
        remove_spikes();
        if (b.empty()) break;
        int bestT = -1;
        for (int t = 0; t < static_cast<int>(b.size()); ++t) {
            if (!ready(t)) continue;
            if (bestT < 0 || b[t].start < b[bestT].start) bestT = t;
        }
        if (bestT < 0) {
            stuck = true;
            break;
        }
        LiftedPoint A = b[bestT].start;
        DirectionIndex d1 = b[bestT].dir, d2 = b[(bestT + 1) % b.size()].dir;
        place(bestT);
        place_images(A, d1, d2);
    }

    if (stuck) {
        auto bf = brute_force_tile(p);
        if (bf.status != BruteForceStatus::Tiled)
            throw ConsistencyError("peeling stuck and brute force found no tiling");
        return bf.tiling;
    }
    std::sort(result.tiles.begin(), result.tiles.end());
    validate_tiling(p, result);
    return result;
}

}  // namespace rosa
