#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "rosa/planarity.hpp"
#include "rosa/substitution.hpp"

using namespace rosa;

namespace {

// Direct oracle: materialize sigma^m(seed) and take the max projection of
// its vertices over the same direction grid.
double direct_deviation(const SubstitutionRule& rule, const LiftedPatch& seed, int m,
                        const DirectionSet& ds) {
    LiftedPatch p = iterate(rule, seed, m);
    int n = rule.n;
    std::vector<PlaneBasis> bases;
    for (int j = 1; j < n / 2; ++j) bases.push_back(plane_basis(n, j));
    std::set<LiftedPoint> verts;
    for (const PackedTile& pt : p.tiles)
        for (const LiftedPoint& c : tile_corners(unpack_tile(n, pt))) verts.insert(c);
    double dev = 0;
    for (const LiftedPoint& v : verts) {
        std::vector<Vec2> comp;
        for (const auto& b : bases) comp.push_back(plane_component(v, b));
        for (const auto& dirs : ds.dirs) {
            double s = 0;
            for (size_t j = 0; j < comp.size(); ++j) s += comp[j].dot(dirs[j]);
            dev = std::max(dev, s);
        }
    }
    return dev;
}

}  // namespace

TEST_CASE("direction sets are closed under the lifted rotation") {
    for (auto [n, j] : std::vector<std::pair<int, int>>{{4, 1}, {6, 1}, {6, 2}, {8, 3}}) {
        DirectionSet ds = DirectionSet::plane(n, j);
        for (size_t u = 0; u < ds.dirs.size(); ++u)
            for (int s = 0; s < 2 * n; ++s) {
                int r = ds.rotIdx[u][s];
                double th = -s * (2.0 * j + 1.0) * M_PI / n;
                Vec2 d = ds.dirs[u][j - 1];
                Vec2 want{d.x * std::cos(th) - d.y * std::sin(th),
                          d.x * std::sin(th) + d.y * std::cos(th)};
                CHECK(std::fabs(ds.dirs[r][j - 1].x - want.x) < 1e-9);
                CHECK(std::fabs(ds.dirs[r][j - 1].y - want.y) < 1e-9);
            }
    }
    DirectionSet full6 = DirectionSet::full(6);
    for (size_t u = 0; u < full6.dirs.size(); ++u)
        for (int s = 0; s < 12; ++s) {
            int r = full6.rotIdx[u][s];
            for (int plane = 0; plane < 2; ++plane) {
                double th = -s * (2.0 * plane + 3.0) * M_PI / 6;
                Vec2 d = full6.dirs[u][plane];
                Vec2 want{d.x * std::cos(th) - d.y * std::sin(th),
                          d.x * std::sin(th) + d.y * std::cos(th)};
                CHECK(std::fabs(full6.dirs[r][plane].x - want.x) < 1e-9);
                CHECK(std::fabs(full6.dirs[r][plane].y - want.y) < 1e-9);
            }
        }
}

TEST_CASE("DP deviation equals the materialized measurement (Sub Rosa n=4)") {
    SubstitutionRule rule = build_substitution(4, subrosa_edgeword(4));
    LiftedPatch star = star_pattern(4);
    DirectionSet ds = DirectionSet::plane(4, 1);
    DeviationProfile prof = deviation_profile(rule, star, 2, &ds);
    for (int m = 0; m <= 2; ++m) {
        double direct = direct_deviation(rule, star, m, ds);
        CHECK(std::fabs(prof.deviations[m] - direct) < 1e-6 * std::max(1.0, direct));
    }
}

TEST_CASE("DP deviation equals the materialized measurement (Sub Rosa n=6, full grid)") {
    SubstitutionRule rule = build_substitution(6, subrosa_edgeword(6));
    LiftedPatch star = star_pattern(6);
    DirectionSet ds = DirectionSet::full(6);
    DeviationProfile prof = deviation_profile(rule, star, 1, &ds);
    for (int m = 0; m <= 1; ++m) {
        double direct = direct_deviation(rule, star, m, ds);
        CHECK(std::fabs(prof.deviations[m] - direct) < 1e-6 * std::max(1.0, direct));
    }
}

TEST_CASE("DP deviation equals the materialized measurement (planar n=4)") {
    SelectionResult sel = select_planar_rosa(4, 50);
    LiftedPatch star = star_pattern(4);
    DirectionSet ds = DirectionSet::plane(4, 1);
    DeviationProfile prof = deviation_profile(sel.rule, star, 2, &ds);
    for (int m = 0; m <= 2; ++m) {
        double direct = direct_deviation(sel.rule, star, m, ds);
        CHECK(std::fabs(prof.deviations[m] - direct) < 1e-6 * std::max(1.0, direct));
    }
}

TEST_CASE("Sub Rosa metatile deviations grow like lambda_1") {
    for (int n : {4, 6}) {
        SubstitutionRule rule = build_substitution(n, subrosa_edgeword(n));
        // measure flatness of the metatiles sigma^m(t_{0,k}), worst over k;
        // a star seed adds a transient that decays slower than lambda_1^m
        DeviationProfile prof;
        for (int k = 1; k <= n / 2; ++k) {
            LiftedPatch seed = patch_from_tiles(n, {Tile{lifted_zero(n), 0, static_cast<int8_t>(k)}});
            DeviationProfile p = deviation_profile(rule, seed, 5);
            if (prof.deviations.empty()) prof.deviations.assign(p.deviations.size(), 0);
            for (size_t m = 0; m < p.deviations.size(); ++m)
                prof.deviations[m] = std::max(prof.deviations[m], p.deviations[m]);
        }
        for (size_t m = 0; m + 1 < prof.deviations.size(); ++m)
            prof.ratios.push_back(prof.deviations[m + 1] / prof.deviations[m]);
        REQUIRE(prof.ratios.size() == 5);
        double l1 = subrosa_eigenvalue(n, 1);
        for (size_t r = 2; r < prof.ratios.size(); ++r)  // iterations 2..5
            CHECK(std::fabs(prof.ratios[r] - l1) < 0.25 * l1);
        VerdictResult v = planarity_verdict(prof);
        CHECK(v.verdict == Verdict::GrowthEvidence);
    }
}

TEST_CASE("planar selections stay bounded over five iterations") {
    for (int n : {4, 6}) {
        SelectionResult sel = select_planar_rosa(n, 50);
        DeviationProfile prof = deviation_profile(sel.rule, star_pattern(n), 5);
        VerdictResult v = planarity_verdict(prof);
        CHECK(v.verdict == Verdict::BoundedEvidence);
    }
}

TEST_CASE("verdict needs at least three ratios") {
    DeviationProfile p;
    p.deviations = {1, 2};
    p.ratios = {2};
    CHECK_THROWS_AS(planarity_verdict(p), PreconditionFailed);
    DeviationProfile g;
    g.deviations = {1, 2, 4, 8};
    g.ratios = {2, 2, 2};
    CHECK(planarity_verdict(g).verdict == Verdict::GrowthEvidence);
    CHECK(std::fabs(planarity_verdict(g).rate - 2) < 1e-12);
    DeviationProfile b;
    b.deviations = {1, 1, 1, 1};
    b.ratios = {1, 1, 1};
    CHECK(planarity_verdict(b).verdict == Verdict::BoundedEvidence);
}
