#pragma once

#include <string>

#include "json.hpp"
#include "rosa/edgeword.hpp"
#include "rosa/planarity.hpp"
#include "rosa/spectral.hpp"
#include "rosa/substitution.hpp"

namespace rosa {

struct PatchMeta {
    std::string edgeword;
    int iterations = 0;
    std::string seed;
};

inline nlohmann::json patch_to_json(const LiftedPatch& p, const PatchMeta& meta = {}) {
    nlohmann::json tiles = nlohmann::json::array();
    for (const PackedTile& pt : p.tiles) {
        nlohmann::json pos = nlohmann::json::array();
        for (int d = 0; d < p.n; ++d) pos.push_back(pt.c[d]);
        tiles.push_back({{"pos", pos}, {"type", {pt.i, pt.j}}});
    }
    return {{"n", p.n},
            {"tiles", tiles},
            {"meta",
             {{"edgeword", meta.edgeword}, {"iterations", meta.iterations}, {"seed", meta.seed}}}};
}

inline LiftedPatch patch_from_json(const nlohmann::json& j) {
    LiftedPatch p{j.at("n").get<int>(), {}};
    require_even_n(p.n);
    if (p.n > kMaxPatchN) throw PreconditionFailed("n exceeds the supported patch dimension");
    for (const auto& t : j.at("tiles")) {
        Tile tile{LiftedPoint(p.n, 0), 0, 0};
        const auto& pos = t.at("pos");
        if (static_cast<int>(pos.size()) != p.n)
            throw PreconditionFailed("tile position has wrong dimension");
        for (int d = 0; d < p.n; ++d) tile.pos[d] = pos[d].get<int>();
        tile.i = static_cast<int8_t>(t.at("type")[0].get<int>());
        tile.j = static_cast<int8_t>(t.at("type")[1].get<int>());
        if (tile.i < 0 || tile.j <= tile.i || tile.j >= p.n)
            throw PreconditionFailed("bad tile type");
        p.tiles.push_back(pack_tile(p.n, tile));
    }
    p.normalize();
    return p;
}

inline nlohmann::json spectrum_to_json(int n, const Edgeword& u, double tol = 1e-6) {
    Spectrum s = spectrum(n, u);
    PseudoCirculant m = expansion_matrix(n, u);
    nlohmann::json fc = nlohmann::json::array();
    for (long long c : m.firstColumn) fc.push_back(c);
    nlohmann::json lambdas = nlohmann::json::array();
    for (double l : s.lambdas) lambdas.push_back(l);
    return {{"n", n},
            {"firstColumn", fc},
            {"lambdas", lambdas},
            {"classification", to_string(classify_planarity(s, tol))}};
}

inline nlohmann::json profile_to_json(const DeviationProfile& p) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t m = 0; m < p.deviations.size(); ++m) {
        nlohmann::json row = {{"iteration", m}, {"deviation", p.deviations[m]}};
        if (m > 0) row["ratio"] = p.ratios[m - 1];
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rosa
