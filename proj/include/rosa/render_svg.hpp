#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "rosa/geometry.hpp"
#include "rosa/substitution.hpp"

namespace rosa {

struct RenderOptions {
    double scale = 24;
    double stroke = 0.6;
    std::vector<std::string> colors = {"#355070", "#6d597a", "#b56576", "#e56b6f",
                                       "#eaac8b", "#ffd6a5", "#cdeac0", "#8fb8de"};
};

// SVG of the patch embedded via pos -> sum pos_i (cos(i*pi/n), sin(i*pi/n)),
// colored by angle class |j - i|.
inline std::string render_svg(const LiftedPatch& patch, const RenderOptions& opt = {}) {
    int n = patch.n;
    double minX = 0, maxX = 0, minY = 0, maxY = 0;
    std::vector<std::array<Vec2, 4>> quads;
    quads.reserve(patch.tiles.size());
    for (const PackedTile& pt : patch.tiles) {
        Tile t = unpack_tile(n, pt);
        auto [a, b, d, c] = tile_corners(t);  // order a, a+e_i, a+e_i+e_j, a+e_j
        std::array<Vec2, 4> q = {embed(n, a), embed(n, b), embed(n, c), embed(n, d)};
        for (const Vec2& v : q) {
            minX = std::min(minX, v.x);
            maxX = std::max(maxX, v.x);
            minY = std::min(minY, v.y);
            maxY = std::max(maxY, v.y);
        }
        quads.push_back(q);
    }
    double s = opt.scale, pad = 1.0;
    double w = (maxX - minX + 2 * pad) * s, h = (maxY - minY + 2 * pad) * s;
    auto px = [&](Vec2 v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", (v.x - minX + pad) * s,
                      (maxY - v.y + pad) * s);
        return std::string(buf);
    };
    std::string svg;
    char head[256];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  w, h, w, h);
    svg += head;
    for (size_t t = 0; t < quads.size(); ++t) {
        int cls = patch.tiles[t].j - patch.tiles[t].i;
        if (cls > n / 2) cls = n - cls;
        const std::string& color = opt.colors[(cls - 1) % opt.colors.size()];
        svg += "<polygon points=\"";
        for (const Vec2& v : quads[t]) svg += px(v) + " ";
        char tail[128];
        std::snprintf(tail, sizeof tail, "\" fill=\"%s\" stroke=\"#222\" stroke-width=\"%.2f\"/>\n",
                      color.c_str(), opt.stroke);
        svg += tail;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace rosa
