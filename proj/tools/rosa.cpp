#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rosa/edgeword.hpp"
#include "rosa/json_io.hpp"
#include "rosa/kenyon.hpp"
#include "rosa/multigrid.hpp"
#include "rosa/planarity.hpp"
#include "rosa/render_svg.hpp"
#include "rosa/spectral.hpp"
#include "rosa/substitution.hpp"

namespace {

void write_output(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw rosa::Error("cannot open output file: " + out);
    f << text;
}

rosa::Edgeword resolve_edgeword(int n, const std::string& word, const std::string& kind, int length,
                                int i) {
    if (!word.empty()) return rosa::edgeword_from_string(n, word);
    if (kind == "subrosa") return rosa::subrosa_edgeword(n);
    if (kind == "billiard") return rosa::billiard_prefix(n, length);
    if (kind == "candidate") return rosa::candidate_edgeword(n, i);
    throw rosa::PreconditionFailed("need --edgeword or --kind {subrosa|billiard|candidate}");
}

rosa::LiftedPatch resolve_seed(int n, const std::string& seed) {
    if (seed == "star") return rosa::star_pattern(n);
    if (seed.rfind("tile:", 0) == 0) {
        int i, j;
        char comma;
        std::istringstream s(seed.substr(5));
        if (!(s >> i >> comma >> j) || comma != ',' || i < 0 || j <= i || j >= n)
            throw rosa::PreconditionFailed("bad --seed tile:I,J");
        return rosa::patch_from_tiles(
            n, {rosa::Tile{rosa::lifted_zero(n), static_cast<int8_t>(i), static_cast<int8_t>(j)}});
    }
    throw rosa::PreconditionFailed("--seed must be star or tile:I,J");
}

// Expand "--config FILE" into key=value flags appended after the explicit
// arguments, skipping keys already given, so command-line flags win.
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (size_t a = 0; a < args.size(); ++a) {
        if (args[a] == "--config" && a + 1 < args.size()) path = args[a + 1];
        else if (args[a].rfind("--config=", 0) == 0) path = args[a].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw rosa::Error("cannot open config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        size_t eq = line.find('=');
        if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
        std::string key = "--" + line.substr(0, eq);
        bool given = false;
        for (const std::string& a : args)
            if (a == key || a.rfind(key + "=", 0) == 0) given = true;
        if (given) continue;
        args.push_back(key);
        args.push_back(line.substr(eq + 1));
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rhombus substitution tilings: edgewords, spectra, substitutions, multigrids"};
    app.require_subcommand(1);

    int n = 4, length = 20, idx = 3, maxI = 500, iterations = 1;
    double radius = 10, tol = 1e-6;
    std::string word, kind, seed = "star", in, out, cfg;

    auto addCommon = [&](CLI::App* c) {
        c->add_option("--n", n, "even n >= 4");
        c->add_option("--out", out, "output file (default stdout)");
        c->add_option("--config", cfg, "key=value config file; flags override");
    };

    CLI::App* cEdgeword = app.add_subcommand("edgeword", "generate an edgeword");
    addCommon(cEdgeword);
    cEdgeword->add_option("--kind", kind, "subrosa|billiard|candidate");
    cEdgeword->add_option("--length", length, "billiard prefix length");
    cEdgeword->add_option("--i", idx, "candidate index");

    CLI::App* cSpectrum = app.add_subcommand("spectrum", "expansion spectrum of an edgeword");
    addCommon(cSpectrum);
    cSpectrum->add_option("--edgeword", word, "edgeword string, e.g. 020020");
    cSpectrum->add_option("--kind", kind, "subrosa|billiard|candidate");
    cSpectrum->add_option("--i", idx, "candidate index");
    cSpectrum->add_option("--tol", tol, "classification tolerance");

    CLI::App* cTileability = app.add_subcommand("tileability", "counting-function criterion");
    addCommon(cTileability);
    cTileability->add_option("--edgeword", word, "edgeword string")->required();

    CLI::App* cSelect = app.add_subcommand("select", "minimal planar candidate index");
    addCommon(cSelect);
    cSelect->add_option("--max-i", maxI, "search bound");
    cSelect->add_option("--tol", tol, "classification tolerance");

    CLI::App* cGenerate = app.add_subcommand("generate", "build a rule and iterate a seed");
    addCommon(cGenerate);
    cGenerate->add_option("--edgeword", word, "edgeword string");
    cGenerate->add_option("--kind", kind, "subrosa|billiard|candidate");
    cGenerate->add_option("--i", idx, "candidate index");
    cGenerate->add_option("--iterations", iterations, "substitution steps");
    cGenerate->add_option("--seed", seed, "star or tile:I,J");

    CLI::App* cPlanarity = app.add_subcommand("planarity", "deviation profile of a rule");
    addCommon(cPlanarity);
    cPlanarity->add_option("--edgeword", word, "edgeword string");
    cPlanarity->add_option("--kind", kind, "subrosa|billiard|candidate");
    cPlanarity->add_option("--i", idx, "candidate index");
    cPlanarity->add_option("--iterations", iterations, "max iteration depth");
    cPlanarity->add_option("--seed", seed, "star or tile:I,J");

    CLI::App* cMultigrid = app.add_subcommand("multigrid", "dual tiling of G_n(1/2)");
    addCommon(cMultigrid);
    cMultigrid->add_option("--radius", radius, "intersection radius");
    cMultigrid->add_option("--length", length, "emit the half-line word instead")->default_val(0);

    CLI::App* cRender = app.add_subcommand("render", "patch JSON to SVG");
    addCommon(cRender);
    cRender->add_option("--in", in, "patch JSON file")->required();

    try {
        std::vector<std::string> args = apply_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const rosa::Error& e) {
        nlohmann::json err = {{"error", typeid(e).name()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }

    try {
        if (*cEdgeword) {
            write_output(out, rosa::edgeword_to_string(resolve_edgeword(n, "", kind, length, idx)));
        } else if (*cSpectrum) {
            rosa::Edgeword u = resolve_edgeword(n, word, kind, length, idx);
            write_output(out, rosa::spectrum_to_json(n, u, tol).dump(2));
        } else if (*cTileability) {
            rosa::Edgeword u = resolve_edgeword(n, word, kind, length, idx);
            auto r = rosa::tileability_criterion(n, u);
            nlohmann::json j = {{"n", n}, {"edgeword", rosa::edgeword_to_string(u)}, {"ok", r.ok}};
            if (!r.ok) j["witness"] = {{"x", r.x}, {"ux", r.ux}, {"j", r.j}};
            write_output(out, j.dump(2));
        } else if (*cSelect) {
            auto sel = rosa::select_planar_rosa(n, maxI, tol);
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : sel.log)
                rows.push_back({{"i", r.i},
                                {"allLetters", r.allLetters},
                                {"criterion", r.criterion},
                                {"corners", r.corners},
                                {"planar", r.planar},
                                {"primitive", r.primitive},
                                {"note", r.note}});
            nlohmann::json lambdas = nlohmann::json::array();
            for (double l : sel.spec.lambdas) lambdas.push_back(l);
            nlohmann::json j = {{"n", n},
                                {"i", sel.i},
                                {"edgeword", rosa::edgeword_to_string(sel.u)},
                                {"lambdas", lambdas},
                                {"checks", rows.back()},
                                {"log", rows}};
            write_output(out, j.dump(2));
        } else if (*cGenerate) {
            rosa::Edgeword u = resolve_edgeword(n, word, kind, length, idx);
            auto rule = rosa::build_substitution(n, u);
            rosa::LiftedPatch patch = rosa::iterate(rule, resolve_seed(n, seed), iterations);
            rosa::validate_patch(patch);
            rosa::PatchMeta meta{rosa::edgeword_to_string(u), iterations, seed};
            write_output(out, rosa::patch_to_json(patch, meta).dump());
        } else if (*cPlanarity) {
            rosa::Edgeword u = resolve_edgeword(n, word, kind, length, idx);
            auto rule = rosa::build_substitution(n, u);
            auto prof = rosa::deviation_profile(rule, resolve_seed(n, seed), iterations);
            auto verdict = rosa::planarity_verdict(prof);
            nlohmann::json j = {{"n", n},
                                {"edgeword", rosa::edgeword_to_string(u)},
                                {"profile", rosa::profile_to_json(prof)},
                                {"verdict", verdict.verdict == rosa::Verdict::GrowthEvidence
                                                ? "GrowthEvidence"
                                                : "BoundedEvidence"}};
            if (verdict.verdict == rosa::Verdict::GrowthEvidence) j["rate"] = verdict.rate;
            write_output(out, j.dump(2));
        } else if (*cMultigrid) {
            if (length > 0) {
                write_output(out, rosa::edgeword_to_string(rosa::halfline_word(n, length)));
            } else {
                rosa::LiftedPatch patch = rosa::dual_patch(n, radius);
                rosa::validate_patch(patch);
                rosa::PatchMeta meta{"", 0, "multigrid"};
                write_output(out, rosa::patch_to_json(patch, meta).dump());
            }
        } else if (*cRender) {
            std::ifstream f(in);
            if (!f) throw rosa::Error("cannot open input file: " + in);
            nlohmann::json j;
            f >> j;
            rosa::LiftedPatch patch = rosa::patch_from_json(j);
            write_output(out, rosa::render_svg(patch));
        }
    } catch (const rosa::Error& e) {
        nlohmann::json err = {{"error", typeid(e).name()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err = {{"error", "exception"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
