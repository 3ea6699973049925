// Command-line front end for the gridsat library: construct graphs, verify
// them, certify bounds, and export JSON/DOT. Exit codes: 0 success/verified,
// 1 verification failed, 2 usage or input error, 3 budget exhausted.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridsat/coloring.hpp"
#include "gridsat/cycle_tree.hpp"
#include "gridsat/document.hpp"
#include "gridsat/hamming.hpp"
#include "gridsat/oracle.hpp"
#include "gridsat/percolation.hpp"
#include "gridsat/rank_certificate.hpp"
#include "gridsat/saturation.hpp"
#include "gridsat/weak_saturation.hpp"

namespace {

using namespace gridsat;

GraphDocument read_document(const std::string& path) {
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return parse_document(buf.str());
    }
    return load_document(path);
}

void emit_document(const GraphDocument& doc, const std::string& out, bool dot) {
    std::string text = dot ? export_dot(doc) : serialize_document(doc);
    if (out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << text;
    }
}

nlohmann::json census_json(const SatParams& p) {
    SatCensus c = census(p);
    nlohmann::json j;
    j["m"] = p.m;
    j["d"] = p.d;
    j["t"] = p.t;
    j["s"] = p.s;
    nlohmann::json sizes = nlohmann::json::array();
    for (const BigInt& v : c.class_sizes) sizes.push_back(v.str());
    j["class_sizes"] = sizes;
    j["excluded"] = c.excluded.str();
    j["level1_bound"] = c.level1_bound.str();
    j["bound_general"] = c.bound_general.str();
    if (c.bound_special) j["bound_special"] = c.bound_special->str();
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"saturation and weak saturation toolkit for hypercubes and grids"};
    app.require_subcommand(1);

    // ---- formula ----------------------------------------------------------
    auto* formula = app.add_subcommand("formula", "print closed-form values");
    formula->require_subcommand(1);
    int fk = 2, fr = 2, fd = 2, fm = 2;
    auto* f_wsat = formula->add_subcommand("wsat", "weak saturation number of the grid");
    f_wsat->add_option("-k", fk, "alphabet size")->required();
    f_wsat->add_option("-r", fr, "pattern leg length")->required();
    f_wsat->add_option("-d", fd, "host dimension")->required();
    f_wsat->add_option("-m", fm, "pattern dimension")->required();
    f_wsat->callback([&] { std::cout << wsat_grid_formula(fk, fr, fd, fm) << "\n"; });

    int cm = 2, cd = 12;
    auto* f_census = formula->add_subcommand("satcensus", "vertex class census of the construction");
    f_census->add_option("-m", cm, "forbidden subcube dimension")->required();
    f_census->add_option("-d", cd, "host dimension")->required();
    f_census->callback(
        [&] { std::cout << census_json(derive_params(cm, cd)).dump(2) << "\n"; });

    // ---- build ------------------------------------------------------------
    auto* build = app.add_subcommand("build", "construct a graph document");
    build->require_subcommand(1);
    std::string build_out = "-";
    bool build_dot = false;

    int bk = 2, br = 2, bd = 2, bm = 2;
    auto* b_wsat = build->add_subcommand("wsat", "weakly saturating construction");
    b_wsat->add_option("-k", bk)->required();
    b_wsat->add_option("-r", br)->required();
    b_wsat->add_option("-d", bd)->required();
    b_wsat->add_option("-m", bm)->required();
    b_wsat->callback([&] {
        EdgeSubgraph g = build_wsat_graph(bk, br, bd, bm);
        nlohmann::json meta{{"construction", "wsat"}, {"k", bk}, {"r", br}, {"d", bd}, {"m", bm}};
        emit_document(make_document(g, meta), build_out, build_dot);
    });

    int sm = 2, sd = 12;
    std::uint64_t s_seed = 0;
    std::string s_cache = ".gridsat-cache";
    std::uint64_t s_budget_ms = 600000;
    auto* b_sat = build->add_subcommand("sat", "subcube-free saturated base construction");
    b_sat->add_option("-m", sm)->required();
    b_sat->add_option("-d", sd)->required();
    b_sat->add_option("--seed", s_seed, "seed for the coloring search")->required();
    b_sat->add_option("--cache", s_cache, "coloring cache directory");
    b_sat->add_option("--budget-ms", s_budget_ms, "coloring search budget");
    b_sat->callback([&] {
        SatParams p = derive_params(sm, sd);
        auto interval = load_or_find_coloring(s_cache, p.interval, s_seed,
                                              std::chrono::milliseconds(s_budget_ms));
        auto tail = load_or_find_coloring(s_cache, p.s, s_seed,
                                          std::chrono::milliseconds(s_budget_ms));
        if (!interval || !tail)
            throw BudgetExceeded("coloring search exhausted its budget");
        SatContext ctx(p, *interval, *tail);
        EdgeSubgraph g = build_base_graph(ctx);
        nlohmann::json meta{{"construction", "sat"},
                            {"m", sm},
                            {"d", sd},
                            {"seed", s_seed},
                            {"census", census_json(p)}};
        emit_document(make_document(g, meta), build_out, build_dot);
    });

    int tk = 2, td = 2, tl = 2;
    auto* b_tree = build->add_subcommand("cycle-tree", "spanning tree percolating under even cycles");
    b_tree->add_option("-k", tk)->required();
    b_tree->add_option("-d", td)->required();
    b_tree->add_option("-l", tl, "half cycle length")->required();
    for (auto* sc : {b_wsat, b_sat, b_tree}) {
        sc->add_option("-o,--output", build_out, "output path (default stdout)");
        sc->add_flag("--dot", build_dot, "emit DOT instead of JSON");
    }
    b_tree->callback([&] {
        EdgeSubgraph g = build_cycle_tree(tk, td, tl);
        nlohmann::json meta{{"construction", "cycle-tree"}, {"k", tk}, {"d", td}, {"l", tl}};
        emit_document(make_document(g, meta), build_out, build_dot);
    });

    // ---- check ------------------------------------------------------------
    auto* check = app.add_subcommand("check", "verify a graph document");
    check->require_subcommand(1);
    std::string check_in = "-";
    int threads = 1;

    std::string family_text = "subcube:2";
    std::string cert_out;
    auto* c_perc = check->add_subcommand("percolate", "does the document percolate to the full host?");
    c_perc->add_option("file", check_in, "document path (default stdin)");
    c_perc->add_option("--family", family_text, "pattern family: subcube:M | grid:R:M | cycle:LEN");
    c_perc->add_option("--threads", threads, "worker threads");
    c_perc->add_option("--cert", cert_out, "write the step-by-step certificate JSON here");
    c_perc->callback([&] {
        GraphDocument doc = read_document(check_in);
        EdgeSubgraph g = to_subgraph(doc);
        PatternFamily fam = PatternFamily::parse(family_text);
        PercolationCertificate cert = percolate(g, fam, threads);
        bool full = cert.final.size() == g.space().edge_count();
        if (!cert_out.empty()) {
            nlohmann::json j;
            j["family"] = fam.name();
            j["verified"] = full;
            nlohmann::json steps = nlohmann::json::array();
            for (const auto& st : cert.steps)
                steps.push_back({{"edge", st.edge}, {"witness", st.witness}});
            j["steps"] = steps;
            std::ofstream f(cert_out);
            if (!f) throw std::runtime_error("cannot write " + cert_out);
            f << j.dump(2) << "\n";
        }
        if (full)
            std::cout << "verified: closure reaches all " << g.space().edge_count()
                      << " edges in " << cert.steps.size() << " additions"
                      << (cert_out.empty() ? "" : " (certificate: " + cert_out + ")") << "\n";
        else
            std::cout << "failed: closure misses "
                      << g.space().edge_count() - cert.final.size() << " edges\n";
        if (!full) throw int(1);
    });

    int chm = 2;
    auto* c_sat = check->add_subcommand("saturated", "is the document saturated for Q_m?");
    c_sat->add_option("file", check_in, "document path (default stdin)");
    c_sat->add_option("-m", chm)->required();
    c_sat->callback([&] {
        EdgeSubgraph g = to_subgraph(read_document(check_in));
        bool ok = is_saturated(g, chm);
        std::cout << (ok ? "verified: saturated\n" : "failed: not saturated\n");
        if (!ok) throw int(1);
    });

    auto* c_free = check->add_subcommand("qmfree", "is the document free of m-subcubes?");
    c_free->add_option("file", check_in, "document path (default stdin)");
    c_free->add_option("-m", chm)->required();
    c_free->callback([&] {
        EdgeSubgraph g = to_subgraph(read_document(check_in));
        bool ok = verify_qm_free(g, chm);
        std::cout << (ok ? "verified: no m-subcube present\n" : "failed: m-subcube found\n");
        if (!ok) throw int(1);
    });

    // ---- cert -------------------------------------------------------------
    auto* cert = app.add_subcommand("cert", "exact-arithmetic certificates");
    cert->require_subcommand(1);
    int rk = 2, rr = 2, rd = 2, rm = 2;
    auto* c_rank = cert->add_subcommand("rank", "edge-vector rank vs the closed form");
    c_rank->add_option("-k", rk)->required();
    c_rank->add_option("-r", rr)->required();
    c_rank->add_option("-d", rd)->required();
    c_rank->add_option("-m", rm)->required();
    c_rank->callback([&] {
        int rank = rank_lower_bound(rk, rr, rd, rm);
        BigInt formula_value = wsat_grid_formula(rk, rr, rd, rm);
        bool equal = BigInt(rank) == formula_value;
        std::cout << "rank " << rank << "\nformula " << formula_value << "\n"
                  << (equal ? "equal\n" : "UNEQUAL\n");
        if (!equal) throw int(1);
    });

    // ---- oracle -----------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "exhaustive minima on tiny hosts");
    oracle->require_subcommand(1);
    int ok_ = 2, od = 2, om = 2;
    std::string ofam = "subcube:2";
    std::uint64_t o_max_edges = 0, o_time_ms = 0;
    auto* o_wsat = oracle->add_subcommand("wsat", "minimum weakly saturating edge count");
    o_wsat->add_option("-k", ok_)->required();
    o_wsat->add_option("-d", od)->required();
    o_wsat->add_option("--family", ofam, "pattern family");
    o_wsat->add_option("--max-edges", o_max_edges, "host edge cap override");
    o_wsat->add_option("--time-limit-ms", o_time_ms, "search time limit override");
    o_wsat->callback([&] {
        SearchBudget budget;
        if (o_max_edges) budget.max_wsat_edges = o_max_edges;
        if (o_time_ms) budget.time_limit = std::chrono::milliseconds(o_time_ms);
        OracleResult res = min_wsat(GridSpace(ok_, od), PatternFamily::parse(ofam), budget);
        std::cout << "minimum " << res.value << "\nwitness";
        for (Edge e : res.witness.edges()) std::cout << ' ' << e;
        std::cout << "\n";
    });

    auto* o_sat = oracle->add_subcommand("sat", "minimum saturated edge count");
    o_sat->add_option("-d", od)->required();
    o_sat->add_option("-m", om)->required();
    o_sat->add_option("--max-edges", o_max_edges, "host edge cap override");
    o_sat->add_option("--time-limit-ms", o_time_ms, "search time limit override");
    o_sat->callback([&] {
        SearchBudget budget;
        if (o_max_edges) budget.max_sat_edges = o_max_edges;
        if (o_time_ms) budget.time_limit = std::chrono::milliseconds(o_time_ms);
        OracleResult res = min_sat(GridSpace(2, od), om, budget);
        std::cout << "minimum " << res.value << "\nwitness";
        for (Edge e : res.witness.edges()) std::cout << ' ' << e;
        std::cout << "\n";
    });

    // ---- coloring ---------------------------------------------------------
    auto* coloring = app.add_subcommand("coloring", "edge colorings without short monochromatic cycles");
    coloring->require_subcommand(1);
    int cs = 4;
    std::uint64_t c_seed = 0;
    std::uint64_t c_budget_ms = 600000;
    std::string c_cache = ".gridsat-cache";
    auto* col_find = coloring->add_subcommand("find", "find and cache a coloring");
    col_find->add_option("-s", cs, "cube dimension")->required();
    col_find->add_option("--seed", c_seed, "search seed")->required();
    col_find->add_option("--budget-ms", c_budget_ms, "search budget");
    col_find->add_option("--cache", c_cache, "cache directory");
    col_find->callback([&] {
        auto got = load_or_find_coloring(c_cache, cs, c_seed,
                                         std::chrono::milliseconds(c_budget_ms));
        if (!got) throw BudgetExceeded("coloring search exhausted its budget");
        std::filesystem::path file =
            std::filesystem::path(c_cache) /
            ("coloring_s" + std::to_string(cs) + "_seed" + std::to_string(c_seed) + ".txt");
        std::cout << "found: s=" << cs << " edges=" << got->colors.size()
                  << " cached at " << file.string() << "\n";
    });

    std::string c_file;
    auto* col_verify = coloring->add_subcommand("verify", "re-verify a cached coloring");
    col_verify->add_option("file", c_file, "coloring cache file")->required();
    col_verify->callback([&] {
        LoadedColoring lc = load_coloring(c_file);
        bool ok = verify_coloring(lc.coloring);
        std::cout << (ok ? "verified: no monochromatic short cycles\n"
                         : "failed: monochromatic short cycle present\n");
        if (!ok) throw int(1);
    });

    // ---- hamming ----------------------------------------------------------
    auto* hamming = app.add_subcommand("hamming", "perfect binary code caches");
    int ht = 1;
    std::string h_cache = ".gridsat-cache";
    hamming->add_option("-t", ht, "code order (length 2^t - 1)")->required();
    hamming->add_option("--cache", h_cache, "cache directory");
    hamming->callback([&] {
        HammingCode code = hamming_code(ht);
        if (!verify_perfect_code(code)) {
            std::cout << "failed: not a perfect code\n";
            throw int(1);
        }
        std::filesystem::create_directories(h_cache);
        std::filesystem::path file =
            std::filesystem::path(h_cache) / ("hamming_t" + std::to_string(ht) + ".txt");
        save_hamming_code(file, code);
        std::cout << "verified: t=" << ht << " length=" << code.length()
                  << " size=" << code.members.size() << " cached at " << file.string() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (int code) {  // verification verdicts
        return code;
    } catch (const gridsat::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
