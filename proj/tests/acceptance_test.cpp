// Acceptance gate: one line of output per criterion, [PASS]/[FAIL]/[SKIP],
// with timing against each budget. Exits nonzero iff any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gridsat/coloring.hpp"
#include "gridsat/cycle_tree.hpp"
#include "gridsat/hamming.hpp"
#include "gridsat/oracle.hpp"
#include "gridsat/percolation.hpp"
#include "gridsat/rank_certificate.hpp"
#include "gridsat/saturation.hpp"
#include "gridsat/weak_saturation.hpp"

using namespace gridsat;

namespace {

int failures = 0;

struct Outcome {
    bool ok = false;
    bool skipped = false;
    std::string detail;
};

void criterion(int n, const std::string& label, double budget_s,
               const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs < budget_s;
    const char* tag = out.skipped ? "[SKIP]" : (out.ok && in_budget ? "[PASS]" : "[FAIL]");
    if (!out.skipped && !(out.ok && in_budget)) ++failures;
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << secs;
    std::cout << tag << " criterion " << n << ": " << label << " — " << out.detail;
    if (!in_budget && out.ok) std::cout << " [budget exceeded]";
    std::cout << " (" << t.str() << "s / " << budget_s << "s)" << std::endl;
}

// the criterion-1 parameter grid; fn(k, r, d, m)
void for_each_grid_instance(const std::function<void(int, int, int, int)>& fn) {
    for (int k = 2; k <= 4; ++k)
        for (int r = 2; r <= k; ++r)
            for (int d = 1; d <= 3; ++d)
                for (int m = 1; m <= d; ++m) fn(k, r, d, m);
    for (int d = 4; d <= 7; ++d)
        for (int m = 1; m <= 3; ++m) fn(2, 2, d, m);
}

bool spanning_connected(const EdgeSubgraph& g) {
    const GridSpace& sp = g.space();
    std::vector<std::uint32_t> parent(sp.vertex_count());
    for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::uint64_t comps = sp.vertex_count();
    for (Edge e : g.edges()) {
        auto a = find(static_cast<std::uint32_t>(sp.edge_base(e)));
        auto b = find(static_cast<std::uint32_t>(sp.edge_top(e)));
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps == 1;
}

// single-edge-at-a-time closure in a caller-shuffled order
EdgeSubgraph sequential_closure(const EdgeSubgraph& start, const PatternFamily& fam,
                                std::mt19937_64& rng) {
    EdgeSubgraph g = start;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Edge> absent = g.absent_edges();
        std::shuffle(absent.begin(), absent.end(), rng);
        for (Edge e : absent)
            if (creates_new_copy(g, e, fam)) {
                g.add(e);
                grew = true;
            }
    }
    return g;
}

SatContext context_for(int m, int d) {
    SatParams p = derive_params(m, d);
    return SatContext(p, patterned_coloring(p.interval), patterned_coloring(p.s));
}

std::string run_all() {
    // 1. closed form vs construction vs engine across the parameter grid
    criterion(1, "construction size matches the closed form and percolates", 60, [] {
        int instances = 0;
        bool ok = true;
        for_each_grid_instance([&](int k, int r, int d, int m) {
            EdgeSubgraph g = build_wsat_graph(k, r, d, m);
            ok = ok && BigInt(g.size()) == wsat_grid_formula(k, r, d, m);
            ok = ok && is_weakly_saturated(g, PatternFamily::axis_grid(r, m));
            ++instances;
        });
        return Outcome{ok, false, std::to_string(instances) + " instances, exact agreement"};
    });

    // 2. the binary-host family of values 2^d - 1
    criterion(2, "cube weak saturation values 2^d-1 for d=2..7", 60, [] {
        bool ok = true;
        for (int d = 2; d <= 7; ++d) {
            BigInt want = ipow(2, d) - 1;
            EdgeSubgraph g = build_wsat_graph(2, 2, d, 2);
            ok = ok && wsat_grid_formula(2, 2, d, 2) == want;
            ok = ok && BigInt(g.size()) == want;
            ok = ok && is_weakly_saturated(g, PatternFamily::subcube(2));
        }
        return Outcome{ok, false, "formula, construction and engine agree on all six values"};
    });

    // 3. exhaustive oracle ground truth
    criterion(3, "exhaustive minima on tiny hosts", 600, [] {
        struct Case {
            int k, d;
            const char* fam;
            int expect;
        };
        bool ok = true;
        for (Case c : {Case{2, 2, "subcube:2", 3}, Case{2, 3, "subcube:2", 7},
                       Case{2, 3, "subcube:3", 11}, Case{3, 2, "subcube:2", 8},
                       Case{3, 2, "grid:3:2", 11}, Case{2, 3, "cycle:4", 7},
                       Case{3, 2, "cycle:4", 8}}) {
            OracleResult res = min_wsat(GridSpace(c.k, c.d), PatternFamily::parse(c.fam));
            ok = ok && res.value == c.expect;
        }
        return Outcome{ok, false, "seven exhaustive minima match their expected values"};
    });

    // 4. exact rank lower bounds and per-copy dependency certificates
    criterion(4, "rank certificates", 300, [] {
        bool ok = true;
        int ranked = 0;
        for_each_grid_instance([&](int k, int r, int d, int m) {
            if (GridSpace(k, d).edge_count() > 200) return;
            ok = ok && BigInt(rank_lower_bound(k, r, d, m)) == wsat_grid_formula(k, r, d, m);
            ++ranked;
        });
        int certs = 0;
        GridSpace p42(4, 2);
        for_each_axis_subgrid(p42, 3, 2, [&](const AxisSubgrid& copy) {
            ok = ok && dependency_certificate(copy, 4, 3, 2, 2).verified;
            ++certs;
        });
        GridSpace q4(2, 4);
        for_each_axis_subgrid(q4, 2, 3, [&](const AxisSubgrid& copy) {
            ok = ok && dependency_certificate(copy, 2, 2, 4, 3).verified;
            ++certs;
        });
        return Outcome{ok, false,
                       std::to_string(ranked) + " ranks equal the closed form, " +
                           std::to_string(certs) + " copy certificates verified"};
    });

    // 5. spanning trees that percolate under even cycles
    criterion(5, "cycle trees", 120, [] {
        struct Case {
            int k, d, ell;
        };
        bool ok = true;
        for (Case c : {Case{2, 2, 2}, Case{2, 3, 2}, Case{2, 3, 3}, Case{2, 4, 3},
                       Case{2, 4, 4}, Case{3, 2, 2}, Case{3, 3, 2}, Case{4, 2, 2}}) {
            EdgeSubgraph tree = build_cycle_tree(c.k, c.d, c.ell);
            std::uint64_t want = tree.space().vertex_count() - 1;
            ok = ok && tree.size() == want;
            ok = ok && spanning_connected(tree);
            ok = ok && is_weakly_saturated(tree, PatternFamily::even_cycle(2 * c.ell));
        }
        return Outcome{ok, false, "eight trees: size k^d-1, spanning, connected, percolating"};
    });

    // 6. perfect binary codes
    criterion(6, "perfect code sizes and domination", 1, [] {
        bool ok = true;
        int sizes[] = {0, 1, 2, 16};
        for (int t = 1; t <= 3; ++t) {
            HammingCode code = hamming_code(t);
            ok = ok && static_cast<int>(code.members.size()) == sizes[t];
            ok = ok && verify_perfect_code(code);
        }
        return Outcome{ok, false, "t=1,2,3 give sizes 1,2,16, all perfectly dominating"};
    });

    // 7. colorings of the 4- and 6-dimensional cubes
    criterion(7, "short-cycle-free 3-colorings found and verified", 600, [] {
        bool ok = true;
        std::ostringstream detail;
        for (int s : {4, 6}) {
            auto col = find_coloring(s, 2024, std::chrono::minutes(9));
            if (!col || !verify_coloring(*col)) {
                ok = false;
                continue;
            }
            detail << (s == 4 ? "" : "; ") << "s=" << s << ": " << square_count(s)
                   << " four-cycles and " << hexagon_count(s) << " six-cycles clean";
        }
        return Outcome{ok, false, detail.str()};
    });

    // 8. the saturated-graph construction, exhaustive regime
    criterion(8, "saturation construction at d=12, exhaustive", 600, [] {
        SatContext ctx = context_for(2, 12);
        GridSpace sp(2, 12);
        bool ok = count_axis_subgrids(sp, 2, 2) == 67584;
        EdgeSubgraph g = build_base_graph(ctx);
        ok = ok && verify_qm_free(g, 2);

        std::vector<VertexClass> cls(sp.vertex_count());
        for (Vertex v = 0; v < sp.vertex_count(); ++v) cls[v] = classify_vertex(v, ctx.p);
        for (Edge e : g.edges()) {
            Vertex u = sp.edge_base(e), v = sp.edge_top(e);
            ok = ok && !cls[u].excluded && !cls[v].excluded;              // isolated class
            ok = ok && cls[u].level < 2 && cls[v].level < 2;              // top level isolated
            ok = ok && (cls[u].level > 0 || cls[v].level > 0);            // level 0 independent
            ok = ok && std::abs(cls[u].level - cls[v].level) <= 1;        // ladder steps by one
            if (std::countr_zero(u ^ v) >= ctx.p.tail_offset())
                ok = ok && cls[u].level == cls[v].level;                  // tail edges level-flat
        }

        A0SaturationReport rep = verify_a0_saturation(ctx);
        ok = ok && rep.ok;
        SatCensus cen = census(ctx.p);
        ok = ok && cen.class_sizes[0] == 1 && rep.edges_checked == 0;  // vacuous here

        EdgeSubgraph done = complete_to_saturated(g, 2);
        ok = ok && is_saturated(done, 2);
        std::uint64_t a0_deg = 0;
        for (Edge e : done.edges()) {
            VertexClass a = cls[sp.edge_base(e)], b = cls[sp.edge_top(e)];
            if (!a.excluded && !b.excluded && a.level == 0 && b.level == 0) ++a0_deg;
        }
        ok = ok && a0_deg == 0;

        std::ostringstream detail;
        detail.precision(2);
        detail << std::fixed << "level-0 saturation vacuous (census |A_0|="
               << cen.class_sizes[0] << "); |E(G')| = " << done.size() << " of "
               << sp.edge_count() << " (" << static_cast<double>(done.size()) / 4096
               << " per vertex vs reference accounting " << *cen.bound_special << ")";
        return Outcome{ok, false, detail.str()};
    });

    // 9. the tailed regime has real level-0 edges, all witnessed
    criterion(9, "saturation construction at d=15, witnesses", 600, [] {
        SatContext ctx = context_for(2, 15);
        A0SaturationReport rep = verify_a0_saturation(ctx);
        bool ok = rep.ok && rep.edges_checked > 0;
        return Outcome{ok, false,
                       std::to_string(rep.edges_checked) +
                           " level-0 host edges, every witness subcube validates"};
    });

    // 10. sampled checks on the 36-dimensional host (optional)
    criterion(10, "saturation construction at d=36, sampled", 1200, [] {
        auto col = find_coloring(18, 2024, std::chrono::minutes(10));
        if (!col)
            return Outcome{false, true, "coloring search for the 18-cube exhausted its budget"};
        SatParams p = derive_params(2, 36);
        SatContext ctx(p, *col, patterned_coloring(p.s));
        bool ok = verify_qm_free_sampled(ctx, 10000, 77);
        A0SaturationReport rep = verify_a0_saturation_sampled(ctx, 1000, 78);
        ok = ok && rep.ok && rep.edges_checked == 1000;
        return Outcome{ok, false,
                       "10^4 sampled subcubes have no full copy; 10^3 sampled level-0 "
                       "edges all witnessed"};
    });

    // 11. engine order independence, monotonicity, predicate agreement
    criterion(11, "engine properties", 300, [] {
        std::mt19937_64 rng(4242);
        bool ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            int k = 2 + static_cast<int>(rng() % 2);
            int d = k == 2 ? 3 : 2;
            GridSpace sp(k, d);
            PatternFamily fam = (trial % 3 == 0) ? PatternFamily::even_cycle(4)
                                                 : PatternFamily::axis_grid(2, 2);
            EdgeSubgraph small(sp), big(sp);
            for (Edge e = 0; e < sp.edge_count(); ++e) {
                if (rng() % 3 == 0) small.add(e);
                if (small.has(e) || rng() % 3 == 0) big.add(e);
            }
            EdgeSubgraph closure = percolate(small, fam).final;
            ok = ok && sequential_closure(small, fam, rng) == closure;       // order
            ok = ok && percolate(big, fam).final.contains(closure);          // monotone
        }
        SatContext ctx = context_for(2, 12);
        GridSpace sp(2, 12);
        EdgeSubgraph g = build_base_graph(ctx);
        for (Vertex v = 0; v < sp.vertex_count() && ok; ++v)
            for (int dir = 0; dir < 12; ++dir) {
                if ((v >> dir) & 1) continue;
                Vertex u = v | (Vertex{1} << dir);
                ok = ok && g.has(sp.edge_id(v, dir)) == edge_in_G(v, u, ctx);
            }
        return Outcome{ok, false,
                       "100 closure order/monotonicity trials; materialization agrees with "
                       "the predicate on all 24576 adjacent pairs"};
    });

    return failures == 0 ? "all criteria satisfied" : "criteria failed";
}

}  // namespace

int main() {
    std::string verdict = run_all();
    std::cout << verdict << std::endl;
    return failures == 0 ? 0 : 1;
}
