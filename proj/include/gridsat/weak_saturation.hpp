#pragma once

// Minimum weakly saturated graphs for axis-aligned P_r^m patterns in P_k^d:
// the closed-form count, the extremal construction, and a canonical order in
// which the missing edges percolate.
//
// The construction keeps, for every vertex v, the downward edge in each
// direction whose coordinate lies in [1, r-2] ("small"), plus the downward
// edges in the first min{L(v), m-1} directions whose coordinate is >= r-1
// ("large", L(v) counts them). Every edge is the downward edge of its upper
// endpoint, so the per-vertex counts add up to the closed form.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gridsat/bigint.hpp"
#include "gridsat/core.hpp"
#include "gridsat/edge_set.hpp"

namespace gridsat {

inline void check_wsat_args(int k, int r, int d, int m) {
    if (!(2 <= r && r <= k)) throw std::invalid_argument("need 2 <= r <= k");
    if (!(1 <= m && m <= d)) throw std::invalid_argument("need 1 <= m <= d");
}

// Number of edges of the extremal graph, by inclusion-exclusion over how many
// coordinates exceed the pattern range (j) and how many sit strictly inside
// it (i). The second sum removes the shortfall of vertices whose large-count
// is below m-1. Convention 0^0 = 1 throughout.
inline BigInt wsat_grid_formula(int k, int r, int d, int m) {
    check_wsat_args(k, r, d, m);
    BigInt total = 0;
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= d - j; ++i)
            total += BigInt(m - 1 + i) * binomial(d, j) * binomial(d - j, i) *
                     ipow(k - r + 1, j) * ipow(r - 2, i);
    for (int j = 0; j <= m - 2; ++j)
        for (int i = 0; i <= d - j; ++i)
            total -= BigInt(m - 1 - j) * binomial(d, j) * binomial(d - j, i) *
                     ipow(k - r + 1, j) * ipow(r - 2, i);
    return total;
}

// Hypercube case (k = r = 2): (m-1) 2^d minus the small-L shortfall.
inline BigInt wsat_cube_formula(int d, int m) {
    check_wsat_args(2, 2, d, m);
    BigInt total = BigInt(m - 1) * ipow(2, d);
    for (int j = 0; j <= m - 2; ++j) total -= BigInt(m - 1 - j) * binomial(d, j);
    return total;
}

// Downward edges kept at v: one for each small coordinate, plus the lowest
// min{L(v), m-1} large-coordinate directions.
inline std::vector<Edge> wsat_edges_at_vertex(const GridSpace& g, Vertex v, int r, int m) {
    std::vector<Edge> out;
    int large_used = 0, budget = m - 1;
    for (int dir = 0; dir < g.d(); ++dir) {
        int c = g.coord(v, dir);
        if (c >= 1 && c <= r - 2) {
            out.push_back(g.edge_id(v - g.pow_k(dir), dir));
        } else if (c >= r - 1 && large_used < budget) {
            out.push_back(g.edge_id(v - g.pow_k(dir), dir));
            ++large_used;
        }
    }
    return out;
}

inline EdgeSubgraph build_wsat_graph(int k, int r, int d, int m) {
    check_wsat_args(k, r, d, m);
    GridSpace g(k, d);
    EdgeSubgraph out(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Edge e : wsat_edges_at_vertex(g, v, r, m)) out.add(e);
    return out;
}

// Missing edges sorted by weight of the upper endpoint, then edge id. Feeding
// this order to replay_in_order completes the host grid one witness at a time.
inline std::vector<Edge> canonical_percolation_order(const EdgeSubgraph& g) {
    const GridSpace& sp = g.space();
    std::vector<std::pair<int, Edge>> keyed;
    for (Edge e : g.absent_edges()) keyed.push_back({sp.weight(sp.edge_top(e)), e});
    std::sort(keyed.begin(), keyed.end());
    std::vector<Edge> out;
    out.reserve(keyed.size());
    for (auto& [w, e] : keyed) out.push_back(e);
    return out;
}

}  // namespace gridsat
