#pragma once

// Spanning trees of P_k^d that percolate under the even-cycle family
// C_{2*ell}: adding any missing edge closes a cycle of length exactly 2*ell,
// and k^d - 1 edges is best possible since weakly cycle-saturated graphs are
// connected.
//
// Built recursively. Base: a tree on Q_ell arranged by weight levels so that
// each non-tree edge sits on a cycle of the exact target length. Dimension
// step: copy the previous tree into the bottom slab and attach every vertex
// of the remaining slabs by a rung in the new direction. Side-length step:
// embed the tree of P_{k-1}^d on the sub-box of coordinates < k-1 and hang
// every vertex with some coordinate equal to k-1 below its smallest such
// direction.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gridsat/core.hpp"
#include "gridsat/edge_set.hpp"

namespace gridsat {

// Weight-level tree on Q_ell. x_t is the vertex with ones exactly in the t
// lowest bits; the chain x_0 x_1 ... x_ell is part of the tree. A weight-t
// vertex v joins x_{t-1} when t = 1 or v = x_t; otherwise it joins the
// smallest vertex of level t-1 other than x_{t-1} obtainable by clearing one
// of its bits.
inline EdgeSubgraph build_base_tree(int ell) {
    if (ell < 2) throw std::invalid_argument("cycle half-length must be >= 2");
    GridSpace g(2, ell);
    EdgeSubgraph tree(g);
    for (Vertex v = 1; v < g.vertex_count(); ++v) {
        int t = g.weight(v);
        Vertex xt = (static_cast<Vertex>(1) << t) - 1;
        Vertex xprev = xt >> 1;
        Vertex parent;
        if (t == 1 || v == xt) {
            parent = xprev;
        } else {
            parent = UINT64_MAX;
            for (int b = 0; b < ell; ++b) {
                if (!((v >> b) & 1)) continue;
                Vertex y = v ^ (static_cast<Vertex>(1) << b);
                if (y != xprev && y < parent) parent = y;
            }
        }
        tree.add(g.edge_between(v, parent));
    }
    return tree;
}

namespace detail {

inline EdgeSubgraph lift_dimension(const EdgeSubgraph& prev, int k, int d) {
    GridSpace g(k, d);
    const GridSpace& gp = prev.space();
    EdgeSubgraph out(g);
    for (Edge e : prev.edges()) {
        auto ref = gp.edge_ref(e);
        // vertex ids of the bottom slab coincide with the smaller grid's ids
        out.add(g.edge_id(ref.base, ref.dir));
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.coord(v, d - 1) > 0) out.add(g.edge_id(v - g.pow_k(d - 1), d - 1));
    return out;
}

inline EdgeSubgraph lift_side(const EdgeSubgraph& prev, int k, int d) {
    GridSpace g(k, d);
    const GridSpace& gp = prev.space();
    EdgeSubgraph out(g);
    std::vector<int> coords;
    for (Edge e : prev.edges()) {
        auto ref = gp.edge_ref(e);
        coords = gp.decode(ref.base);
        out.add(g.edge_id(g.encode(coords), ref.dir));
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int min_full = -1;
        for (int dir = 0; dir < d; ++dir)
            if (g.coord(v, dir) == k - 1) {
                min_full = dir;
                break;
            }
        if (min_full >= 0) out.add(g.edge_id(v - g.pow_k(min_full), min_full));
    }
    return out;
}

}  // namespace detail

// Spanning tree of P_k^d weakly saturated for C_{2*ell}. Needs d >= ell so
// the base cube fits; reduces d first, then k.
inline EdgeSubgraph build_cycle_tree(int k, int d, int ell) {
    if (k < 2) throw std::invalid_argument("need k >= 2");
    if (ell < 2 || ell > 8) throw std::invalid_argument("need 2 <= ell <= 8");
    if (d < ell) throw std::invalid_argument("need d >= ell");
    if (d > ell) return detail::lift_dimension(build_cycle_tree(k, d - 1, ell), k, d);
    if (k > 2) return detail::lift_side(build_cycle_tree(k - 1, d, ell), k, d);
    return build_base_tree(ell);
}

}  // namespace gridsat
