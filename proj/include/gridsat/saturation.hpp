#pragma once

// Sparse saturated-subgraph construction on hypercubes. The d coordinates
// are split into m long intervals (six blocks of length 2^t - 1 each) plus a
// tail of length s; a vertex is classified by how many of its 6m blocks land
// in the perfect code of that block length (vertices with two such blocks in
// the same interval are excluded outright). Two local rules define the edge
// set: a ladder rule joining every pair of adjacent vertices whose class
// levels are consecutive (below the top level), and a parity rule joining
// same-level pairs, gated by an edge coloring of the interval/tail cubes and
// a weight parity. The result avoids m-dimensional subcubes, yet adding any
// host edge between two level-0 vertices completes one; witness_subcube
// produces that subcube explicitly.

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "gridsat/bigint.hpp"
#include "gridsat/coloring.hpp"
#include "gridsat/core.hpp"
#include "gridsat/edge_set.hpp"
#include "gridsat/hamming.hpp"
#include "gridsat/percolation.hpp"
#include "gridsat/subgrid.hpp"

namespace gridsat {

struct SatParams {
    int m = 0;         // forbidden subcube dimension (>= 2)
    int d = 0;         // host cube dimension
    int t = 0;         // code order; blocks have length 2^t - 1
    int s = 0;         // tail length, 0 <= s < 6m * 2^t
    int block = 0;     // 2^t - 1
    int interval = 0;  // 6 * block, length of each of the m intervals

    // intervals are indexed 1..m, the tail is m+1
    int interval_offset(int i) const { return (i - 1) * interval; }
    int tail_offset() const { return m * interval; }
    int sub_offset(int i, int r, int gamma) const {
        return interval_offset(i) + (3 * r + gamma) * block;
    }
    int interval_of_coord(int coord) const {
        return coord >= tail_offset() ? m + 1 : coord / interval + 1;
    }

    std::uint64_t slice(Vertex v, int off, int len) const {
        return len == 0 ? 0 : (v >> off) & ((std::uint64_t{1} << len) - 1);
    }
    // restriction of v to interval i (i = m+1 gives the tail)
    std::uint64_t interval_bits(Vertex v, int i) const {
        return i <= m ? slice(v, interval_offset(i), interval)
                      : slice(v, tail_offset(), s);
    }
    std::uint64_t sub_bits(Vertex v, int i, int r, int gamma) const {
        return slice(v, sub_offset(i, r, gamma), block);
    }
};

// Unique decomposition d = 6m(2^t - 1) + s with t >= 1 and 0 <= s < 6m*2^t.
inline SatParams derive_params(int m, int d) {
    if (m < 2) throw std::invalid_argument("need m >= 2");
    if (d < 6 * m) throw std::invalid_argument("d admits no valid block order (need d >= 6m)");
    if (d > 62) throw std::invalid_argument("need d <= 62");
    int t = 1;
    while (6LL * m * ((2LL << t) - 1) <= d) ++t;
    SatParams p;
    p.m = m;
    p.d = d;
    p.t = t;
    p.block = (1 << t) - 1;
    p.interval = 6 * p.block;
    p.s = d - m * p.interval;
    return p;
}

struct VertexClass {
    bool excluded = false;  // two in-code blocks inside one interval
    int level = 0;          // total in-code blocks otherwise (0..m)
};

inline VertexClass classify_vertex(Vertex v, const SatParams& p) {
    int total = 0;
    for (int i = 1; i <= p.m; ++i) {
        int cnt = 0;
        for (int r = 0; r < 2; ++r)
            for (int gamma = 0; gamma < 3; ++gamma)
                if (hamming_contains(p.sub_bits(v, i, r, gamma), p.t)) ++cnt;
        if (cnt >= 2) return {true, -1};
        total += cnt;
    }
    return {false, total};
}

// Parameters plus the two colorings gating the parity rule: one for the cube
// spanned by a single interval (6 * block dimensions) and one for the tail.
struct SatContext {
    SatParams p;
    EdgeColoring interval_coloring;
    EdgeColoring tail_coloring;

    SatContext(SatParams params, EdgeColoring interval_col, EdgeColoring tail_col)
        : p(params),
          interval_coloring(std::move(interval_col)),
          tail_coloring(std::move(tail_col)) {
        if (interval_coloring.s != p.interval)
            throw std::invalid_argument("interval coloring has wrong dimension");
        if (tail_coloring.s != p.s)
            throw std::invalid_argument("tail coloring has wrong dimension");
    }
};

namespace detail {

// color of the edge between the restrictions of u and v to the piece (an
// interval or the tail) containing their single differing coordinate
inline int restricted_edge_color(const SatContext& ctx, Vertex u, int coord, int k) {
    const SatParams& p = ctx.p;
    int off = k <= p.m ? p.interval_offset(k) : p.tail_offset();
    int dims = k <= p.m ? p.interval : p.s;
    const EdgeColoring& col = k <= p.m ? ctx.interval_coloring : ctx.tail_coloring;
    int local = coord - off;
    std::uint64_t base = p.slice(u, off, dims) & ~(std::uint64_t{1} << local);
    return col.colors[qedge(dims, base, local)];
}

// edge rule with the endpoint classes already computed
inline bool edge_rule(const SatContext& ctx, Vertex u, Vertex v, const VertexClass& cu,
                      const VertexClass& cv) {
    const SatParams& p = ctx.p;
    if (cu.excluded || cv.excluded) return false;
    int lo = std::min(cu.level, cv.level), hi = std::max(cu.level, cv.level);
    if (hi == lo + 1) return hi <= p.m - 1;  // ladder rule
    if (hi != lo) return false;
    int j = lo;
    if (j < 1 || j > p.m - 1) return false;  // parity rule applies between levels 1..m-1
    int coord = std::countr_zero(u ^ v);
    int k = p.interval_of_coord(coord);
    // the unchanged blocks of the differing interval must avoid the code
    if (k <= p.m) {
        for (int r = 0; r < 2; ++r)
            for (int gamma = 0; gamma < 3; ++gamma) {
                std::uint64_t wu = p.sub_bits(u, k, r, gamma);
                if (wu == p.sub_bits(v, k, r, gamma) && hamming_contains(wu, p.t)) return false;
            }
    }
    int gamma0 = restricted_edge_color(ctx, u, coord, k);
    int wv = std::popcount(v);
    int wk = std::popcount(p.interval_bits(v, k));
    // every in-code block outside the differing interval must sit in the
    // sub-block indexed by the edge color, at the row fixed by the parity
    for (int i = 1; i <= p.m; ++i) {
        if (i == k) continue;
        int wi = -1;
        for (int r = 0; r < 2; ++r)
            for (int gamma = 0; gamma < 3; ++gamma) {
                if (!hamming_contains(p.sub_bits(v, i, r, gamma), p.t)) continue;
                if (gamma != gamma0) return false;
                if (wi < 0) wi = std::popcount(p.interval_bits(v, i));
                if ((wv + wk + wi + j - 1) % 2 != r) return false;
            }
    }
    return true;
}

}  // namespace detail

// Pure local predicate: true iff the edge uv belongs to the construction.
inline bool edge_in_G(Vertex u, Vertex v, const SatContext& ctx) {
    Vertex diff = u ^ v;
    if (std::popcount(diff) != 1 || std::countr_zero(diff) >= ctx.p.d)
        throw std::invalid_argument("vertices are not adjacent in the host cube");
    return detail::edge_rule(ctx, u, v, classify_vertex(u, ctx.p), classify_vertex(v, ctx.p));
}

// Materialized edge set, agreeing with edge_in_G on every adjacent pair.
inline EdgeSubgraph build_base_graph(const SatContext& ctx) {
    const SatParams& p = ctx.p;
    if (p.d > 22) throw std::invalid_argument("host too large to materialize");
    GridSpace g(2, p.d);
    std::vector<VertexClass> cls(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) cls[v] = classify_vertex(v, p);
    EdgeSubgraph out(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (int dir = 0; dir < p.d; ++dir) {
            if ((v >> dir) & 1) continue;
            Vertex u = v | (Vertex{1} << dir);
            if (detail::edge_rule(ctx, v, u, cls[v], cls[u])) out.add(g.edge_id(v, dir));
        }
    return out;
}

// The 2^m-vertex subcube completed by adding the edge uv between two level-0
// vertices: pick the m-1 smallest interval indices other than the differing
// piece; in each, at the row fixed by the weight parity and the sub-block
// indexed by the edge color, move the block to its unique code neighbor.
// Returns the vertices sorted ascending; every subcube edge except uv itself
// satisfies edge_in_G.
inline std::vector<Vertex> witness_subcube(Vertex u, Vertex v, const SatContext& ctx) {
    const SatParams& p = ctx.p;
    Vertex diff = u ^ v;
    if (std::popcount(diff) != 1 || std::countr_zero(diff) >= p.d)
        throw std::invalid_argument("vertices are not adjacent in the host cube");
    auto cu = classify_vertex(u, p), cv = classify_vertex(v, p);
    if (cu.excluded || cv.excluded || cu.level != 0 || cv.level != 0)
        throw std::invalid_argument("witness endpoints must both be level-0 vertices");
    int coord = std::countr_zero(diff);
    int k = p.interval_of_coord(coord);
    int gamma0 = detail::restricted_edge_color(ctx, u, coord, k);
    int wv = std::popcount(v);
    int wk = std::popcount(p.interval_bits(v, k));
    std::vector<int> flips;  // one host coordinate per chosen interval
    for (int i = 1; i <= p.m && static_cast<int>(flips.size()) < p.m - 1; ++i) {
        if (i == k) continue;
        int r = (wv + wk + std::popcount(p.interval_bits(v, i))) % 2;
        std::uint64_t w = p.sub_bits(v, i, r, gamma0);
        std::uint64_t c = hamming_code_neighbor(w, p.t);
        flips.push_back(p.sub_offset(i, r, gamma0) + std::countr_zero(w ^ c));
    }
    std::vector<Vertex> out;
    out.reserve(std::size_t{2} << flips.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << flips.size()); ++mask) {
        Vertex delta = 0;
        for (std::size_t b = 0; b < flips.size(); ++b)
            if ((mask >> b) & 1) delta |= Vertex{1} << flips[b];
        out.push_back(u ^ delta);
        out.push_back(v ^ delta);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Structural + membership validation of a witness subcube: the vertex set
// must form an axis-aligned subcube containing u and v, uv must be outside
// the construction, and every other subcube edge must satisfy edge_in_G.
inline bool valid_witness_subcube(Vertex u, Vertex v, const SatContext& ctx,
                                  const std::vector<Vertex>& verts) {
    const SatParams& p = ctx.p;
    if (verts.size() != (std::uint64_t{1} << p.m)) return false;
    Vertex lo = verts[0], hi = verts[0];
    bool has_u = false, has_v = false;
    for (Vertex w : verts) {
        lo &= w;
        hi |= w;
        has_u = has_u || w == u;
        has_v = has_v || w == v;
    }
    if (!has_u || !has_v) return false;
    Vertex dirs = lo ^ hi;
    if (std::popcount(dirs) != p.m) return false;
    std::vector<int> bits;
    for (int b = 0; b < p.d; ++b)
        if ((dirs >> b) & 1) bits.push_back(b);
    std::vector<Vertex> expect;
    for (std::uint64_t mask = 0; mask < verts.size(); ++mask) {
        Vertex w = lo;
        for (std::size_t b = 0; b < bits.size(); ++b)
            if ((mask >> b) & 1) w |= Vertex{1} << bits[b];
        expect.push_back(w);
    }
    std::sort(expect.begin(), expect.end());
    std::vector<Vertex> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != expect) return false;
    for (Vertex w : sorted)
        for (int b : bits) {
            if ((w >> b) & 1) continue;
            Vertex x = w | (Vertex{1} << b);
            bool is_uv = (w == u && x == v) || (w == v && x == u);
            if (edge_in_G(w, x, ctx) == is_uv) return false;
        }
    return true;
}

// Exhaustive absence check for axis-aligned m-subcubes.
inline bool verify_qm_free(const EdgeSubgraph& g, int m) {
    bool ok = true;
    for_each_axis_subgrid(g.space(), 2, m, [&](const AxisSubgrid& sub) {
        if (!ok) return;
        for (Edge e : sub.edges(g.space()))
            if (!g.has(e)) return;
        ok = false;
    });
    return ok;
}

// Sampled absence check through the pure predicate (hosts too big to hold).
inline bool verify_qm_free_sampled(const SatContext& ctx, std::uint64_t samples,
                                   std::uint64_t seed) {
    const SatParams& p = ctx.p;
    std::mt19937_64 rng(seed);
    for (std::uint64_t it = 0; it < samples; ++it) {
        Vertex dirs = 0;
        while (std::popcount(dirs) < p.m) dirs |= Vertex{1} << (rng() % p.d);
        Vertex base = (rng() & ((Vertex{1} << p.d) - 1)) & ~dirs;
        bool complete = true;
        for (std::uint64_t mask = 0; complete && mask < (std::uint64_t{1} << p.m); ++mask) {
            Vertex w = base;
            int b = 0;
            for (int bit = 0; bit < p.d; ++bit)
                if ((dirs >> bit) & 1) {
                    if ((mask >> b) & 1) w |= Vertex{1} << bit;
                    ++b;
                }
            for (int bit = 0; complete && bit < p.d; ++bit)
                if (((dirs >> bit) & 1) && !((w >> bit) & 1))
                    complete = edge_in_G(w, w | (Vertex{1} << bit), ctx);
        }
        if (complete) return false;
    }
    return true;
}

struct A0SaturationReport {
    bool ok = true;
    std::uint64_t edges_checked = 0;  // host edges with both endpoints level 0
};

// Every host edge joining two level-0 vertices must yield a valid witness
// subcube. Exhaustive over the whole host (predicate-based, no
// materialization needed).
inline A0SaturationReport verify_a0_saturation(const SatContext& ctx) {
    const SatParams& p = ctx.p;
    if (p.d > 26) throw std::invalid_argument("host too large for exhaustive scan");
    A0SaturationReport rep;
    for (Vertex v = 0; v < (Vertex{1} << p.d); ++v) {
        auto cv = classify_vertex(v, p);
        if (cv.excluded || cv.level != 0) continue;
        for (int dir = 0; dir < p.d; ++dir) {
            if ((v >> dir) & 1) continue;
            Vertex u = v | (Vertex{1} << dir);
            auto cu = classify_vertex(u, p);
            if (cu.excluded || cu.level != 0) continue;
            ++rep.edges_checked;
            if (!valid_witness_subcube(v, u, ctx, witness_subcube(v, u, ctx))) rep.ok = false;
        }
    }
    return rep;
}

// Sampled variant: draws host edges uniformly until the requested number
// with both endpoints at level 0 have been tested.
inline A0SaturationReport verify_a0_saturation_sampled(const SatContext& ctx,
                                                       std::uint64_t samples,
                                                       std::uint64_t seed) {
    const SatParams& p = ctx.p;
    std::mt19937_64 rng(seed);
    A0SaturationReport rep;
    while (rep.edges_checked < samples) {
        Vertex v = rng() & ((Vertex{1} << p.d) - 1);
        auto cv = classify_vertex(v, p);
        if (cv.excluded || cv.level != 0) continue;
        int dir = static_cast<int>(rng() % p.d);
        Vertex u = v ^ (Vertex{1} << dir);
        auto cu = classify_vertex(u, p);
        if (cu.excluded || cu.level != 0) continue;
        ++rep.edges_checked;
        if (!valid_witness_subcube(v, u, ctx, witness_subcube(v, u, ctx))) rep.ok = false;
    }
    return rep;
}

// Greedy completion: scan absent edges in ascending id order once, adding
// each edge unless it would complete an m-subcube at that moment. Edges
// rejected at their turn stay rejected (their completed subcube only gains
// edges later), so a single pass reaches a maximal extension; callers can
// re-check with is_saturated.
inline EdgeSubgraph complete_to_saturated(const EdgeSubgraph& g, int m) {
    if (!verify_qm_free(g, m))
        throw std::invalid_argument("graph already contains an m-subcube");
    PatternFamily fam = PatternFamily::subcube(m);
    EdgeSubgraph out = g;
    for (Edge e = 0; e < g.space().edge_count(); ++e)
        if (!out.has(e) && !detail::axis_witness(out, e, fam)) out.add(e);
    return out;
}

// Full saturation check: m-subcube-free and every absent edge completes one.
inline bool is_saturated(const EdgeSubgraph& g, int m) {
    if (!verify_qm_free(g, m)) return false;
    PatternFamily fam = PatternFamily::subcube(m);
    for (Edge e = 0; e < g.space().edge_count(); ++e)
        if (!g.has(e) && !detail::axis_witness(g, e, fam)) return false;
    return true;
}

// Closed-form class census plus the edge-count yardsticks derived from it.
struct SatCensus {
    std::vector<BigInt> class_sizes;    // levels 0..m
    BigInt excluded = 0;                // vertices with a doubly-coded interval
    BigInt level1_exact = 0;            // = class_sizes[1]
    BigInt level1_bound = 0;            // 6m |C| 2^(d - block), simple overcount
    BigInt bound_general = 0;           // 72 m^2 2^d
    std::optional<BigInt> bound_special;  // 36 m^2 2^d, only when s == 0
};

inline SatCensus census(const SatParams& p) {
    BigInt values = ipow(BigInt(2), p.block);          // per-block value space
    BigInt in_code = ipow(BigInt(2), p.block - p.t);   // perfect-code size
    BigInt rest = values - in_code;
    BigInt none = ipow(rest, 6);                        // interval: no coded block
    BigInt one = 6 * in_code * ipow(rest, 5);           // interval: exactly one
    BigInt tail = ipow(BigInt(2), p.s);
    SatCensus c;
    BigInt covered = 0;
    for (int j = 0; j <= p.m; ++j) {
        BigInt size = binomial(p.m, j) * ipow(one, j) * ipow(none, p.m - j) * tail;
        c.class_sizes.push_back(size);
        covered += size;
    }
    c.excluded = ipow(BigInt(2), p.d) - covered;
    c.level1_exact = c.class_sizes[1];
    c.level1_bound = 6 * p.m * in_code * ipow(BigInt(2), p.d - p.block);
    c.bound_general = 72 * p.m * p.m * ipow(BigInt(2), p.d);
    if (p.s == 0) c.bound_special = 36 * p.m * p.m * ipow(BigInt(2), p.d);
    return c;
}

}  // namespace gridsat
