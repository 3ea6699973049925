#pragma once

// 3-edge-colorings of Q_s with no monochromatic 4- or 6-cycle. Up to s = 10
// they are found by seeded local search over the explicitly enumerated short
// cycles (plus an exhaustive backtracking fallback for tiny s); above that a
// closed-form coloring takes over. An exhaustive verifier rechecks any
// coloring against every 4- and 6-cycle of the cube.

#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridsat/core.hpp"
#include "gridsat/percolation.hpp"

namespace gridsat {

struct EdgeColoring {
    int s = 0;
    std::vector<std::uint8_t> colors;  // one of {0,1,2} per edge id of Q_s
};

inline std::uint64_t square_count(int s) {
    if (s < 2) return 0;
    return static_cast<std::uint64_t>(s) * (s - 1) / 2 << (s - 2);
}

inline std::uint64_t hexagon_count(int s) {
    if (s < 3) return 0;
    std::uint64_t triples = static_cast<std::uint64_t>(s) * (s - 1) * (s - 2) / 6;
    return triples * 16 << (s - 3);
}

namespace detail {

// The sixteen 6-cycles of Q_3, each edge given as (vertex mask, axis) with
// the axis bit clear in the mask. Computed once by filtering all 6-subsets
// of the twelve edges.
inline const std::vector<std::array<std::pair<int, int>, 6>>& q3_hexagons() {
    static const auto table = [] {
        GridSpace q3(2, 3);
        std::vector<std::array<std::pair<int, int>, 6>> out;
        for (unsigned mask = 0; mask < 4096; ++mask) {
            if (__builtin_popcount(mask) != 6) continue;
            std::vector<Edge> edges;
            for (int b = 0; b < 12; ++b)
                if ((mask >> b) & 1) edges.push_back(b);
            if (!valid_cycle_witness(q3, 6, edges)) continue;
            std::array<std::pair<int, int>, 6> abs;
            for (int i = 0; i < 6; ++i) {
                auto ref = q3.edge_ref(edges[i]);
                abs[i] = {static_cast<int>(ref.base), ref.dir};
            }
            out.push_back(abs);
        }
        return out;
    }();
    return table;
}

// Fast k=2 edge id: base vertex with bit dir clear.
inline Edge qedge(int s, Vertex base, int dir) {
    std::uint64_t lo = base & ((static_cast<Vertex>(1) << dir) - 1);
    std::uint64_t hi = base >> (dir + 1);
    return (static_cast<Edge>(dir) << (s - 1)) | lo | (hi << dir);
}

// Exhaustive monochromatic 4-/6-cycle scan specialized to the hypercube edge
// id layout. Equivalent to walking for_each_square / for_each_hexagon, but
// the per-cycle edge ids are assembled from values hoisted per direction
// tuple and per base vertex, which keeps Q_18 (4.3e8 hexagons) in seconds.
inline bool no_mono_short_cycles(int s, const std::vector<std::uint8_t>& colors) {
    const std::uint8_t* col = colors.data();
    auto insert_zero = [](std::uint64_t v, int at) {
        std::uint64_t lo = v & ((static_cast<std::uint64_t>(1) << at) - 1);
        return lo | ((v >> at) << (at + 1));
    };
    auto pack = [](std::uint64_t v, int d) {
        return (v & ((static_cast<std::uint64_t>(1) << d) - 1)) | ((v >> (d + 1)) << d);
    };
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            std::uint64_t bi = static_cast<std::uint64_t>(1) << i;
            std::uint64_t bj = static_cast<std::uint64_t>(1) << j;
            std::uint64_t n = static_cast<std::uint64_t>(1) << (s - 2);
            for (std::uint64_t b = 0; b < n; ++b) {
                Vertex v = insert_zero(insert_zero(b, i), j);
                std::uint8_t c = col[qedge(s, v, i)];
                if (c != col[qedge(s, v, j)]) continue;
                if (c != col[qedge(s, v + bj, i)]) continue;
                if (c == col[qedge(s, v + bi, j)]) return false;
            }
        }
    if (s < 3) return true;
    const auto& table = q3_hexagons();
    struct Entry {
        int axis;
        Edge add;
    };
    std::vector<std::array<Entry, 6>> ent(table.size());
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            for (int l = j + 1; l < s; ++l) {
                int dirs[3] = {i, j, l};
                for (std::size_t h = 0; h < table.size(); ++h)
                    for (int t = 0; t < 6; ++t) {
                        auto [mask, axis] = table[h][t];
                        std::uint64_t e = 0;
                        if (mask & 1) e |= static_cast<std::uint64_t>(1) << i;
                        if (mask & 2) e |= static_cast<std::uint64_t>(1) << j;
                        if (mask & 4) e |= static_cast<std::uint64_t>(1) << l;
                        int d = dirs[axis];
                        ent[h][t] = {axis,
                                     (static_cast<Edge>(d) << (s - 1)) | pack(e, d)};
                    }
                std::uint64_t n = static_cast<std::uint64_t>(1) << (s - 3);
                for (std::uint64_t b = 0; b < n; ++b) {
                    Vertex v = insert_zero(insert_zero(insert_zero(b, i), j), l);
                    std::uint64_t pb[3] = {pack(v, i), pack(v, j), pack(v, l)};
                    for (const auto& hex : ent) {
                        std::uint8_t c = col[hex[0].add | pb[hex[0].axis]];
                        bool mono = true;
                        for (int t = 1; t < 6 && mono; ++t)
                            mono = col[hex[t].add | pb[hex[t].axis]] == c;
                        if (mono) return false;
                    }
                }
            }
    return true;
}

}  // namespace detail

// Visit the edge ids of every 4-cycle of Q_s.
template <typename Fn>
void for_each_square(const GridSpace& g, Fn&& fn) {
    int s = g.d();
    std::array<Edge, 4> cyc;
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            std::uint64_t bi = g.pow_k(i), bj = g.pow_k(j);
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                if ((v & bi) || (v & bj)) continue;
                cyc[0] = g.edge_id(v, i);
                cyc[1] = g.edge_id(v, j);
                cyc[2] = g.edge_id(v + bj, i);
                cyc[3] = g.edge_id(v + bi, j);
                fn(cyc);
            }
        }
}

// Visit the edge ids of every 6-cycle of Q_s.
template <typename Fn>
void for_each_hexagon(const GridSpace& g, Fn&& fn) {
    int s = g.d();
    const auto& table = detail::q3_hexagons();
    std::array<Edge, 6> cyc;
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            for (int l = j + 1; l < s; ++l) {
                std::uint64_t bi = g.pow_k(i), bj = g.pow_k(j), bl = g.pow_k(l);
                int dirs[3] = {i, j, l};
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    if ((v & bi) || (v & bj) || (v & bl)) continue;
                    for (const auto& hex : table) {
                        for (int t = 0; t < 6; ++t) {
                            auto [mask, axis] = hex[t];
                            Vertex base = v;
                            if (mask & 1) base += bi;
                            if (mask & 2) base += bj;
                            if (mask & 4) base += bl;
                            cyc[t] = g.edge_id(base, dirs[axis]);
                        }
                        fn(cyc);
                    }
                }
            }
}

inline bool verify_coloring(const EdgeColoring& col) {
    if (col.s <= 1) return col.colors.size() == (col.s == 1 ? 1u : 0u);
    GridSpace g(2, col.s);
    if (col.colors.size() != g.edge_count()) return false;
    for (std::uint8_t c : col.colors)
        if (c > 2) return false;
    return detail::no_mono_short_cycles(col.s, col.colors);
}

// Closed-form coloring, valid for every s: the edge along direction i at
// base vertex v (bit i clear) gets
//     (2 * popcount(v below bit i) + popcount(v above bit i)) mod 3.
// Why it works: flipping any coordinate j != i shifts the color of an
// i-edge by a fixed nonzero amount (2 if j < i, 1 if j > i), so the two
// parallel i-edges of any 4-cycle already differ. Every 6-cycle lies in a
// 3-direction slab, and within a slab each edge color equals a
// direction-dependent base offset plus a sum of those fixed increments;
// checking the sixteen 6-cycle shapes of a slab against all 9 relative
// offset combinations shows none can be monochromatic, for any slab and
// any s. The unit tests re-verify the result exhaustively per cube.
inline EdgeColoring patterned_coloring(int s) {
    if (s < 0) throw std::invalid_argument("need s >= 0");
    if (s <= 1) return EdgeColoring{s, std::vector<std::uint8_t>(s == 1 ? 1 : 0)};
    GridSpace g(2, s);
    EdgeColoring col{s, std::vector<std::uint8_t>(g.edge_count())};
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (int i = 0; i < s; ++i) {
            if ((v >> i) & 1) continue;
            std::uint64_t lo = v & ((static_cast<Vertex>(1) << i) - 1);
            std::uint64_t hi = v >> (i + 1);
            int c = (2 * std::popcount(lo) + std::popcount(hi)) % 3;
            col.colors[detail::qedge(s, v, i)] = static_cast<std::uint8_t>(c);
        }
    return col;
}

namespace detail {

using Clock = std::chrono::steady_clock;

struct CycleTable {
    struct Cyc {
        std::array<std::uint32_t, 6> edges;
        std::uint8_t len;
    };
    std::vector<Cyc> cycles;
    std::vector<std::vector<std::uint32_t>> incident;  // per edge

    explicit CycleTable(const GridSpace& g) {
        incident.resize(g.edge_count());
        for_each_square(g, [&](const std::array<Edge, 4>& c) {
            Cyc cy{{}, 4};
            for (int i = 0; i < 4; ++i) cy.edges[i] = static_cast<std::uint32_t>(c[i]);
            push(cy);
        });
        for_each_hexagon(g, [&](const std::array<Edge, 6>& c) {
            Cyc cy{{}, 6};
            for (int i = 0; i < 6; ++i) cy.edges[i] = static_cast<std::uint32_t>(c[i]);
            push(cy);
        });
    }

    void push(const Cyc& cy) {
        std::uint32_t idx = static_cast<std::uint32_t>(cycles.size());
        cycles.push_back(cy);
        for (int i = 0; i < cy.len; ++i) incident[cy.edges[i]].push_back(idx);
    }
};

// WalkSAT-style repair over the stored cycle lists.
inline std::optional<EdgeColoring> search_stored(int s, std::mt19937_64& rng,
                                                 Clock::time_point deadline) {
    GridSpace g(2, s);
    CycleTable table(g);
    std::size_t ne = g.edge_count(), nc = table.cycles.size();

    std::vector<std::uint8_t> colors(ne);
    std::vector<char> mono(nc);
    std::vector<std::uint32_t> violated, pos(nc, UINT32_MAX);

    auto is_mono = [&](std::uint32_t ci) {
        const auto& cy = table.cycles[ci];
        std::uint8_t c = colors[cy.edges[0]];
        for (int i = 1; i < cy.len; ++i)
            if (colors[cy.edges[i]] != c) return false;
        return true;
    };
    auto set_violated = [&](std::uint32_t ci, bool v) {
        bool cur = pos[ci] != UINT32_MAX;
        if (cur == v) return;
        if (v) {
            pos[ci] = static_cast<std::uint32_t>(violated.size());
            violated.push_back(ci);
        } else {
            std::uint32_t last = violated.back();
            violated[pos[ci]] = last;
            pos[last] = pos[ci];
            violated.pop_back();
            pos[ci] = UINT32_MAX;
        }
    };
    auto reinit = [&] {
        for (auto& c : colors) c = static_cast<std::uint8_t>(rng() % 3);
        violated.clear();
        std::fill(pos.begin(), pos.end(), UINT32_MAX);
        for (std::uint32_t ci = 0; ci < nc; ++ci) {
            mono[ci] = is_mono(ci);
            if (mono[ci]) set_violated(ci, true);
        }
    };
    // mono cycles through edge e if it were recolored to c
    auto mono_if = [&](Edge e, std::uint8_t c) {
        int cnt = 0;
        for (std::uint32_t ci : table.incident[e]) {
            const auto& cy = table.cycles[ci];
            bool m = true;
            for (int i = 0; i < cy.len && m; ++i)
                if (cy.edges[i] != e && colors[cy.edges[i]] != c) m = false;
            cnt += m;
        }
        return cnt;
    };

    reinit();
    std::uint64_t moves = 0, since_best = 0;
    std::size_t best = violated.size();
    while (!violated.empty()) {
        if ((++moves & 1023) == 0 && Clock::now() > deadline) return std::nullopt;
        const auto& cy = table.cycles[violated[rng() % violated.size()]];
        Edge e = cy.edges[rng() % cy.len];
        std::uint8_t old = colors[e];
        std::uint8_t alt1 = (old + 1) % 3, alt2 = (old + 2) % 3;
        std::uint8_t next;
        if (rng() % 100 < 12) {
            next = (rng() & 1) ? alt1 : alt2;
        } else {
            int s1 = mono_if(e, alt1), s2 = mono_if(e, alt2);
            next = s1 < s2 ? alt1 : s2 < s1 ? alt2 : ((rng() & 1) ? alt1 : alt2);
        }
        colors[e] = next;
        for (std::uint32_t ci : table.incident[e]) {
            bool m = is_mono(ci);
            if (m != static_cast<bool>(mono[ci])) {
                mono[ci] = m;
                set_violated(ci, m);
            }
        }
        if (violated.size() < best) {
            best = violated.size();
            since_best = 0;
        } else if (++since_best > 40000 + 30000 * static_cast<std::uint64_t>(s)) {
            reinit();
            best = violated.size();
            since_best = 0;
        }
    }
    return EdgeColoring{s, std::move(colors)};
}

// Exhaustive assignment in edge-id order, pruning any completed mono cycle.
inline std::optional<EdgeColoring> search_backtracking(int s, Clock::time_point deadline) {
    GridSpace g(2, s);
    CycleTable table(g);
    std::size_t ne = g.edge_count();
    std::vector<std::uint8_t> colors(ne, 255);
    std::uint64_t ticks = 0;

    auto completes_mono = [&](Edge e) {
        for (std::uint32_t ci : table.incident[e]) {
            const auto& cy = table.cycles[ci];
            bool mono = true;
            for (int i = 0; i < cy.len && mono; ++i)
                mono = colors[cy.edges[i]] == colors[e];
            if (mono) return true;
        }
        return false;
    };

    std::function<bool(Edge)> go = [&](Edge e) -> bool {
        if (e == ne) return true;
        if ((++ticks & 4095) == 0 && Clock::now() > deadline) return false;
        for (std::uint8_t c = 0; c < 3; ++c) {
            colors[e] = c;
            if (!completes_mono(e) && go(e + 1)) return true;
        }
        colors[e] = 255;
        return false;
    };
    if (!go(0)) return std::nullopt;
    return EdgeColoring{s, std::move(colors)};
}

inline std::optional<EdgeColoring> find_coloring_until(int s, std::uint64_t seed,
                                                       Clock::time_point deadline) {
    if (s == 0) return EdgeColoring{0, {}};
    if (s == 1) return EdgeColoring{1, {0}};
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(s)));
    std::optional<EdgeColoring> got;
    if (s <= 10) {
        // local search over the stored cycle lists; they no longer fit above
        got = search_stored(s, rng, deadline);
        if (!got && s <= 4) got = search_backtracking(s, deadline);
    } else {
        got = patterned_coloring(s);
    }
    // paranoia recheck while it is cheap; the searched range is re-verified
    // here, bigger cubes are covered per-size by the unit tests and callers
    if (got && s <= 13 && !verify_coloring(*got))
        throw std::logic_error("search produced an invalid coloring");
    return got;
}

}  // namespace detail

// Search driver. Budget is wall-clock and only matters for the searched
// range s <= 10, where reruns with the same seed walk the same trajectory;
// larger cubes are handled by the closed form and always succeed.
inline std::optional<EdgeColoring> find_coloring(int s, std::uint64_t seed,
                                                 std::chrono::milliseconds budget) {
    if (s < 0 || s > 24) throw std::invalid_argument("need 0 <= s <= 24");
    return detail::find_coloring_until(s, seed, detail::Clock::now() + budget);
}

// cache format: "s <s> seed <seed>" then "<edge_id> <color>" per line, ascending
inline void save_coloring(const std::filesystem::path& file, const EdgeColoring& col,
                          std::uint64_t seed) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "s " << col.s << " seed " << seed << '\n';
    for (std::size_t e = 0; e < col.colors.size(); ++e)
        out << e << ' ' << static_cast<int>(col.colors[e]) << '\n';
}

struct LoadedColoring {
    EdgeColoring coloring;
    std::uint64_t seed = 0;
};

inline LoadedColoring load_coloring(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::string kw1, kw2;
    LoadedColoring lc;
    if (!(in >> kw1 >> lc.coloring.s >> kw2 >> lc.seed) || kw1 != "s" || kw2 != "seed")
        throw std::runtime_error("bad coloring cache header");
    std::uint64_t id;
    int c;
    std::uint64_t expect = 0;
    while (in >> id >> c) {
        if (id != expect++ || c < 0 || c > 2) throw std::runtime_error("bad coloring cache line");
        lc.coloring.colors.push_back(static_cast<std::uint8_t>(c));
    }
    return lc;
}

// Cached wrapper: reuse a stored coloring verbatim when present and valid,
// otherwise search and persist.
inline std::optional<EdgeColoring> load_or_find_coloring(const std::filesystem::path& dir,
                                                         int s, std::uint64_t seed,
                                                         std::chrono::milliseconds budget) {
    std::filesystem::create_directories(dir);
    auto file = dir / ("coloring_s" + std::to_string(s) + "_seed" + std::to_string(seed) + ".txt");
    if (std::filesystem::exists(file)) {
        auto lc = load_coloring(file);
        if (lc.coloring.s == s && verify_coloring(lc.coloring)) return lc.coloring;
        throw std::runtime_error("cached coloring failed verification: " + file.string());
    }
    auto got = find_coloring(s, seed, budget);
    if (got) save_coloring(file, *got, seed);
    return got;
}

}  // namespace gridsat
