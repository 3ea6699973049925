#pragma once

// Bootstrap percolation of edge sets under a pattern family: an absent edge
// may be added once it completes a copy of the pattern that uses it. The
// engine runs synchronous rounds (every addable edge of a round is judged
// against the graph as it stood when the round began), which makes the
// closure and the emitted certificate independent of scan order and thread
// count. Certificates replay sequentially, which is sound because witnesses
// only ever reference edges present before the round plus the added edge.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridsat/core.hpp"
#include "gridsat/edge_set.hpp"
#include "gridsat/parallel.hpp"
#include "gridsat/subgrid.hpp"

namespace gridsat {

struct PatternFamily {
    enum class Kind { axis, cycle };
    Kind kind;
    int r = 0, m = 0;  // axis: copies of P_r^m
    int length = 0;    // cycle: even length in [4, 16]

    static PatternFamily axis_grid(int r, int m) {
        if (r < 2 || m < 1) throw std::invalid_argument("axis pattern needs r >= 2, m >= 1");
        return {Kind::axis, r, m, 0};
    }
    static PatternFamily subcube(int m) { return axis_grid(2, m); }
    static PatternFamily even_cycle(int length) {
        if (length < 4 || length > 16 || length % 2 != 0)
            throw std::invalid_argument("cycle length must be even, in [4, 16]");
        return {Kind::cycle, 0, 0, length};
    }

    std::string name() const {
        if (kind == Kind::axis)
            return r == 2 ? "subcube:" + std::to_string(m)
                          : "grid:" + std::to_string(r) + ":" + std::to_string(m);
        return "cycle:" + std::to_string(length);
    }

    // accepts subcube:M | grid:R:M | cycle:LEN
    static PatternFamily parse(const std::string& text) {
        auto fail = [&] { throw std::invalid_argument("bad family spec: " + text); };
        auto num = [&](const std::string& s) {
            std::size_t pos = 0;
            int v = 0;
            try {
                v = std::stoi(s, &pos);
            } catch (...) {
                fail();
            }
            if (pos != s.size()) fail();
            return v;
        };
        auto colon = text.find(':');
        if (colon == std::string::npos) fail();
        std::string head = text.substr(0, colon), rest = text.substr(colon + 1);
        if (head == "subcube") return subcube(num(rest));
        if (head == "cycle") return even_cycle(num(rest));
        if (head == "grid") {
            auto c2 = rest.find(':');
            if (c2 == std::string::npos) fail();
            return axis_grid(num(rest.substr(0, c2)), num(rest.substr(c2 + 1)));
        }
        fail();
        return {};
    }
};

namespace detail {

// Axis case: every P_r^m copy containing both endpoints of e has e's
// direction among its m directions, with interval starts constrained to
// cover the endpoints. Enumerates candidates deterministically and returns
// the first whose edges all lie in g (e itself excepted).
inline std::optional<std::vector<Edge>> axis_witness(const EdgeSubgraph& g, Edge e,
                                                     const PatternFamily& fam) {
    const GridSpace& sp = g.space();
    int d = sp.d(), k = sp.k(), r = fam.r, m = fam.m;
    if (m > d || r > k) return std::nullopt;
    auto ref = sp.edge_ref(e);
    std::vector<int> c = sp.decode(ref.base);

    std::vector<int> others;  // directions available besides e's own
    for (int i = 0; i < d; ++i)
        if (i != ref.dir) others.push_back(i);

    std::vector<int> pick(static_cast<std::size_t>(m - 1));
    for (int i = 0; i < m - 1; ++i) pick[i] = i;

    std::vector<int> dirs(static_cast<std::size_t>(m));
    std::vector<int> lo(static_cast<std::size_t>(m)), hi(static_cast<std::size_t>(m));
    std::vector<int> start(static_cast<std::size_t>(m));
    std::vector<int> base_coords(static_cast<std::size_t>(d));

    while (true) {
        for (int i = 0; i < m - 1; ++i) dirs[i] = others[pick[i]];
        dirs[m - 1] = ref.dir;
        std::sort(dirs.begin(), dirs.end());
        bool feasible = true;
        for (int j = 0; j < m && feasible; ++j) {
            int dj = dirs[j];
            int top = c[dj] + (dj == ref.dir ? 1 : 0);  // both endpoints must fit
            lo[j] = std::max(0, top - (r - 1));
            hi[j] = std::min(c[dj], k - r);
            if (lo[j] > hi[j]) feasible = false;
        }
        if (feasible) {
            for (int j = 0; j < m; ++j) start[j] = lo[j];
            while (true) {
                for (int i = 0; i < d; ++i) base_coords[i] = c[i];
                for (int j = 0; j < m; ++j) base_coords[dirs[j]] = start[j];
                AxisSubgrid cand{sp.encode(base_coords), dirs, r};
                auto edges = cand.edges(sp);
                bool complete = true;
                for (Edge ce : edges)
                    if (ce != e && !g.has(ce)) {
                        complete = false;
                        break;
                    }
                if (complete) return edges;
                int j = 0;
                for (; j < m; ++j) {
                    if (start[j] < hi[j]) {
                        ++start[j];
                        for (int t = 0; t < j; ++t) start[t] = lo[t];
                        break;
                    }
                }
                if (j == m) break;
            }
        }
        if (m == 1) break;
        int i = m - 2;
        while (i >= 0 && pick[i] == static_cast<int>(others.size()) - (m - 1) + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return std::nullopt;
}

// Cycle case: a simple path of length (target length - 1) between e's
// endpoints, found by depth-first search over edges of g with e excluded.
// Prunes on distance and weight parity. Neighbor order ascending, so the
// first witness found is deterministic.
inline std::optional<std::vector<Edge>> cycle_witness(const EdgeSubgraph& g, Edge e,
                                                      int length) {
    const GridSpace& sp = g.space();
    Vertex src = sp.edge_top(e), dst = sp.edge_base(e);
    int need = length - 1;  // path edges
    std::vector<char> visited(sp.vertex_count(), 0);
    std::vector<Edge> path;
    path.reserve(static_cast<std::size_t>(need));

    auto l1 = [&](Vertex a, Vertex b) {
        int s = 0;
        for (int i = 0; i < sp.d(); ++i) s += std::abs(sp.coord(a, i) - sp.coord(b, i));
        return s;
    };

    std::function<bool(Vertex, int)> dfs = [&](Vertex at, int remaining) -> bool {
        if (remaining == 0) return at == dst;
        int dist = l1(at, dst);
        if (dist > remaining || ((remaining - dist) & 1)) return false;
        for (Vertex nb : sp.neighbors(at)) {
            if (visited[nb] && nb != dst) continue;
            if (nb == dst && remaining != 1) continue;
            Edge via = sp.edge_between(at, nb);
            if (via == e || !g.has(via)) continue;
            visited[nb] = 1;
            path.push_back(via);
            if (dfs(nb, remaining - 1)) return true;
            path.pop_back();
            visited[nb] = 0;
        }
        return false;
    };

    visited[src] = 1;
    if (!dfs(src, need)) return std::nullopt;
    path.push_back(e);
    std::sort(path.begin(), path.end());
    return path;
}

}  // namespace detail

// The complete pattern copies through e in g + e, first one in a fixed
// deterministic order, as a sorted edge list containing e. Intended for
// absent e (then the copy is new by definition); works for any e.
inline std::optional<std::vector<Edge>> creates_new_copy(const EdgeSubgraph& g, Edge e,
                                                         const PatternFamily& fam) {
    if (fam.kind == PatternFamily::Kind::axis) return detail::axis_witness(g, e, fam);
    return detail::cycle_witness(g, e, fam.length);
}

struct PercolationStep {
    Edge edge;
    std::vector<Edge> witness;
};

struct PercolationCertificate {
    std::vector<PercolationStep> steps;
    EdgeSubgraph final;
};

inline PercolationCertificate percolate(const EdgeSubgraph& start, const PatternFamily& fam,
                                        int threads = 1) {
    EdgeSubgraph cur = start;
    std::vector<PercolationStep> steps;
    while (true) {
        std::vector<Edge> absent = cur.absent_edges();
        if (absent.empty()) break;
        std::vector<std::optional<std::vector<Edge>>> found(absent.size());
        run_chunked(absent.size(), threads, [&](std::uint64_t b, std::uint64_t t, int) {
            for (std::uint64_t i = b; i < t; ++i)
                found[i] = creates_new_copy(cur, absent[i], fam);
        });
        std::size_t round_begin = steps.size();
        for (std::size_t i = 0; i < absent.size(); ++i)
            if (found[i]) steps.push_back({absent[i], std::move(*found[i])});
        if (steps.size() == round_begin) break;
        for (std::size_t i = round_begin; i < steps.size(); ++i) cur.add(steps[i].edge);
    }
    return {std::move(steps), std::move(cur)};
}

inline bool is_weakly_saturated(const EdgeSubgraph& start, const PatternFamily& fam,
                                int threads = 1) {
    return percolate(start, fam, threads).final.size() == start.space().edge_count();
}

// Sequential replay in a caller-chosen order; every edge must have a witness
// at the moment it is added. Returns nullopt when some edge has none.
inline std::optional<PercolationCertificate> replay_in_order(const EdgeSubgraph& start,
                                                             const PatternFamily& fam,
                                                             const std::vector<Edge>& order) {
    EdgeSubgraph cur = start;
    std::vector<PercolationStep> steps;
    for (Edge e : order) {
        if (cur.has(e)) return std::nullopt;
        auto w = creates_new_copy(cur, e, fam);
        if (!w) return std::nullopt;
        steps.push_back({e, std::move(*w)});
        cur.add(e);
    }
    return PercolationCertificate{std::move(steps), std::move(cur)};
}

namespace detail {

inline bool valid_axis_witness(const GridSpace& sp, const PatternFamily& fam,
                               const std::vector<Edge>& w) {
    std::vector<int> dirs;
    Vertex base = UINT64_MAX;
    for (Edge e : w) {
        if (e >= sp.edge_count()) return false;
        int dir = sp.edge_dir(e);
        if (std::find(dirs.begin(), dirs.end(), dir) == dirs.end()) dirs.push_back(dir);
        base = std::min({base, sp.edge_base(e)});
    }
    std::sort(dirs.begin(), dirs.end());
    if (static_cast<int>(dirs.size()) != fam.m) return false;
    for (int dir : dirs)
        if (sp.coord(base, dir) > sp.k() - fam.r) return false;
    AxisSubgrid s{base, dirs, fam.r};
    return s.edges(sp) == w;
}

inline bool valid_cycle_witness(const GridSpace& sp, int length, const std::vector<Edge>& w) {
    if (static_cast<int>(w.size()) != length) return false;
    std::vector<std::pair<Vertex, Edge>> adj;  // endpoint -> incident witness edges
    for (Edge e : w) {
        if (e >= sp.edge_count()) return false;
        adj.push_back({sp.edge_base(e), e});
        adj.push_back({sp.edge_top(e), e});
    }
    std::sort(adj.begin(), adj.end());
    // every vertex exactly twice
    for (std::size_t i = 0; i < adj.size(); i += 2) {
        if (i + 1 >= adj.size() || adj[i].first != adj[i + 1].first) return false;
        if (i + 2 < adj.size() && adj[i + 2].first == adj[i].first) return false;
    }
    // single closed walk covering all edges
    Vertex start = adj[0].first, at = start;
    Edge prev = UINT64_MAX;
    int visited = 0;
    do {
        Edge next = UINT64_MAX;
        for (auto& [v, e] : adj)
            if (v == at && e != prev) {
                next = e;
                break;
            }
        if (next == UINT64_MAX) return false;
        at = sp.edge_base(next) == at ? sp.edge_top(next) : sp.edge_base(next);
        prev = next;
        ++visited;
    } while (at != start && visited <= length);
    return at == start && visited == length;
}

}  // namespace detail

// Structural check: is w exactly the edge set of one family member?
inline bool valid_witness(const GridSpace& sp, const PatternFamily& fam,
                          const std::vector<Edge>& w) {
    if (w.empty() || !std::is_sorted(w.begin(), w.end())) return false;
    if (std::adjacent_find(w.begin(), w.end()) != w.end()) return false;
    if (fam.kind == PatternFamily::Kind::axis) return detail::valid_axis_witness(sp, fam, w);
    return detail::valid_cycle_witness(sp, fam.length, w);
}

// Replays steps from start. Each step's edge must be absent, its witness a
// valid family member containing the edge with every other witness edge
// already present. On success *final_out (if given) receives the end state.
inline bool validate_certificate(const EdgeSubgraph& start,
                                 const std::vector<PercolationStep>& steps,
                                 const PatternFamily& fam, EdgeSubgraph* final_out = nullptr,
                                 std::string* why = nullptr) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    EdgeSubgraph cur = start;
    const GridSpace& sp = start.space();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        std::string where = "step " + std::to_string(i) + " (edge " + std::to_string(st.edge) + "): ";
        if (st.edge >= sp.edge_count()) return reject(where + "edge id out of range");
        if (cur.has(st.edge)) return reject(where + "edge already present");
        if (!valid_witness(sp, fam, st.witness)) return reject(where + "witness is not a family member");
        if (!std::binary_search(st.witness.begin(), st.witness.end(), st.edge))
            return reject(where + "witness does not contain the added edge");
        for (Edge e : st.witness)
            if (e != st.edge && !cur.has(e))
                return reject(where + "witness edge " + std::to_string(e) + " not yet present");
        cur.add(st.edge);
    }
    if (final_out) *final_out = std::move(cur);
    return true;
}

// --- text form: one "add <edge> witness <edges...>" line per step ---------

inline std::string certificate_to_text(const std::vector<PercolationStep>& steps) {
    std::ostringstream out;
    for (const auto& st : steps) {
        out << "add " << st.edge << " witness";
        for (Edge e : st.witness) out << ' ' << e;
        out << '\n';
    }
    return out.str();
}

inline std::vector<PercolationStep> certificate_from_text(const std::string& text) {
    std::vector<PercolationStep> steps;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw1, kw2;
        PercolationStep st;
        if (!(ls >> kw1 >> st.edge >> kw2) || kw1 != "add" || kw2 != "witness")
            throw std::invalid_argument("bad certificate line: " + line);
        Edge e;
        while (ls >> e) st.witness.push_back(e);
        if (st.witness.empty()) throw std::invalid_argument("bad certificate line: " + line);
        steps.push_back(std::move(st));
    }
    return steps;
}

}  // namespace gridsat
