#pragma once

// Brute-force ground truth on tiny hosts: exact minimum sizes of weakly
// saturating and saturated edge sets, found by cardinality-ascending
// exhaustive enumeration of edge subsets. Deliberately simple — no pruning
// beyond a connectivity pre-filter for cycle patterns (sound there because a
// cycle-completing addition never joins two components, so a percolating
// start must already connect every vertex). Hosts above the edge caps are
// refused rather than attempted.

#include <chrono>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gridsat/core.hpp"
#include "gridsat/edge_set.hpp"
#include "gridsat/percolation.hpp"
#include "gridsat/saturation.hpp"

namespace gridsat {

struct SearchBudget {
    std::uint64_t max_wsat_edges = 16;
    std::uint64_t max_sat_edges = 12;
    std::chrono::milliseconds time_limit{10 * 60 * 1000};
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    int value = 0;
    EdgeSubgraph witness;
};

namespace detail {

// Visit every c-subset of [0, n) in lexicographic order until fn returns
// true; reports whether any call did.
template <typename Fn>
bool for_each_subset(int n, int c, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(c));
    std::iota(idx.begin(), idx.end(), 0);
    if (c > n) return false;
    while (true) {
        if (fn(idx)) return true;
        int i = c - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - c + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < c; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline bool connects_all_vertices(const GridSpace& g, const std::vector<Edge>& all,
                                  const std::vector<int>& idx) {
    std::vector<std::uint32_t> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::uint64_t components = g.vertex_count();
    for (int i : idx) {
        Edge e = all[static_cast<std::size_t>(i)];
        auto a = find(static_cast<std::uint32_t>(g.edge_base(e)));
        auto b = find(static_cast<std::uint32_t>(g.edge_top(e)));
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

}  // namespace detail

// Smallest c such that some c-edge subgraph of the host percolates to the
// full edge set under the pattern family, together with one witness.
inline OracleResult min_wsat(const GridSpace& host, const PatternFamily& fam,
                             const SearchBudget& budget = {}) {
    if (host.edge_count() > budget.max_wsat_edges)
        throw BudgetExceeded("host exceeds the edge cap for exhaustive search");
    auto deadline = std::chrono::steady_clock::now() + budget.time_limit;
    int n = static_cast<int>(host.edge_count());
    std::vector<Edge> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    bool cycle = fam.kind == PatternFamily::Kind::cycle;
    int first = cycle ? static_cast<int>(host.vertex_count()) - 1 : 0;
    for (int c = std::min(first, n); c <= n; ++c) {
        EdgeSubgraph found(host);
        std::uint64_t ticks = 0;
        bool hit = detail::for_each_subset(n, c, [&](const std::vector<int>& idx) {
            if ((++ticks & 255) == 0 && std::chrono::steady_clock::now() > deadline)
                throw BudgetExceeded("time limit exhausted during subset enumeration");
            if (cycle && !detail::connects_all_vertices(host, all, idx)) return false;
            EdgeSubgraph sub(host);
            for (int i : idx) sub.add(all[static_cast<std::size_t>(i)]);
            if (!is_weakly_saturated(sub, fam)) return false;
            found = sub;
            return true;
        });
        if (hit) return {c, found};
    }
    return {n, EdgeSubgraph::full(host)};  // the full host always percolates
}

// Smallest c such that some c-edge subgraph is m-subcube-free and every
// absent host edge would complete an m-subcube, together with one witness.
inline OracleResult min_sat(const GridSpace& host, int m, const SearchBudget& budget = {}) {
    if (host.k() != 2) throw std::invalid_argument("saturation oracle needs a binary host");
    if (host.edge_count() > budget.max_sat_edges)
        throw BudgetExceeded("host exceeds the edge cap for exhaustive search");
    auto deadline = std::chrono::steady_clock::now() + budget.time_limit;
    int n = static_cast<int>(host.edge_count());
    std::vector<Edge> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (int c = 0; c <= n; ++c) {
        EdgeSubgraph found(host);
        std::uint64_t ticks = 0;
        bool hit = detail::for_each_subset(n, c, [&](const std::vector<int>& idx) {
            if ((++ticks & 255) == 0 && std::chrono::steady_clock::now() > deadline)
                throw BudgetExceeded("time limit exhausted during subset enumeration");
            EdgeSubgraph sub(host);
            for (int i : idx) sub.add(all[static_cast<std::size_t>(i)]);
            if (!is_saturated(sub, m)) return false;
            found = sub;
            return true;
        });
        if (hit) return {c, found};
    }
    throw std::logic_error("no saturated subgraph found, including the full host");
}

}  // namespace gridsat
