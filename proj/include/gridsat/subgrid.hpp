#pragma once

// Axis-aligned copies of P_r^m inside P_k^d: pick m directions, an interval of
// length r along each, and a fixed value for every other coordinate.

#include <cstdint>
#include <functional>
#include <vector>

#include "gridsat/core.hpp"

namespace gridsat {

struct AxisSubgrid {
    Vertex base;            // minimal corner
    std::vector<int> dirs;  // m chosen directions, strictly increasing
    int r;                  // interval length along each chosen direction

    int m() const { return static_cast<int>(dirs.size()); }

    // All r^m vertices, ascending.
    std::vector<Vertex> vertices(const GridSpace& g) const {
        std::vector<Vertex> out{base};
        for (int dir : dirs) {
            std::size_t n = out.size();
            for (int step = 1; step < r; ++step)
                for (std::size_t i = 0; i < n; ++i)
                    out.push_back(out[i] + static_cast<std::uint64_t>(step) * g.pow_k(dir));
            std::sort(out.begin(), out.end());
        }
        return out;
    }

    // All m * r^(m-1) * (r-1) edges, sorted ascending.
    std::vector<Edge> edges(const GridSpace& g) const {
        std::vector<Edge> out;
        int mm = m();
        std::vector<int> off(static_cast<std::size_t>(mm), 0);
        for (int a = 0; a < mm; ++a) {
            std::fill(off.begin(), off.end(), 0);
            // offsets range over [0, r-2] along axis a, [0, r-1] elsewhere
            while (true) {
                Vertex v = base;
                for (int j = 0; j < mm; ++j)
                    v += static_cast<std::uint64_t>(off[j]) * g.pow_k(dirs[j]);
                out.push_back(g.edge_id(v, dirs[a]));
                int j = 0;
                for (; j < mm; ++j) {
                    int cap = (j == a) ? r - 2 : r - 1;
                    if (off[j] < cap) {
                        ++off[j];
                        break;
                    }
                    off[j] = 0;
                }
                if (j == mm) break;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

// Visit every axis-aligned P_r^m copy in g, in a fixed deterministic order:
// direction sets in lexicographic order, then bases ascending within a set.
inline void for_each_axis_subgrid(const GridSpace& g, int r, int m,
                                  const std::function<void(const AxisSubgrid&)>& fn) {
    int d = g.d(), k = g.k();
    if (m < 1 || m > d || r < 2 || r > k) return;
    std::vector<int> dirs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) dirs[i] = i;
    std::vector<int> coords(static_cast<std::size_t>(d));
    while (true) {
        // base coordinates: chosen dirs range over [0, k-r], others over [0, k-1]
        std::fill(coords.begin(), coords.end(), 0);
        std::vector<bool> chosen(static_cast<std::size_t>(d), false);
        for (int dir : dirs) chosen[dir] = true;
        while (true) {
            AxisSubgrid s{g.encode(coords), dirs, r};
            fn(s);
            int i = 0;
            for (; i < d; ++i) {
                int cap = chosen[i] ? k - r : k - 1;
                if (coords[i] < cap) {
                    ++coords[i];
                    std::fill(coords.begin(), coords.begin() + i, 0);
                    break;
                }
            }
            if (i == d) break;
        }
        // next direction combination
        int i = m - 1;
        while (i >= 0 && dirs[i] == d - m + i) --i;
        if (i < 0) break;
        ++dirs[i];
        for (int j = i + 1; j < m; ++j) dirs[j] = dirs[j - 1] + 1;
    }
}

inline std::uint64_t count_axis_subgrids(const GridSpace& g, int r, int m) {
    std::uint64_t n = 0;
    for_each_axis_subgrid(g, r, m, [&](const AxisSubgrid&) { ++n; });
    return n;
}

}  // namespace gridsat
