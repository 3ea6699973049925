#pragma once

// Finite grid graphs P_k^d: vertices are d-tuples over {0..k-1}, edges join
// tuples differing by exactly 1 in one coordinate. Q_d is the k=2 case.
// Vertices and edges carry dense integer ids so subgraphs can live in flat
// arrays; all encodings here are little-endian mixed radix (coordinate 0 is
// the least significant digit).

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace gridsat {

using Vertex = std::uint64_t;
using Edge = std::uint64_t;

class GridSpace {
public:
    GridSpace(int k, int d) : k_(k), d_(d) {
        if (k < 2) throw std::invalid_argument("grid side length must be >= 2");
        if (d < 1) throw std::invalid_argument("grid dimension must be >= 1");
        pow_.assign(static_cast<std::size_t>(d) + 1, 1);
        for (int i = 0; i < d; ++i) {
            if (pow_[i] > UINT64_MAX / static_cast<std::uint64_t>(k))
                throw std::overflow_error("k^d does not fit in 64 bits");
            pow_[i + 1] = pow_[i] * static_cast<std::uint64_t>(k);
        }
        // edge ids additionally need d * (k-1) * k^(d-1) to fit
        std::uint64_t per_dir = (pow_[d - 1] / 1) * static_cast<std::uint64_t>(k - 1);
        if (pow_[d - 1] > UINT64_MAX / static_cast<std::uint64_t>(k - 1) ||
            per_dir > UINT64_MAX / static_cast<std::uint64_t>(d))
            throw std::overflow_error("edge id space does not fit in 64 bits");
        edges_per_dir_ = per_dir;
    }

    int k() const { return k_; }
    int d() const { return d_; }
    std::uint64_t vertex_count() const { return pow_[d_]; }
    std::uint64_t edge_count() const { return edges_per_dir_ * d_; }
    std::uint64_t edges_per_direction() const { return edges_per_dir_; }
    std::uint64_t line_count() const { return pow_[d_ - 1] * d_; }
    std::uint64_t pow_k(int i) const { return pow_[i]; }

    bool valid_vertex(Vertex v) const { return v < vertex_count(); }

    int coord(Vertex v, int dir) const {
        return static_cast<int>((v / pow_[dir]) % static_cast<std::uint64_t>(k_));
    }

    Vertex encode(std::span<const int> coords) const {
        if (static_cast<int>(coords.size()) != d_)
            throw std::invalid_argument("coordinate tuple has wrong length");
        Vertex v = 0;
        for (int i = d_ - 1; i >= 0; --i) {
            if (coords[i] < 0 || coords[i] >= k_)
                throw std::out_of_range("coordinate outside [0, k)");
            v = v * static_cast<std::uint64_t>(k_) + static_cast<std::uint64_t>(coords[i]);
        }
        return v;
    }

    std::vector<int> decode(Vertex v) const {
        if (!valid_vertex(v)) throw std::out_of_range("vertex id outside grid");
        std::vector<int> c(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i) {
            c[i] = static_cast<int>(v % static_cast<std::uint64_t>(k_));
            v /= static_cast<std::uint64_t>(k_);
        }
        return c;
    }

    // Sorted neighbor list (2d entries in the interior, fewer on the boundary).
    std::vector<Vertex> neighbors(Vertex v) const {
        std::vector<Vertex> out;
        out.reserve(static_cast<std::size_t>(2 * d_));
        for (int i = 0; i < d_; ++i)
            if (coord(v, i) > 0) out.push_back(v - pow_[i]);
        for (int i = 0; i < d_; ++i)
            if (coord(v, i) < k_ - 1) out.push_back(v + pow_[i]);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool adjacent(Vertex u, Vertex v) const {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        for (int i = 0; i < d_; ++i)
            if (v - u == pow_[i]) return coord(u, i) < k_ - 1 && same_but(u, v, i);
        return false;
    }

    // --- edges -----------------------------------------------------------
    // An edge is (base, dir) with base the lower endpoint along dir. Packing:
    // ids [dir * epd, (dir+1) * epd) hold direction dir; within a direction,
    // id = rest * (k-1) + c_dir where rest re-packs the other d-1 coordinates
    // and c_dir = coord(base, dir) in [0, k-2]. This is dense and invertible.

    Edge edge_id(Vertex base, int dir) const {
        int c = coord(base, dir);
        if (c >= k_ - 1) throw std::out_of_range("edge base at upper face");
        std::uint64_t lo = base % pow_[dir];
        std::uint64_t hi = base / pow_[dir + 1];
        std::uint64_t rest = lo + hi * pow_[dir];
        return static_cast<Edge>(dir) * edges_per_dir_ +
               rest * static_cast<std::uint64_t>(k_ - 1) + static_cast<std::uint64_t>(c);
    }

    Edge edge_between(Vertex u, Vertex v) const {
        if (u > v) std::swap(u, v);
        for (int i = 0; i < d_; ++i)
            if (v - u == pow_[i] && same_but(u, v, i) && coord(u, i) < k_ - 1)
                return edge_id(u, i);
        throw std::invalid_argument("vertices are not adjacent");
    }

    struct EdgeRef {
        Vertex base;
        int dir;
    };

    EdgeRef edge_ref(Edge e) const {
        if (e >= edge_count()) throw std::out_of_range("edge id outside grid");
        int dir = static_cast<int>(e / edges_per_dir_);
        std::uint64_t m = e % edges_per_dir_;
        std::uint64_t c = m % static_cast<std::uint64_t>(k_ - 1);
        std::uint64_t rest = m / static_cast<std::uint64_t>(k_ - 1);
        std::uint64_t lo = rest % pow_[dir];
        std::uint64_t hi = rest / pow_[dir];
        return {lo + c * pow_[dir] + hi * pow_[dir + 1], dir};
    }

    int edge_dir(Edge e) const { return static_cast<int>(e / edges_per_dir_); }
    Vertex edge_base(Edge e) const { return edge_ref(e).base; }
    Vertex edge_top(Edge e) const {
        auto r = edge_ref(e);
        return r.base + pow_[r.dir];
    }

    // --- lines -----------------------------------------------------------
    // A line is a maximal 1-dimensional subgrid: all k vertices agreeing
    // outside one direction. Dense ids: dir * k^(d-1) + rank of the fixed
    // coordinates. Every edge lies on exactly one line.

    std::uint64_t line_of_edge(Edge e) const {
        int dir = static_cast<int>(e / edges_per_dir_);
        std::uint64_t rest = (e % edges_per_dir_) / static_cast<std::uint64_t>(k_ - 1);
        return static_cast<std::uint64_t>(dir) * pow_[d_ - 1] + rest;
    }

    std::uint64_t line_id(Vertex member, int dir) const {
        std::uint64_t lo = member % pow_[dir];
        std::uint64_t hi = member / pow_[dir + 1];
        return static_cast<std::uint64_t>(dir) * pow_[d_ - 1] + lo + hi * pow_[dir];
    }

    int line_dir(std::uint64_t line) const { return static_cast<int>(line / pow_[d_ - 1]); }

    // The k edges of a line, ascending.
    std::vector<Edge> line_edges(std::uint64_t line) const {
        int dir = line_dir(line);
        std::uint64_t rest = line % pow_[d_ - 1];
        std::vector<Edge> out(static_cast<std::size_t>(k_ - 1));
        Edge first = static_cast<Edge>(dir) * edges_per_dir_ +
                     rest * static_cast<std::uint64_t>(k_ - 1);
        for (int c = 0; c < k_ - 1; ++c) out[c] = first + static_cast<Edge>(c);
        return out;
    }

    // --- per-vertex statistics --------------------------------------------
    int weight(Vertex v) const {  // sum of coordinates
        int w = 0;
        for (int i = 0; i < d_; ++i) w += coord(v, i);
        return w;
    }

    // number of coordinates with value >= r-1 ("large" for pattern length r)
    int large_count(Vertex v, int r) const {
        int c = 0;
        for (int i = 0; i < d_; ++i)
            if (coord(v, i) >= r - 1) ++c;
        return c;
    }

    struct VertexStats {
        int weight;
        int large_count;
    };
    VertexStats vertex_stats(Vertex v, int r) const { return {weight(v), large_count(v, r)}; }

private:
    bool same_but(Vertex u, Vertex v, int dir) const {
        return (u % pow_[dir]) == (v % pow_[dir]) && (u / pow_[dir + 1]) == (v / pow_[dir + 1]);
    }

    int k_, d_;
    std::uint64_t edges_per_dir_;
    std::vector<std::uint64_t> pow_;
};

}  // namespace gridsat
