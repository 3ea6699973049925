#pragma once

// Linear-algebraic lower-bound machinery for weak saturation. Every host
// edge is mapped to a sparse vector in W = (one (m-1)-dimensional block per
// vertex) + (one (r-2)-dimensional block per line): both endpoint blocks
// receive the moment vector of the edge's direction, and the line block
// receives a y-vector chosen so that any r-1 consecutive positions sum to
// zero. Two consequences drive everything here:
//   - the edge vectors of any axis-aligned P_r^m copy carry an explicit
//     all-nonzero linear dependency (dependency_certificate), so percolation
//     can never leave the span of the starting edges, and
//   - the rank of all edge vectors is therefore a lower bound on the size of
//     any weakly saturating edge set (rank_lower_bound).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gridsat/bigint.hpp"
#include "gridsat/core.hpp"
#include "gridsat/subgrid.hpp"

namespace gridsat {

// Block layout of W: vertex blocks first, then line blocks.
struct CertSpace {
    GridSpace grid;
    int m;  // pattern dimension; vertex blocks have m-1 coordinates
    int r;  // pattern leg length; line blocks have r-2 coordinates

    CertSpace(const GridSpace& g, int r_, int m_) : grid(g), m(m_), r(r_) {
        if (m < 1 || r < 2 || r > g.k()) throw std::invalid_argument("need 1 <= m, 2 <= r <= k");
    }

    int vertex_block_dim() const { return m - 1; }
    int line_block_dim() const { return r - 2; }
    std::uint64_t total_dim() const {
        return grid.vertex_count() * static_cast<std::uint64_t>(m - 1) +
               grid.line_count() * static_cast<std::uint64_t>(r - 2);
    }
    std::uint64_t vertex_coord(Vertex v, int j) const {
        return v * static_cast<std::uint64_t>(m - 1) + static_cast<std::uint64_t>(j);
    }
    std::uint64_t line_coord(std::uint64_t line, int j) const {
        return grid.vertex_count() * static_cast<std::uint64_t>(m - 1) +
               line * static_cast<std::uint64_t>(r - 2) + static_cast<std::uint64_t>(j);
    }
};

// z_1..z_d on the moment curve: z_i = (i, i^2, ..., i^(m-1)). Any m-1 of
// them are linearly independent (Vandermonde), which is exactly the general
// position the dependency solver relies on.
inline std::vector<std::vector<BigRat>> moment_vectors(int d, int m) {
    std::vector<std::vector<BigRat>> z(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) {
        BigRat acc = 1;
        for (int p = 1; p <= m - 1; ++p) {
            acc *= i;
            z[static_cast<std::size_t>(i - 1)].push_back(acc);
        }
    }
    return z;
}

// y_1..y_{k-1} in Q^(r-2): the first r-2 are the standard basis, then each
// next one is minus the sum of the previous r-2. Any r-2 consecutive vectors
// are independent and any r-1 consecutive vectors sum to zero.
inline std::vector<std::vector<BigRat>> y_vectors(int k, int r) {
    if (k < r || r < 2) throw std::invalid_argument("need k >= r >= 2");
    std::vector<std::vector<BigRat>> y(static_cast<std::size_t>(k - 1),
                                       std::vector<BigRat>(static_cast<std::size_t>(r - 2), 0));
    for (int t = 1; t <= k - 1; ++t) {
        auto& row = y[static_cast<std::size_t>(t - 1)];
        if (t <= r - 2) {
            row[static_cast<std::size_t>(t - 1)] = 1;
        } else {
            for (int j = t - r + 2; j <= t - 1; ++j)
                for (int c = 0; c < r - 2; ++c)
                    row[static_cast<std::size_t>(c)] -= y[static_cast<std::size_t>(j - 1)]
                                                         [static_cast<std::size_t>(c)];
        }
    }
    return y;
}

// Sparse exact vector: strictly increasing coordinates, nonzero values.
using EdgeVector = std::vector<std::pair<std::uint64_t, BigRat>>;

// The vector attached to one host edge: the moment vector of its direction
// on both endpoint blocks, and on the line block the y-vector indexed by the
// larger endpoint coordinate along that direction.
inline EdgeVector edge_vector(const CertSpace& sp, Edge e,
                              const std::vector<std::vector<BigRat>>& z,
                              const std::vector<std::vector<BigRat>>& y) {
    auto ref = sp.grid.edge_ref(e);
    Vertex u = ref.base;
    Vertex v = u + sp.grid.pow_k(ref.dir);
    int t = sp.grid.coord(u, ref.dir) + 1;  // larger endpoint coordinate, 1-based
    std::map<std::uint64_t, BigRat> acc;
    for (int j = 0; j < sp.vertex_block_dim(); ++j) {
        const BigRat& val = z[static_cast<std::size_t>(ref.dir)][static_cast<std::size_t>(j)];
        if (val != 0) {
            acc[sp.vertex_coord(u, j)] += val;
            acc[sp.vertex_coord(v, j)] += val;
        }
    }
    std::uint64_t line = sp.grid.line_of_edge(e);
    for (int j = 0; j < sp.line_block_dim(); ++j) {
        const BigRat& val = y[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(j)];
        if (val != 0) acc[sp.line_coord(line, j)] += val;
    }
    EdgeVector out;
    for (auto& [c, val] : acc)
        if (val != 0) out.emplace_back(c, std::move(val));
    return out;
}

inline std::vector<EdgeVector> build_edge_vectors(int k, int r, int d, int m) {
    GridSpace g(k, d);
    CertSpace sp(g, r, m);
    auto z = moment_vectors(d, m);
    auto y = y_vectors(k, r);
    std::vector<EdgeVector> out;
    out.reserve(g.edge_count());
    for (Edge e = 0; e < g.edge_count(); ++e) out.push_back(edge_vector(sp, e, z, y));
    return out;
}

// Incremental exact rank over the rationals: rows are reduced against the
// stored pivots; a row that survives becomes a new pivot.
class RankAccumulator {
public:
    // Returns true iff the row was independent of everything added so far.
    bool add(EdgeVector row) {
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) {
                normalize(row);
                pivots_.emplace(row.front().first, std::move(row));
                ++rank_;
                return true;
            }
            subtract(row, it->second, row.front().second);
        }
        return false;
    }

    int rank() const { return rank_; }

private:
    static void normalize(EdgeVector& row) {
        BigRat lead = row.front().second;
        for (auto& [c, v] : row) v /= lead;
    }

    // row -= factor * pivot (pivot has leading value 1)
    static void subtract(EdgeVector& row, const EdgeVector& pivot, BigRat factor) {
        EdgeVector out;
        out.reserve(row.size() + pivot.size());
        std::size_t a = 0, b = 0;
        while (a < row.size() || b < pivot.size()) {
            if (b == pivot.size() ||
                (a < row.size() && row[a].first < pivot[b].first)) {
                out.push_back(std::move(row[a++]));
            } else if (a == row.size() || pivot[b].first < row[a].first) {
                out.emplace_back(pivot[b].first, -factor * pivot[b].second);
                ++b;
            } else {
                BigRat v = row[a].second - factor * pivot[b].second;
                if (v != 0) out.emplace_back(row[a].first, std::move(v));
                ++a;
                ++b;
            }
        }
        row = std::move(out);
    }

    std::map<std::uint64_t, EdgeVector> pivots_;
    int rank_ = 0;
};

inline int rank_of(const std::vector<EdgeVector>& rows) {
    RankAccumulator acc;
    for (const auto& r : rows) acc.add(r);
    return acc.rank();
}

// Exact rank of all host edge vectors: a lower bound on the number of edges
// any weakly saturating set must contain.
inline int rank_lower_bound(int k, int r, int d, int m) {
    GridSpace g(k, d);
    if (g.edge_count() > 10000) throw std::invalid_argument("host too large for exact rank");
    return rank_of(build_edge_vectors(k, r, d, m));
}

struct DependencyCertificate {
    AxisSubgrid copy;
    std::vector<std::pair<Edge, BigRat>> coefficients;  // ascending edge id, all nonzero
    bool verified = false;
};

// Explicit all-nonzero dependency among the edge vectors of one axis-aligned
// P_r^m copy: solve for coefficients c over the copy's directions with
// sum c_a * z(dir_a) = 0 (first coefficient normalized to 1), then weight
// each edge by c of its direction times 2^(number of copy directions, other
// than its own, where the edge sits strictly inside the leg). Vertex blocks
// cancel because each vertex collects 2^(interior directions) times the zero
// combination; line blocks cancel because each traversed leg sums r-1
// consecutive y-vectors.
inline DependencyCertificate dependency_certificate(const AxisSubgrid& copy, int k, int r, int d,
                                                    int m) {
    if (copy.m() != m || copy.r != r)
        throw std::invalid_argument("copy shape does not match pattern parameters");
    GridSpace g(k, d);
    CertSpace sp(g, r, m);
    auto z = moment_vectors(d, m);
    auto y = y_vectors(k, r);

    // nonzero null combination of the m moment vectors of the copy's
    // directions, living in Q^(m-1): unknowns c_2..c_m with c_1 = 1
    std::vector<BigRat> c(static_cast<std::size_t>(m), 0);
    c[0] = 1;
    if (m > 1) {
        // columns: z of dirs[1..m-1]; right-hand side: -z of dirs[0]
        int n = m - 1;
        std::vector<std::vector<BigRat>> a(static_cast<std::size_t>(n),
                                           std::vector<BigRat>(static_cast<std::size_t>(n) + 1));
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col)
                a[row][col] = z[static_cast<std::size_t>(copy.dirs[col + 1])]
                               [static_cast<std::size_t>(row)];
            a[row][static_cast<std::size_t>(n)] =
                -z[static_cast<std::size_t>(copy.dirs[0])][static_cast<std::size_t>(row)];
        }
        for (int col = 0; col < n; ++col) {
            int piv = col;
            while (piv < n && a[piv][col] == 0) ++piv;
            if (piv == n) throw std::logic_error("degenerate null space: moment vectors not in general position");
            std::swap(a[col], a[piv]);
            for (int row = 0; row < n; ++row) {
                if (row == col || a[row][col] == 0) continue;
                BigRat f = a[row][col] / a[col][col];
                for (int cc = col; cc <= n; ++cc) a[row][cc] -= f * a[col][cc];
            }
        }
        for (int i = 0; i < n; ++i) {
            c[static_cast<std::size_t>(i) + 1] = a[i][static_cast<std::size_t>(n)] / a[i][i];
            if (c[static_cast<std::size_t>(i) + 1] == 0)
                throw std::logic_error("degenerate null space: moment vectors not in general position");
        }
    }

    DependencyCertificate cert{copy, {}, false};
    std::map<std::uint64_t, BigRat> sum;
    for (Edge e : copy.edges(g)) {
        auto ref = g.edge_ref(e);
        int idx = 0;
        while (copy.dirs[idx] != ref.dir) ++idx;
        int doubling = 0;
        for (int a2 = 0; a2 < m; ++a2) {
            if (a2 == idx) continue;
            int pos = g.coord(ref.base, copy.dirs[a2]) - g.coord(copy.base, copy.dirs[a2]);
            if (pos >= 1 && pos <= r - 2) ++doubling;
        }
        BigRat d_e = c[static_cast<std::size_t>(idx)] * ipow(2, doubling);
        cert.coefficients.emplace_back(e, d_e);
        for (auto& [coordinate, val] : edge_vector(sp, e, z, y)) sum[coordinate] += d_e * val;
    }
    bool zero = true;
    for (auto& [coordinate, val] : sum) zero = zero && val == 0;
    bool nonzero_coeffs = true;
    for (auto& [e, d_e] : cert.coefficients) nonzero_coeffs = nonzero_coeffs && d_e != 0;
    cert.verified = zero && nonzero_coeffs;
    return cert;
}

}  // namespace gridsat
