#pragma once

// Dense edge subgraph of a fixed grid: one bit per edge id.

#include <cstdint>
#include <vector>

#include "gridsat/core.hpp"

namespace gridsat {

class EdgeSubgraph {
public:
    explicit EdgeSubgraph(const GridSpace& g)
        : space_(g), present_(g.edge_count(), false) {}

    static EdgeSubgraph full(const GridSpace& g) {
        EdgeSubgraph s(g);
        std::fill(s.present_.begin(), s.present_.end(), true);
        s.count_ = g.edge_count();
        return s;
    }

    const GridSpace& space() const { return space_; }

    bool has(Edge e) const { return present_[e]; }

    void add(Edge e) {
        if (!present_[e]) {
            present_[e] = true;
            ++count_;
        }
    }

    void remove(Edge e) {
        if (present_[e]) {
            present_[e] = false;
            --count_;
        }
    }

    std::uint64_t size() const { return count_; }
    std::uint64_t missing() const { return space_.edge_count() - count_; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(count_);
        for (Edge e = 0; e < present_.size(); ++e)
            if (present_[e]) out.push_back(e);
        return out;
    }

    std::vector<Edge> absent_edges() const {
        std::vector<Edge> out;
        out.reserve(missing());
        for (Edge e = 0; e < present_.size(); ++e)
            if (!present_[e]) out.push_back(e);
        return out;
    }

    bool operator==(const EdgeSubgraph& o) const {
        return space_.k() == o.space_.k() && space_.d() == o.space_.d() &&
               present_ == o.present_;
    }

    // true when every edge of o is present here (hosts must match)
    bool contains(const EdgeSubgraph& o) const {
        for (Edge e = 0; e < present_.size(); ++e)
            if (o.present_[e] && !present_[e]) return false;
        return true;
    }

private:
    GridSpace space_;
    std::vector<bool> present_;
    std::uint64_t count_ = 0;
};

}  // namespace gridsat
