#pragma once

// JSON interchange for edge subgraphs and deterministic DOT export. The
// document form is {"k":int,"d":int,"edges":[ids...],"meta":{...}} with keys
// and edge ids in ascending order, so serialize(parse(text)) == text for any
// text this module produced.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridsat/core.hpp"
#include "gridsat/edge_set.hpp"

namespace gridsat {

struct GraphDocument {
    int k = 2;
    int d = 1;
    std::vector<Edge> edges;  // strictly ascending, valid for (k, d)
    nlohmann::json meta = nlohmann::json::object();

    bool operator==(const GraphDocument& o) const {
        return k == o.k && d == o.d && edges == o.edges && meta == o.meta;
    }
};

inline GraphDocument make_document(const EdgeSubgraph& g,
                                   nlohmann::json meta = nlohmann::json::object()) {
    return {g.space().k(), g.space().d(), g.edges(), std::move(meta)};
}

// Validates shape and ids; throws std::invalid_argument on any defect.
inline EdgeSubgraph to_subgraph(const GraphDocument& doc) {
    GridSpace g(doc.k, doc.d);
    EdgeSubgraph out(g);
    Edge prev = 0;
    bool first = true;
    for (Edge e : doc.edges) {
        if (!first && e <= prev) throw std::invalid_argument("edge ids must ascend strictly");
        if (e >= g.edge_count()) throw std::invalid_argument("edge id outside the host grid");
        out.add(e);
        prev = e;
        first = false;
    }
    return out;
}

inline std::string serialize_document(const GraphDocument& doc) {
    nlohmann::json j;
    j["k"] = doc.k;
    j["d"] = doc.d;
    j["edges"] = doc.edges;
    j["meta"] = doc.meta;
    return j.dump(2) + "\n";
}

inline GraphDocument parse_document(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("k") || !j.contains("d") || !j.contains("edges"))
        throw std::invalid_argument("document needs k, d and edges fields");
    GraphDocument doc;
    try {
        doc.k = j.at("k").get<int>();
        doc.d = j.at("d").get<int>();
        doc.edges = j.at("edges").get<std::vector<Edge>>();
        doc.meta = j.value("meta", nlohmann::json::object());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed document: ") + e.what());
    }
    to_subgraph(doc);  // shape validation
    return doc;
}

inline void save_document(const std::string& path, const GraphDocument& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_document(doc);
}

inline GraphDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

// Undirected DOT text: every vertex listed (labeled by its coordinate
// tuple), then edges in ascending id order. Byte-deterministic.
inline std::string export_dot(const GraphDocument& doc) {
    GridSpace g(doc.k, doc.d);
    auto label = [&](Vertex v) {
        std::string s = "\"";
        for (int i = 0; i < doc.d; ++i) {
            if (i) s += ',';
            s += std::to_string(g.coord(v, i));
        }
        return s + "\"";
    };
    std::string out = "graph G {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) out += "  " + label(v) + ";\n";
    for (Edge e : doc.edges)
        out += "  " + label(g.edge_base(e)) + " -- " + label(g.edge_top(e)) + ";\n";
    return out + "}\n";
}

}  // namespace gridsat
