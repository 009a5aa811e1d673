#include "kmgm/graphs.hpp"

#include "json_io.hpp"
#include "kmgm/errors.hpp"

#include <cmath>

namespace kmgm {
namespace {

using json_io::Json;

std::string graph_label(std::size_t index) { return "graphs[" + std::to_string(index) + "]"; }

Json matrix_rows(const Matrix& rows) {
    Json out = Json::array();
    for (Index r = 0; r < rows.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < rows.cols(); ++c) row.push_back(rows(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

Matrix read_rows(const Json& value, Index count, Index dim, const std::string& path) {
    if (!value.is_array()) throw ParseError("field '" + path + "': expected an array");
    if (count >= 0 && static_cast<Index>(value.size()) != count) {
        throw ValidationError("field '" + path + "': expected " + std::to_string(count) +
                              " rows, got " + std::to_string(value.size()));
    }
    Matrix out(static_cast<Index>(value.size()), dim);
    for (std::size_t r = 0; r < value.size(); ++r) {
        out.row(static_cast<Index>(r)) =
            json_io::require_vector(value[r], dim, path + "[" + std::to_string(r) + "]").transpose();
    }
    return out;
}

AttributedGraph graph_from_json(const Json& value, Index m, Index d_v, Index d_e,
                                const std::string& path) {
    AttributedGraph g;
    g.vertex_attrs = read_rows(json_io::require(value, "vertex_attrs", path), m, d_v,
                               path + ".vertex_attrs");

    const Json& edges = json_io::require(value, "edges", path);
    if (!edges.is_array()) throw ParseError("field '" + path + ".edges': expected an array");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Json& pair = edges[e];
        const std::string where = path + ".edges[" + std::to_string(e) + "]";
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer()) {
            throw ParseError("field '" + where + "': expected a pair of integers");
        }
        g.edges.push_back({pair[0].get<Index>(), pair[1].get<Index>()});
    }
    g.edge_attrs = read_rows(json_io::require(value, "edge_attrs", path),
                             static_cast<Index>(g.edges.size()), d_e, path + ".edge_attrs");

    const Json& mask = json_io::require(value, "dummy_mask", path);
    if (!mask.is_array() || static_cast<Index>(mask.size()) != m) {
        throw ValidationError("field '" + path + ".dummy_mask': expected " + std::to_string(m) +
                              " flags");
    }
    for (std::size_t v = 0; v < mask.size(); ++v) {
        if (!mask[v].is_number_integer() || (mask[v] != 0 && mask[v] != 1)) {
            throw ParseError("field '" + path + ".dummy_mask[" + std::to_string(v) +
                             "]': expected 0 or 1");
        }
        g.is_dummy.push_back(mask[v] == 1);
    }
    return g;
}

}  // namespace

void AttributedGraph::validate() const {
    if (static_cast<Index>(is_dummy.size()) != num_vertices()) {
        throw ValidationError("dummy mask has " + std::to_string(is_dummy.size()) +
                              " flags for " + std::to_string(num_vertices()) + " vertices");
    }
    if (edge_attrs.rows() != num_edges()) {
        throw ValidationError("graph has " + std::to_string(num_edges()) + " edges but " +
                              std::to_string(edge_attrs.rows()) + " edge attribute rows");
    }
    if (!vertex_attrs.allFinite() || !edge_attrs.allFinite()) {
        throw ValidationError("graph attributes must be finite");
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [s, t] = edges[e];
        if (s < 0 || t < 0 || s >= num_vertices() || t >= num_vertices()) {
            throw ValidationError("edge " + std::to_string(e) + " (" + std::to_string(s) + ", " +
                                  std::to_string(t) + ") has an endpoint out of range");
        }
        if (is_dummy[static_cast<std::size_t>(s)] || is_dummy[static_cast<std::size_t>(t)]) {
            throw ValidationError("edge " + std::to_string(e) + " touches a dummy vertex");
        }
    }
}

AttributedGraph pad_with_dummies(const AttributedGraph& g, Index m, const Vector& dummy_attr) {
    if (g.num_vertices() > m) {
        throw ValidationError("cannot pad a graph of " + std::to_string(g.num_vertices()) +
                              " vertices to " + std::to_string(m));
    }
    if (dummy_attr.size() != g.vertex_dim()) {
        throw DimensionError("dummy attribute has dimension " + std::to_string(dummy_attr.size()) +
                             ", vertex attributes have " + std::to_string(g.vertex_dim()));
    }
    AttributedGraph out = g;
    const Index original = g.num_vertices();
    out.vertex_attrs.conservativeResize(m, Eigen::NoChange);
    for (Index v = original; v < m; ++v) out.vertex_attrs.row(v) = dummy_attr.transpose();
    out.is_dummy.resize(static_cast<std::size_t>(m), true);
    return out;
}

AttributedGraph strip_dummies(const AttributedGraph& g) {
    std::vector<Index> new_index(static_cast<std::size_t>(g.num_vertices()), -1);
    Index kept = 0;
    for (Index v = 0; v < g.num_vertices(); ++v) {
        if (!g.is_dummy[static_cast<std::size_t>(v)]) new_index[static_cast<std::size_t>(v)] = kept++;
    }
    AttributedGraph out;
    out.vertex_attrs.resize(kept, g.vertex_dim());
    for (Index v = 0; v < g.num_vertices(); ++v) {
        const Index target = new_index[static_cast<std::size_t>(v)];
        if (target >= 0) out.vertex_attrs.row(target) = g.vertex_attrs.row(v);
    }
    out.is_dummy.assign(static_cast<std::size_t>(kept), false);
    std::vector<Index> kept_edges;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Index s = new_index[static_cast<std::size_t>(g.edges[e].source)];
        const Index t = new_index[static_cast<std::size_t>(g.edges[e].target)];
        if (s >= 0 && t >= 0) {
            out.edges.push_back({s, t});
            kept_edges.push_back(static_cast<Index>(e));
        }
    }
    out.edge_attrs.resize(static_cast<Index>(kept_edges.size()), g.edge_dim());
    for (std::size_t k = 0; k < kept_edges.size(); ++k) {
        out.edge_attrs.row(static_cast<Index>(k)) = g.edge_attrs.row(kept_edges[k]);
    }
    return out;
}

void GraphCollection::validate() const {
    if (graphs.empty()) throw ValidationError("collection contains no graphs");
    const Index size = m();
    if (size < 1) throw ValidationError("graphs must have at least one vertex");
    for (std::size_t k = 0; k < graphs.size(); ++k) {
        const AttributedGraph& g = graphs[k];
        const std::string label = graph_label(k);
        if (g.num_vertices() != size) {
            throw ValidationError(label + " has " + std::to_string(g.num_vertices()) +
                                  " vertices, expected " + std::to_string(size));
        }
        if (g.vertex_dim() != vertex_dim) {
            throw ValidationError(label + " has vertex dimension " +
                                  std::to_string(g.vertex_dim()) + ", expected " +
                                  std::to_string(vertex_dim));
        }
        if (g.edge_dim() != edge_dim) {
            throw ValidationError(label + " has edge dimension " + std::to_string(g.edge_dim()) +
                                  ", expected " + std::to_string(edge_dim));
        }
        try {
            g.validate();
        } catch (const ValidationError& e) {
            throw ValidationError(label + ": " + e.what());
        }
    }
    if (ground_truth) {
        if (ground_truth->shape() != shape()) {
            throw ValidationError("ground truth shape does not match the collection");
        }
        ground_truth->validate();
    }
}

Vector default_dummy_attribute(const std::vector<AttributedGraph>& graphs, Index vertex_dim) {
    double largest = 0.0;
    for (const auto& g : graphs) {
        for (Index v = 0; v < g.num_vertices(); ++v) {
            if (!g.is_dummy[static_cast<std::size_t>(v)]) {
                largest = std::max(largest, g.vertex_attrs.row(v).cwiseAbs().maxCoeff());
            }
        }
    }
    return Vector::Constant(vertex_dim, 10.0 * largest);
}

GraphCollection make_collection(std::vector<AttributedGraph> graphs, Index vertex_dim,
                                Index edge_dim, const std::optional<Vector>& dummy_attr) {
    GraphCollection c;
    c.vertex_dim = vertex_dim;
    c.edge_dim = edge_dim;
    Index size = 0;
    for (const auto& g : graphs) size = std::max(size, g.num_vertices());
    const Vector filler = dummy_attr.value_or(default_dummy_attribute(graphs, vertex_dim));
    for (auto& g : graphs) c.graphs.push_back(pad_with_dummies(g, size, filler));
    c.validate();
    return c;
}

void assign_dummy_attribute(GraphCollection& c, const Vector& dummy_attr) {
    if (dummy_attr.size() != c.vertex_dim) {
        throw DimensionError("dummy attribute has dimension " + std::to_string(dummy_attr.size()) +
                             ", expected " + std::to_string(c.vertex_dim));
    }
    for (auto& g : c.graphs) {
        for (Index v = 0; v < g.num_vertices(); ++v) {
            if (g.is_dummy[static_cast<std::size_t>(v)]) g.vertex_attrs.row(v) = dummy_attr.transpose();
        }
    }
}

std::string collection_to_json(const GraphCollection& c) {
    Json doc;
    doc["spec_version"] = json_io::kSpecVersion;
    doc["n"] = c.n();
    doc["m"] = c.m();
    doc["d_v"] = c.vertex_dim;
    doc["d_e"] = c.edge_dim;
    Json graphs = Json::array();
    for (const auto& g : c.graphs) {
        Json entry;
        entry["vertex_attrs"] = matrix_rows(g.vertex_attrs);
        Json edges = Json::array();
        for (const auto& e : g.edges) edges.push_back(Json::array({e.source, e.target}));
        entry["edges"] = std::move(edges);
        entry["edge_attrs"] = matrix_rows(g.edge_attrs);
        Json mask = Json::array();
        for (bool flag : g.is_dummy) mask.push_back(flag ? 1 : 0);
        entry["dummy_mask"] = std::move(mask);
        graphs.push_back(std::move(entry));
    }
    doc["graphs"] = std::move(graphs);
    if (c.ground_truth) doc["ground_truth"] = json_io::bulk_to_json(*c.ground_truth);
    return json_io::pretty(doc);
}

GraphCollection collection_from_json(std::string_view text) {
    const Json doc = json_io::parse_document(text);
    if (!doc.is_object()) throw ParseError("dataset document must be a JSON object");
    const Index n = json_io::require_count(doc, "n", "");
    const Index m = json_io::require_count(doc, "m", "");
    GraphCollection c;
    c.vertex_dim = json_io::require_count(doc, "d_v", "");
    c.edge_dim = json_io::require_count(doc, "d_e", "");
    if (n == 0) throw ValidationError("field 'n': collection contains no graphs");
    if (m == 0) throw ValidationError("field 'm': graphs must have at least one vertex");

    const Json& graphs = json_io::require(doc, "graphs", "");
    if (!graphs.is_array()) throw ParseError("field 'graphs': expected an array");
    if (static_cast<Index>(graphs.size()) != n) {
        throw ValidationError("field 'graphs': declares n=" + std::to_string(n) + " but lists " +
                              std::to_string(graphs.size()) + " graphs");
    }
    for (std::size_t k = 0; k < graphs.size(); ++k) {
        c.graphs.push_back(graph_from_json(graphs[k], m, c.vertex_dim, c.edge_dim, graph_label(k)));
    }
    if (const auto it = doc.find("ground_truth"); it != doc.end() && !it->is_null()) {
        c.ground_truth = json_io::bulk_from_json(*it, {n, m}, "ground_truth");
    }
    c.validate();
    return c;
}

void save_collection(const GraphCollection& c, const std::filesystem::path& path) {
    c.validate();
    json_io::write_text_file(path, collection_to_json(c));
}

GraphCollection load_collection(const std::filesystem::path& path) {
    const std::string text = json_io::read_text_file(path);
    try {
        return collection_from_json(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

}  // namespace kmgm
