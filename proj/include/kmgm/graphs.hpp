#pragma once

#include "kmgm/consistency.hpp"
#include "kmgm/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kmgm {

struct Edge {
    Index source = 0;
    Index target = 0;
    bool operator==(const Edge&) const = default;
};

/// Graph with a real attribute vector on every vertex and every edge.
/// Edges are undirected: (i, j) also stands for (j, i) with the same
/// attribute.
struct AttributedGraph {
    Matrix vertex_attrs;  // num_vertices x d_v, one row per vertex
    std::vector<Edge> edges;
    Matrix edge_attrs;  // num_edges x d_e, aligned with `edges`
    std::vector<bool> is_dummy;

    [[nodiscard]] Index num_vertices() const { return vertex_attrs.rows(); }
    [[nodiscard]] Index num_edges() const { return static_cast<Index>(edges.size()); }
    [[nodiscard]] Index vertex_dim() const { return vertex_attrs.cols(); }
    [[nodiscard]] Index edge_dim() const { return edge_attrs.cols(); }

    /// Throws ValidationError on out-of-range endpoints, misaligned attribute
    /// rows, non-finite attributes, or edges touching a dummy vertex.
    void validate() const;

    bool operator==(const AttributedGraph&) const = default;
};

/// Appends unconnected dummy vertices carrying `dummy_attr` until the graph
/// has m vertices.
AttributedGraph pad_with_dummies(const AttributedGraph& g, Index m, const Vector& dummy_attr);

/// Removes every dummy vertex and renumbers the remaining ones.
AttributedGraph strip_dummies(const AttributedGraph& g);

/// n graphs padded to a common size m, with an optional reference matching.
struct GraphCollection {
    std::vector<AttributedGraph> graphs;
    std::optional<BulkPermutation> ground_truth;
    Index vertex_dim = 0;
    Index edge_dim = 0;

    [[nodiscard]] Index n() const { return static_cast<Index>(graphs.size()); }
    [[nodiscard]] Index m() const { return graphs.empty() ? 0 : graphs.front().num_vertices(); }
    [[nodiscard]] BulkShape shape() const { return {n(), m()}; }
    [[nodiscard]] bool is_dummy(Index graph, Index vertex) const {
        return graphs[static_cast<std::size_t>(graph)].is_dummy[static_cast<std::size_t>(vertex)];
    }

    void validate() const;

    bool operator==(const GraphCollection&) const = default;
};

/// Constant vector with every entry 10 * max |attribute| over the non-dummy
/// vertices of `graphs`.
Vector default_dummy_attribute(const std::vector<AttributedGraph>& graphs, Index vertex_dim);

/// Pads every graph to the largest vertex count. Dummies carry `dummy_attr`,
/// or default_dummy_attribute() when none is given.
GraphCollection make_collection(std::vector<AttributedGraph> graphs, Index vertex_dim,
                                Index edge_dim,
                                const std::optional<Vector>& dummy_attr = std::nullopt);

/// Overwrites the vertex attributes of every dummy vertex.
void assign_dummy_attribute(GraphCollection& c, const Vector& dummy_attr);

std::string collection_to_json(const GraphCollection& c);
GraphCollection collection_from_json(std::string_view text);

void save_collection(const GraphCollection& c, const std::filesystem::path& path);
GraphCollection load_collection(const std::filesystem::path& path);

}  // namespace kmgm
