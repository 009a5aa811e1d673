#include "json_io.hpp"
#include "kmgm/errors.hpp"
#include "kmgm/graphs.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

#include <gtest/gtest.h>

#include <fstream>

namespace kmgm {
namespace {

AttributedGraph triangle_with_tail() {
    AttributedGraph g;
    g.vertex_attrs = (Matrix(4, 2) << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8).finished();
    g.edges = {{0, 1}, {1, 2}, {2, 0}, {2, 3}};
    g.edge_attrs = (Matrix(4, 1) << 1.0, 2.0, 3.0, 4.0).finished();
    g.is_dummy.assign(4, false);
    return g;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

TEST(AttributedGraph, ValidateCatchesBadEdges) {
    AttributedGraph g = triangle_with_tail();
    EXPECT_NO_THROW(g.validate());
    g.edges[0] = {0, 4};
    EXPECT_THROW(g.validate(), ValidationError);
    g = triangle_with_tail();
    g.edge_attrs.conservativeResize(3, Eigen::NoChange);
    EXPECT_THROW(g.validate(), ValidationError);
    g = triangle_with_tail();
    g.is_dummy[3] = true;
    EXPECT_THROW(g.validate(), ValidationError);
    g = triangle_with_tail();
    g.vertex_attrs(0, 0) = std::nan("");
    EXPECT_THROW(g.validate(), ValidationError);
}

TEST(PadWithDummies, NoOpWhenAlreadyFull) {
    const AttributedGraph g = triangle_with_tail();
    EXPECT_EQ(pad_with_dummies(g, 4, Vector::Constant(2, 9.0)), g);
}

TEST(PadWithDummies, AppendsUnconnectedDummies) {
    AttributedGraph g;
    g.vertex_attrs = (Matrix(2, 1) << 1.0, 2.0).finished();
    g.edges = {{0, 1}};
    g.edge_attrs = Matrix::Ones(1, 3);
    g.is_dummy = {false, false};
    const AttributedGraph padded = pad_with_dummies(g, 4, Vector::Constant(1, 20.0));
    EXPECT_EQ(padded.num_vertices(), 4);
    EXPECT_EQ(padded.edges, g.edges);
    EXPECT_EQ(padded.is_dummy, (std::vector<bool>{false, false, true, true}));
    EXPECT_EQ(padded.vertex_attrs(3, 0), 20.0);
    EXPECT_EQ(padded.vertex_attrs.topRows(2), g.vertex_attrs);
    EXPECT_NO_THROW(padded.validate());
}

TEST(PadWithDummies, RejectsShrinkingAndBadAttribute) {
    const AttributedGraph g = triangle_with_tail();
    EXPECT_THROW((void)pad_with_dummies(g, 3, Vector::Zero(2)), ValidationError);
    EXPECT_THROW((void)pad_with_dummies(g, 6, Vector::Zero(3)), DimensionError);
}

TEST(PadWithDummies, StripIsInverse) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const AttributedGraph g = oracle::random_graph(rng, 3 + trial, 2, 3, 0.4);
        EXPECT_EQ(strip_dummies(pad_with_dummies(g, 10 + trial, Vector::Constant(2, 5.0))), g);
    }
}

TEST(StripDummies, RenumbersRemainingVertices) {
    AttributedGraph g = triangle_with_tail();
    g.edges = {{0, 2}, {2, 3}};
    g.edge_attrs = (Matrix(2, 1) << 1.0, 2.0).finished();
    g.is_dummy = {false, true, false, false};
    const AttributedGraph s = strip_dummies(g);
    EXPECT_EQ(s.num_vertices(), 3);
    EXPECT_EQ(s.edges, (std::vector<Edge>{{0, 1}, {1, 2}}));
    EXPECT_EQ(s.vertex_attrs.row(1), g.vertex_attrs.row(2));
}

TEST(DummyAttribute, TenTimesLargestMagnitude) {
    AttributedGraph g = triangle_with_tail();
    g.vertex_attrs(1, 1) = -3.0;
    const Vector v = default_dummy_attribute({g}, 2);
    EXPECT_EQ(v, Vector::Constant(2, 30.0));
}

TEST(MakeCollection, PadsToLargestGraph) {
    std::mt19937_64 rng(32);
    std::vector<AttributedGraph> graphs = {oracle::random_graph(rng, 3, 2, 1, 0.5),
                                           oracle::random_graph(rng, 5, 2, 1, 0.5)};
    const GraphCollection c = make_collection(graphs, 2, 1);
    EXPECT_EQ(c.shape(), (BulkShape{2, 5}));
    EXPECT_TRUE(c.is_dummy(0, 4));
    EXPECT_FALSE(c.is_dummy(1, 4));
    const Vector expected = default_dummy_attribute(graphs, 2);
    EXPECT_EQ(Vector(c.graphs[0].vertex_attrs.row(3).transpose()), expected);
}

TEST(MakeCollection, PaddingPreservesOriginalSubgraph) {
    std::mt19937_64 rng(33);
    std::vector<AttributedGraph> graphs = {oracle::random_graph(rng, 4, 3, 2, 0.6),
                                           oracle::random_graph(rng, 7, 3, 2, 0.6)};
    const GraphCollection c = make_collection(graphs, 3, 2);
    for (std::size_t k = 0; k < graphs.size(); ++k) {
        EXPECT_EQ(strip_dummies(c.graphs[k]), graphs[k]);
        for (const Edge& e : c.graphs[k].edges) {
            EXPECT_FALSE(c.is_dummy(static_cast<Index>(k), e.source));
            EXPECT_FALSE(c.is_dummy(static_cast<Index>(k), e.target));
        }
    }
}

TEST(MakeCollection, RejectsEmptyAndMismatchedDimensions) {
    EXPECT_THROW((void)make_collection({}, 2, 1), ValidationError);
    std::mt19937_64 rng(34);
    std::vector<AttributedGraph> graphs = {oracle::random_graph(rng, 3, 2, 1, 0.5),
                                           oracle::random_graph(rng, 3, 3, 1, 0.5)};
    EXPECT_THROW((void)make_collection(graphs, 2, 1), ValidationError);
}

TEST(CollectionIo, RoundTripIsLossless) {
    testing::TempDir dir;
    std::mt19937_64 rng(35);
    std::vector<AttributedGraph> graphs;
    for (Index k = 0; k < 4; ++k) graphs.push_back(oracle::random_graph(rng, 3 + k, 3, 2, 0.5));
    GraphCollection c = make_collection(graphs, 3, 2);
    UniverseAssignment u;
    u.rank = 8;
    for (Index k = 0; k < 4; ++k) {
        std::vector<Index> labels = oracle::random_permutation(rng, 8);
        labels.resize(6);
        u.labels.push_back(labels);
    }
    c.ground_truth = expand(u);
    save_collection(c, dir / "c.json");
    EXPECT_EQ(load_collection(dir / "c.json"), c);
    EXPECT_EQ(collection_from_json(collection_to_json(c)), c);
}

TEST(CollectionIo, SavingIsDeterministic) {
    std::mt19937_64 rng(36);
    const GraphCollection c = oracle::random_collection(rng, 3, 4, 2, 2, 0.5);
    EXPECT_EQ(collection_to_json(c), collection_to_json(c));
}

TEST(CollectionIo, MismatchedVertexDimensionIsValidationError) {
    std::mt19937_64 rng(37);
    const GraphCollection c = oracle::random_collection(rng, 2, 3, 2, 1, 0.5);
    json_io::Json doc = json_io::Json::parse(collection_to_json(c));
    doc["graphs"][1]["vertex_attrs"][0] = {1.0, 2.0, 3.0};
    try {
        (void)collection_from_json(doc.dump());
        FAIL() << "expected an error";
    } catch (const ParseError&) {
        FAIL() << "expected a validation error, got a parse error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("vertex_attrs"), std::string::npos) << e.what();
    }
}

TEST(CollectionIo, EmptyCollectionRejected) {
    const std::string text = R"({"n": 0, "m": 3, "d_v": 1, "d_e": 1, "graphs": []})";
    EXPECT_THROW((void)collection_from_json(text), ValidationError);
}

TEST(CollectionIo, MalformedTextNamesTheLocation) {
    testing::TempDir dir;
    write_file(dir / "bad.json", "{\n  \"n\": 2,\n  \"m\": oops\n}\n");
    try {
        (void)load_collection(dir / "bad.json");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("bad.json"), std::string::npos) << what;
        EXPECT_NE(what.find("line 3"), std::string::npos) << what;
    }
}

TEST(CollectionIo, WrongFieldTypeNamesTheField) {
    std::mt19937_64 rng(38);
    const GraphCollection c = oracle::random_collection(rng, 2, 3, 2, 1, 0.9);
    json_io::Json doc = json_io::Json::parse(collection_to_json(c));
    doc["graphs"][0]["edges"] = "none";
    try {
        (void)collection_from_json(doc.dump());
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("edges"), std::string::npos) << e.what();
    }
}

TEST(CollectionIo, InconsistentGroundTruthRejected) {
    std::mt19937_64 rng(39);
    GraphCollection c = oracle::random_collection(rng, 2, 2, 1, 1, 0.5);
    c.ground_truth = BulkPermutation::identity(2, 2);
    json_io::Json doc = json_io::Json::parse(collection_to_json(c));
    doc["ground_truth"][0][2] = 1;
    EXPECT_THROW((void)collection_from_json(doc.dump()), ValidationError);
}

TEST(CollectionIo, MissingFileIsAnError) {
    EXPECT_THROW((void)load_collection("/nonexistent/kmgm/file.json"), Error);
}

}  // namespace
}  // namespace kmgm
