#include "kmgm/errors.hpp"
#include "kmgm/metrics.hpp"
#include "kmgm/synth.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

namespace kmgm {
namespace {

SynthSpec small_spec(std::uint64_t seed = 1) {
    SynthSpec s;
    s.m = 12;
    s.edge_prob = 0.3;
    s.attr_dim = 3;
    s.n_copies = 4;
    s.seed = seed;
    return s;
}

std::vector<Index> degrees(const AttributedGraph& g) {
    std::vector<Index> d(static_cast<std::size_t>(g.num_vertices()), 0);
    for (const Edge& e : g.edges) {
        ++d[static_cast<std::size_t>(e.source)];
        ++d[static_cast<std::size_t>(e.target)];
    }
    return d;
}

TEST(SynthSpec, DefaultsAndValidation) {
    const SynthSpec s;
    EXPECT_EQ(s.m, 50);
    EXPECT_EQ(s.edge_prob, 0.05);
    EXPECT_EQ(s.attr_dim, 10);
    EXPECT_EQ(s.n_copies, 10);
    SynthSpec bad = s;
    bad.m = 0;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = s;
    bad.edge_prob = 1.5;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = s;
    bad.noise_sigma = -0.1;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = s;
    bad.max_removed = 50;
    EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Generate, DeterministicForFixedSeed) {
    SynthSpec s = small_spec(3);
    s.noise_sigma = 0.1;
    s.max_removed = 2;
    EXPECT_EQ(generate(s), generate(s));
    SynthSpec other = s;
    other.seed = 4;
    EXPECT_NE(generate(s), generate(other));
}

TEST(Generate, NoiselessCopiesAreIsomorphicToBase) {
    const GraphCollection c = generate(small_spec(5));
    ASSERT_TRUE(c.ground_truth.has_value());
    const BulkPermutation& truth = *c.ground_truth;
    EXPECT_TRUE(is_cycle_consistent(truth));
    EXPECT_EQ(score(truth, truth).f1, 1.0);
    const AttributedGraph& base = c.graphs[0];
    std::multiset<Index> base_degrees;
    for (Index d : degrees(base)) base_degrees.insert(d);
    for (Index k = 1; k < c.n(); ++k) {
        const AttributedGraph& copy = c.graphs[static_cast<std::size_t>(k)];
        const auto map = truth.block_map(0, k);
        std::set<std::pair<Index, Index>> mapped;
        for (const Edge& e : base.edges) {
            const Index s = map[static_cast<std::size_t>(e.source)];
            const Index t = map[static_cast<std::size_t>(e.target)];
            mapped.insert({std::min(s, t), std::max(s, t)});
        }
        std::set<std::pair<Index, Index>> actual;
        for (const Edge& e : copy.edges) actual.insert({std::min(e.source, e.target), std::max(e.source, e.target)});
        EXPECT_EQ(mapped, actual);
        for (Index a = 0; a < c.m(); ++a)
            EXPECT_EQ(copy.vertex_attrs.row(map[static_cast<std::size_t>(a)]), base.vertex_attrs.row(a));
        std::multiset<Index> copy_degrees;
        for (Index d : degrees(copy)) copy_degrees.insert(d);
        EXPECT_EQ(copy_degrees, base_degrees);
    }
}

TEST(Generate, AttributesAreUnitUniform) {
    SynthSpec s = small_spec(6);
    s.m = 40;
    const GraphCollection c = generate(s);
    EXPECT_GE(c.graphs[0].vertex_attrs.minCoeff(), 0.0);
    EXPECT_LT(c.graphs[0].vertex_attrs.maxCoeff(), 1.0);
    EXPECT_NEAR(c.graphs[0].vertex_attrs.mean(), 0.5, 0.1);
}

TEST(Generate, EdgeCountNearExpectation) {
    SynthSpec s;
    s.n_copies = 1;
    const double pairs = 50.0 * 49.0 / 2.0;
    const double mean = s.edge_prob * pairs;
    const double sd = std::sqrt(pairs * s.edge_prob * (1.0 - s.edge_prob));
    double total = 0.0;
    const int seeds = 50;
    for (int seed = 0; seed < seeds; ++seed) {
        s.seed = static_cast<std::uint64_t>(seed);
        total += static_cast<double>(generate(s).graphs[0].num_edges());
    }
    EXPECT_NEAR(total / seeds, mean, 3.0 * sd / std::sqrt(static_cast<double>(seeds)));
}

TEST(Generate, NoiseSparesTheBaseGraph) {
    SynthSpec clean = small_spec(7);
    SynthSpec noisy = clean;
    noisy.noise_sigma = 0.3;
    const GraphCollection a = generate(clean);
    const GraphCollection b = generate(noisy);
    EXPECT_EQ(a.graphs[0], b.graphs[0]);
    EXPECT_EQ(a.ground_truth, b.ground_truth);
    EXPECT_NE(a.graphs[1].vertex_attrs, b.graphs[1].vertex_attrs);
    EXPECT_EQ(a.graphs[1].edges, b.graphs[1].edges);
}

TEST(Generate, RemovedVerticesBecomeUnmatchedDummies) {
    SynthSpec s = small_spec(8);
    s.n_copies = 8;
    s.max_removed = 4;
    const GraphCollection c = generate(s);
    const BulkPermutation& truth = *c.ground_truth;
    EXPECT_TRUE(is_cycle_consistent(truth));
    const Vector far = default_dummy_attribute(c.graphs, c.vertex_dim);
    EXPECT_GT(far.minCoeff(), 5.0);
    Index removed = 0;
    for (Index v = 0; v < c.m(); ++v) EXPECT_FALSE(c.is_dummy(0, v));
    for (Index k = 1; k < c.n(); ++k) {
        const AttributedGraph& g = c.graphs[static_cast<std::size_t>(k)];
        for (const Edge& e : g.edges) {
            EXPECT_FALSE(c.is_dummy(k, e.source));
            EXPECT_FALSE(c.is_dummy(k, e.target));
        }
        for (Index v = 0; v < c.m(); ++v) {
            if (!c.is_dummy(k, v)) continue;
            ++removed;
            EXPECT_EQ(Vector(g.vertex_attrs.row(v).transpose()), far);
            for (Index j = 0; j < c.n(); ++j)
                for (Index b = 0; b < c.m(); ++b)
                    if (j != k) EXPECT_FALSE(truth.at(k, j, v, b));
        }
    }
    EXPECT_GT(removed, 0);
    EXPECT_LE(removed, 4 * 7);
}

TEST(RepeatSeed, DistinctAndStable) {
    std::set<std::uint64_t> seen;
    for (int r = 0; r < 100; ++r) seen.insert(repeat_seed(9, r));
    EXPECT_EQ(seen.size(), 100u);
    EXPECT_EQ(repeat_seed(9, 3), repeat_seed(9, 3));
    EXPECT_NE(repeat_seed(9, 3), repeat_seed(10, 3));
}

SweepOptions quick_options() {
    SweepOptions o;
    o.repeats = 3;
    return o;
}

TEST(Sweep, RowsCoverEveryGridPointAndMethod) {
    const auto rows = noise_sweep(small_spec(10), {0.0, 0.05}, quick_options());
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].method, kSolverMethod);
    EXPECT_EQ(rows[1].method, kBaselineMethod);
    EXPECT_EQ(rows[2].sigma, 0.05);
    for (const auto& r : rows) {
        EXPECT_EQ(r.repeats, 3);
        EXPECT_GE(r.f1_mean, 0.0);
        EXPECT_LE(r.f1_mean, 1.0);
    }
    EXPECT_EQ(rows[0].f1_mean, 1.0);
}

TEST(Sweep, RemovalZeroColumnEqualsNoiseSweep) {
    const SynthSpec s = small_spec(11);
    const auto noise = noise_sweep(s, {0.1}, quick_options());
    const auto removal = removal_sweep(s, {0, 3}, {0.1}, quick_options());
    ASSERT_EQ(removal.size(), 4u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(removal[k].method, noise[k].method);
        EXPECT_EQ(removal[k].f1_mean, noise[k].f1_mean);
        EXPECT_EQ(removal[k].f1_std, noise[k].f1_std);
    }
    EXPECT_EQ(removal[2].max_removed, 3);
}

TEST(Sweep, RejectsBadRepeats) {
    SweepOptions o;
    o.repeats = 0;
    EXPECT_THROW((void)noise_sweep(small_spec(), {0.0}, o), ValidationError);
}

TEST(Sweep, CsvLayout) {
    std::vector<SweepRow> rows = {{0.25, 5, kSolverMethod, 0.9, 0.01, 20},
                                  {0.25, 5, kBaselineMethod, 0.5, 0.02, 20}};
    std::istringstream csv(sweep_to_csv(rows));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "sigma,max_removed,method,f1_mean,f1_std,repeats");
    std::getline(csv, line);
    EXPECT_EQ(line, "0.25,5,solver,0.900000,0.010000,20");
    std::getline(csv, line);
    EXPECT_EQ(line, "0.25,5,matcheig_vertex,0.500000,0.020000,20");
}

TEST(RunTrial, NoiselessTrialIsPerfect) {
    SweepOptions o;
    const TrialOutcome t = run_trial(small_spec(12), o);
    EXPECT_EQ(t.solver.f1, 1.0);
    EXPECT_EQ(t.baseline.f1, 1.0);
    EXPECT_TRUE(t.solver_consistent);
    EXPECT_TRUE(t.trace.converged);
}

}  // namespace
}  // namespace kmgm
