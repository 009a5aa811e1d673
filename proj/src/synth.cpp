#include "kmgm/synth.hpp"

#include "kmgm/errors.hpp"
#include "kmgm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

namespace kmgm {
namespace {

// Independent random streams so that, for a fixed seed, the base graph and
// the shuffles do not depend on the noise level or on the removal budget.
enum class Stream : std::uint32_t { base = 1, shuffle = 2, noise = 3, removal = 4 };

std::mt19937_64 make_stream(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

AttributedGraph random_base_graph(const SynthSpec& spec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    AttributedGraph g;
    g.vertex_attrs.resize(spec.m, spec.attr_dim);
    for (Index v = 0; v < spec.m; ++v) {
        for (Index k = 0; k < spec.attr_dim; ++k) g.vertex_attrs(v, k) = unit(rng);
    }
    std::bernoulli_distribution coin(spec.edge_prob);
    for (Index a = 0; a < spec.m; ++a) {
        for (Index b = a + 1; b < spec.m; ++b) {
            if (coin(rng)) g.edges.push_back({a, b});
        }
    }
    g.edge_attrs.resize(g.num_edges(), spec.attr_dim);
    for (Index e = 0; e < g.num_edges(); ++e) {
        for (Index k = 0; k < spec.attr_dim; ++k) g.edge_attrs(e, k) = unit(rng);
    }
    g.is_dummy.assign(static_cast<std::size_t>(spec.m), false);
    return g;
}

// Copy vertex relabel[a] is base vertex a.
AttributedGraph relabel(const AttributedGraph& base, const std::vector<Index>& relabel) {
    AttributedGraph g = base;
    for (Index a = 0; a < base.num_vertices(); ++a) {
        g.vertex_attrs.row(relabel[static_cast<std::size_t>(a)]) = base.vertex_attrs.row(a);
    }
    for (auto& e : g.edges) {
        e = {relabel[static_cast<std::size_t>(e.source)], relabel[static_cast<std::size_t>(e.target)]};
    }
    return g;
}

void add_noise(AttributedGraph& g, double sigma, std::mt19937_64& rng) {
    std::normal_distribution<double> noise(0.0, sigma);
    for (Index r = 0; r < g.vertex_attrs.rows(); ++r) {
        for (Index k = 0; k < g.vertex_attrs.cols(); ++k) g.vertex_attrs(r, k) += noise(rng);
    }
    for (Index r = 0; r < g.edge_attrs.rows(); ++r) {
        for (Index k = 0; k < g.edge_attrs.cols(); ++k) g.edge_attrs(r, k) += noise(rng);
    }
}

// Disconnects a random number of vertices and flags them as dummies.
void remove_vertices(AttributedGraph& g, Index max_removed, std::mt19937_64& rng) {
    std::uniform_int_distribution<Index> how_many(0, max_removed);
    const Index count = how_many(rng);
    std::vector<Index> order(static_cast<std::size_t>(g.num_vertices()));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (Index k = 0; k < count; ++k) g.is_dummy[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = true;

    std::vector<Edge> edges;
    std::vector<Index> kept;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [s, t] = g.edges[e];
        if (!g.is_dummy[static_cast<std::size_t>(s)] && !g.is_dummy[static_cast<std::size_t>(t)]) {
            edges.push_back(g.edges[e]);
            kept.push_back(static_cast<Index>(e));
        }
    }
    Matrix attrs(static_cast<Index>(kept.size()), g.edge_dim());
    for (std::size_t k = 0; k < kept.size(); ++k) attrs.row(static_cast<Index>(k)) = g.edge_attrs.row(kept[k]);
    g.edges = std::move(edges);
    g.edge_attrs = std::move(attrs);
}

double mean(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double mu = mean(values);
    double sq = 0.0;
    for (double v : values) sq += (v - mu) * (v - mu);
    return std::sqrt(sq / static_cast<double>(values.size() - 1));
}

void append_grid_point(const SynthSpec& spec, const SweepOptions& options,
                       std::vector<SweepRow>& rows) {
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(options.repeats));
    parallel_for(0, outcomes.size(), [&](std::size_t r) {
        SynthSpec trial = spec;
        trial.seed = repeat_seed(spec.seed, static_cast<int>(r));
        outcomes[r] = run_trial(trial, options);
    });
    std::vector<double> solver_f1;
    std::vector<double> baseline_f1;
    for (const auto& o : outcomes) {
        solver_f1.push_back(o.solver.f1);
        baseline_f1.push_back(o.baseline.f1);
    }
    rows.push_back({spec.noise_sigma, spec.max_removed, kSolverMethod, mean(solver_f1),
                    sample_std(solver_f1), options.repeats});
    rows.push_back({spec.noise_sigma, spec.max_removed, kBaselineMethod, mean(baseline_f1),
                    sample_std(baseline_f1), options.repeats});
}

}  // namespace

void SynthSpec::validate() const {
    if (m < 1) throw ValidationError("synth: m must be >= 1");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw ValidationError("synth: p must be in [0, 1]");
    if (attr_dim < 1) throw ValidationError("synth: attribute dimension must be >= 1");
    if (n_copies < 1) throw ValidationError("synth: copies must be >= 1");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw ValidationError("synth: sigma must be finite and >= 0");
    }
    if (max_removed < 0 || max_removed >= m) {
        throw ValidationError("synth: max_removed must be in [0, m)");
    }
}

GraphCollection generate(const SynthSpec& spec) {
    spec.validate();
    auto base_rng = make_stream(spec.seed, Stream::base);
    auto shuffle_rng = make_stream(spec.seed, Stream::shuffle);
    auto noise_rng = make_stream(spec.seed, Stream::noise);
    auto removal_rng = make_stream(spec.seed, Stream::removal);

    const AttributedGraph base = random_base_graph(spec, base_rng);
    UniverseAssignment universe;
    universe.rank = spec.m;
    std::vector<AttributedGraph> graphs{base};
    std::vector<Index> identity(static_cast<std::size_t>(spec.m));
    std::iota(identity.begin(), identity.end(), Index{0});
    universe.labels.push_back(identity);

    for (Index c = 1; c < spec.n_copies; ++c) {
        std::vector<Index> order = identity;
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        AttributedGraph copy = relabel(base, order);
        std::vector<Index> labels(static_cast<std::size_t>(spec.m));
        for (Index a = 0; a < spec.m; ++a) labels[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])] = a;
        universe.labels.push_back(std::move(labels));

        if (spec.noise_sigma > 0.0) add_noise(copy, spec.noise_sigma, noise_rng);
        if (spec.max_removed > 0) remove_vertices(copy, spec.max_removed, removal_rng);
        graphs.push_back(std::move(copy));
    }

    GraphCollection c = make_collection(std::move(graphs), spec.attr_dim, spec.attr_dim);
    assign_dummy_attribute(c, default_dummy_attribute(c.graphs, c.vertex_dim));
    BulkPermutation truth = expand(universe);
    const Index m = spec.m;
    for (Index r = 0; r < truth.size(); ++r) {
        if (!c.is_dummy(r / m, r % m)) continue;
        for (Index col = 0; col < truth.size(); ++col) {
            if (r / m == col / m) continue;
            truth.set(r, col, false);
            truth.set(col, r, false);
        }
    }
    c.ground_truth = std::move(truth);
    c.validate();
    return c;
}

std::uint64_t repeat_seed(std::uint64_t base, int repeat) {
    // splitmix64 finalizer
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(repeat + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TrialOutcome run_trial(const SynthSpec& spec, const SweepOptions& options) {
    const GraphCollection c = generate(spec);
    const Index rank = options.rank.value_or(c.m());
    SolverConfig config = options.solver;
    config.projector.rank = rank;

    const BulkVertexAffinity kv = build_vertex_affinity(c, options.vertex_kernel);
    const BulkFeatureArray phi = build_phi(c, options.edge_kernel);
    SolveResult solved = solve(kv, phi, config);
    const BulkPermutation baseline = match_eig(kv.mat, c.shape(), rank);

    TrialOutcome out;
    out.solver = score(strip_dummy_matches(solved.matching, c), *c.ground_truth);
    out.baseline = score(strip_dummy_matches(baseline, c), *c.ground_truth);
    out.solver_consistent = is_cycle_consistent(solved.matching).consistent;
    out.baseline_consistent = is_cycle_consistent(baseline).consistent;
    out.trace = std::move(solved.trace);
    return out;
}

std::vector<SweepRow> noise_sweep(const SynthSpec& spec, const std::vector<double>& sigmas,
                                  const SweepOptions& options) {
    return removal_sweep(spec, {spec.max_removed}, sigmas, options);
}

std::vector<SweepRow> removal_sweep(const SynthSpec& spec, const std::vector<Index>& max_removed,
                                    const std::vector<double>& sigmas,
                                    const SweepOptions& options) {
    if (options.repeats < 1) throw ValidationError("sweep: repeats must be >= 1");
    std::vector<SweepRow> rows;
    for (Index removed : max_removed) {
        for (double sigma : sigmas) {
            SynthSpec point = spec;
            point.max_removed = removed;
            point.noise_sigma = sigma;
            point.validate();
            append_grid_point(point, options, rows);
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "sigma,max_removed,method,f1_mean,f1_std,repeats\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%.10g,%lld,%s,%.6f,%.6f,%d\n", r.sigma,
                      static_cast<long long>(r.max_removed), r.method.c_str(), r.f1_mean, r.f1_std,
                      r.repeats);
        out += line;
    }
    return out;
}

}  // namespace kmgm
