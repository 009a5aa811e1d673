#pragma once

#include "kmgm/graphs.hpp"
#include "kmgm/kernels.hpp"
#include "kmgm/metrics.hpp"
#include "kmgm/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmgm {

/// Erdos-Renyi benchmark: one base graph with U(0, 1) vertex and edge
/// attributes plus n_copies - 1 shuffled copies of it.
struct SynthSpec {
    Index m = 50;
    double edge_prob = 0.05;
    Index attr_dim = 10;
    Index n_copies = 10;  // total number of graphs, base included
    double noise_sigma = 0.0;  // standard deviation of the attribute noise
    Index max_removed = 0;  // per copy, uniform in {0, ..., max_removed}
    std::uint64_t seed = 0;

    void validate() const;
};

/// Graph 0 is the base graph. Every copy gets a random vertex relabeling,
/// additive N(0, sigma^2) noise on all of its vertex and edge attributes,
/// and a random number of removed vertices: those lose their edges and become
/// dummies. The ground truth maps every copy vertex back to its base vertex;
/// removed vertices are unmatched.
GraphCollection generate(const SynthSpec& spec);

/// Seed of repetition `repeat` of a sweep started from `base`.
std::uint64_t repeat_seed(std::uint64_t base, int repeat);

struct SweepOptions {
    int repeats = 20;
    KernelSpec vertex_kernel;  // linear by default
    KernelSpec edge_kernel;
    SolverConfig solver;
    /// Universe rank for solver and baseline; defaults to m.
    std::optional<Index> rank;
};

/// One repetition: the solver and the vertex-only MatchEIG baseline on the
/// same generated collection.
struct TrialOutcome {
    Scores solver;
    Scores baseline;
    SolveTrace trace;
    bool solver_consistent = false;
    bool baseline_consistent = false;
};

TrialOutcome run_trial(const SynthSpec& spec, const SweepOptions& options);

inline constexpr const char* kSolverMethod = "solver";
inline constexpr const char* kBaselineMethod = "matcheig_vertex";

struct SweepRow {
    double sigma = 0.0;
    Index max_removed = 0;
    std::string method;
    double f1_mean = 0.0;
    double f1_std = 0.0;  // sample standard deviation over repeats
    int repeats = 0;
};

/// Mean F1 of solver and baseline for every noise level. Repetition r of
/// every grid point uses repeat_seed(spec.seed, r).
std::vector<SweepRow> noise_sweep(const SynthSpec& spec, const std::vector<double>& sigmas,
                                  const SweepOptions& options);

/// noise_sweep() for every max_removed value.
std::vector<SweepRow> removal_sweep(const SynthSpec& spec, const std::vector<Index>& max_removed,
                                    const std::vector<double>& sigmas,
                                    const SweepOptions& options);

/// Header `sigma,max_removed,method,f1_mean,f1_std,repeats`.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace kmgm
