#pragma once

#include "kmgm/affinity.hpp"
#include "kmgm/consistency.hpp"
#include "kmgm/projectors.hpp"

#include <vector>

namespace kmgm {

struct SolverConfig {
    double tol = 1e-2;  // stop once |X_{t+1} - X_t|_F < tol
    int max_iter = 100;
    /// Projection onto consistent bulk permutations; its rank is the
    /// universe size.
    ProjectorSpec projector;

    void validate() const;
};

struct SolveTrace {
    /// Objective of every projected iterate X_1, X_2, ...
    std::vector<double> objective_values;
    /// |X_{t+1} - X_t|_F for the same iterations (X_0 = 0).
    std::vector<double> step_deltas;
    int iterations_run = 0;
    bool converged = false;
    /// Inner projector runs that hit their own iteration cap (gpow only).
    int unconverged_projections = 0;

    /// True when every step satisfies J(X_{t+1}) >= J(X_t) - rel_slack |J(X_t)|.
    [[nodiscard]] bool is_monotone(double rel_slack = 1e-9) const;
};

struct SolveResult {
    BulkPermutation matching;
    SolveTrace trace;
};

/// J(X) = <phi (.) X, X (.) phi> + tr(K^v X). Only the diagonal blocks of
/// phi are touched, so the cost is O(D n^2 m^3) for dense x.
double objective(const Matrix& x, const BulkVertexAffinity& kv, const BulkFeatureArray& phi);
double objective(const BulkPermutation& x, const BulkVertexAffinity& kv,
                 const BulkFeatureArray& phi);

/// grad J(X) = K^v + (phi (.) X) * phi^T + phi^T * (X (.) phi), block by block.
Matrix gradient(const Matrix& x, const BulkVertexAffinity& kv, const BulkFeatureArray& phi);

/// The same two quantities evaluated with the dense array algebra on the
/// full D x nm x nm array. Reference path for small problems.
double objective_dense(const Matrix& x, const Matrix& kv, const FeatureArray3& phi);
Matrix gradient_dense(const Matrix& x, const Matrix& kv, const FeatureArray3& phi);

/// Projected power iteration: X_0 = 0, X_{t+1} = project(grad J(X_t)).
SolveResult solve(const BulkVertexAffinity& kv, const BulkFeatureArray& phi,
                  const SolverConfig& config);

/// Builds the affinities of `c` and runs solve().
SolveResult solve(const GraphCollection& c, const KernelSpec& vertex_kernel,
                  const KernelSpec& edge_kernel, const SolverConfig& config);

}  // namespace kmgm
