#pragma once

#include "kmgm/consistency.hpp"
#include "kmgm/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace kmgm {

// ---------------------------------------------------------------------------
// Linear assignment
// ---------------------------------------------------------------------------

/// Optimal assignment of a square matrix: result[row] = column. Among
/// optimal assignments the lexicographically smallest one is returned.
/// Throws DimensionError for non-square input and ValidationError for
/// non-finite entries.
std::vector<Index> solve_assignment(const Matrix& weights, bool maximize);

/// solve_assignment() as a 0/1 permutation matrix.
Matrix hungarian(const Matrix& weights, bool maximize);

// ---------------------------------------------------------------------------
// Bulk projectors
// ---------------------------------------------------------------------------

enum class ProjectorKind { matcheig, gpow, msync };

ProjectorKind parse_projector_kind(std::string_view name);
std::string to_string(ProjectorKind kind);

struct ProjectorSpec {
    ProjectorKind kind = ProjectorKind::matcheig;
    Index rank = 1;
    double tol = 1e-3;  // gpow stopping threshold on |Z_{t-1} - Z_t|_F
    int max_iter = 100;  // gpow iteration cap

    void validate() const;
};

/// Eigenvectors of the `rank` algebraically largest eigenvalues of
/// (x + x^T) / 2, each scaled by sqrt(max(lambda, 0)). Returns nm x rank.
Matrix spectral_embedding(const Matrix& x, Index rank);

/// Spectral embedding followed by one assignment per graph pair:
/// block (i, j) = hungarian(U_i U_j^T), block (j, i) its transpose,
/// identity diagonal. Cycle consistency is not guaranteed.
BulkPermutation match_eig(const Matrix& x, BulkShape shape, Index rank);

struct ProjectionResult {
    BulkPermutation estimate;
    int iterations = 0;
    bool converged = true;
};

/// Generalized power iteration Z_t = match_eig(x Z_{t-1}) started from
/// match_eig(x). Hitting the iteration cap is reported through
/// `converged = false`, not an error.
ProjectionResult gpow(const Matrix& x, BulkShape shape, const ProjectorSpec& spec);

/// Synchronization against graph 0: X_i = hungarian(U_i U_0^T), X_0 = I,
/// and the output is expand({X_i}), which is always cycle-consistent.
BulkPermutation msync(const Matrix& x, BulkShape shape, Index rank);

/// Dispatches on spec.kind.
ProjectionResult project(const Matrix& x, BulkShape shape, const ProjectorSpec& spec);

}  // namespace kmgm
