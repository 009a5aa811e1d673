#pragma once

#include "kmgm/graphs.hpp"
#include "kmgm/harray.hpp"
#include "kmgm/kernels.hpp"

#include <vector>

namespace kmgm {

/// Full vertex affinity: block (i, j) is the vertex Gram matrix between
/// graphs i and j.
struct BulkVertexAffinity {
    Matrix mat;
    BulkShape shape;
};

/// Block-diagonal edge feature array of size D x nm x nm. Only the n
/// diagonal D x m x m blocks are stored; everything else is zero.
class BulkFeatureArray {
public:
    BulkFeatureArray() = default;
    /// Every block must have the same depth and size.
    explicit BulkFeatureArray(std::vector<FeatureArray3> blocks);

    [[nodiscard]] BulkShape shape() const { return shape_; }
    [[nodiscard]] Index depth() const { return blocks_.empty() ? 0 : blocks_.front().depth(); }
    [[nodiscard]] const FeatureArray3& block(Index k) const {
        return blocks_[static_cast<std::size_t>(k)];
    }
    [[nodiscard]] const std::vector<FeatureArray3>& blocks() const { return blocks_; }

    /// Materializes the full D x nm x nm array.
    [[nodiscard]] FeatureArray3 dense() const;
    /// Number of stored reals: D * n * m^2.
    [[nodiscard]] std::size_t stored_entries() const;

private:
    BulkShape shape_;
    std::vector<FeatureArray3> blocks_;
};

BulkVertexAffinity build_vertex_affinity(const GraphCollection& c, const KernelSpec& spec);

/// Block k holds the feature vector of edge (a, b) at both [:, a, b] and
/// [:, b, a] and zero at non-edges. A collection without edge attributes
/// yields a zero array of depth 1.
BulkFeatureArray build_phi(const GraphCollection& c, const KernelSpec& spec);

/// Largest n*m for which explicit_edge_affinity agrees to materialize the
/// (nm)^2 x (nm)^2 matrix.
inline constexpr Index kExplicitEdgeAffinityMaxSize = 12;

/// The edge affinity matrix K such that vec(X)^T K vec(X) equals
/// <phi (.) X, X (.) phi> for every X, with vec stacking columns.
/// Throws SizeGuardError when n*m exceeds kExplicitEdgeAffinityMaxSize.
Matrix explicit_edge_affinity(const FeatureArray3& phi);
Matrix explicit_edge_affinity(const GraphCollection& c, const KernelSpec& spec);

/// Column-stacking vectorization.
Vector vec(const Matrix& x);

}  // namespace kmgm
