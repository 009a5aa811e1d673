#include "kmgm/affinity.hpp"

#include "kmgm/errors.hpp"

namespace kmgm {

BulkFeatureArray::BulkFeatureArray(std::vector<FeatureArray3> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw DimensionError("BulkFeatureArray needs at least one block");
    const Index depth = blocks_.front().depth();
    const Index m = blocks_.front().size();
    for (const auto& b : blocks_) {
        if (b.depth() != depth || b.size() != m) {
            throw DimensionError("BulkFeatureArray blocks must share depth and size");
        }
    }
    shape_ = {static_cast<Index>(blocks_.size()), m};
}

FeatureArray3 BulkFeatureArray::dense() const {
    const Index m = shape_.m;
    FeatureArray3 out(depth(), shape_.size());
    for (Index k = 0; k < shape_.n; ++k) {
        for (Index l = 0; l < depth(); ++l) {
            out.slice(l).block(k * m, k * m, m, m) = block(k).slice(l);
        }
    }
    return out;
}

std::size_t BulkFeatureArray::stored_entries() const {
    return static_cast<std::size_t>(depth() * shape_.n * shape_.m * shape_.m);
}

BulkVertexAffinity build_vertex_affinity(const GraphCollection& c, const KernelSpec& spec) {
    c.validate();
    const Index m = c.m();
    Matrix stacked(c.n() * m, c.vertex_dim);
    for (Index k = 0; k < c.n(); ++k) {
        stacked.middleRows(k * m, m) = c.graphs[static_cast<std::size_t>(k)].vertex_attrs;
    }
    return {vertex_gram(spec, stacked, stacked), c.shape()};
}

BulkFeatureArray build_phi(const GraphCollection& c, const KernelSpec& spec) {
    c.validate();
    const Index m = c.m();
    if (c.edge_dim == 0) {
        return BulkFeatureArray(std::vector<FeatureArray3>(static_cast<std::size_t>(c.n()),
                                                           FeatureArray3(1, m)));
    }
    const EdgeFeatureMap features(spec, c.edge_dim);
    std::vector<FeatureArray3> blocks;
    blocks.reserve(c.graphs.size());
    for (const auto& g : c.graphs) {
        FeatureArray3 block(features.output_dim(), m);
        const Matrix mapped = features.map_rows(g.edge_attrs);
        for (Index e = 0; e < g.num_edges(); ++e) {
            const auto [s, t] = g.edges[static_cast<std::size_t>(e)];
            const Vector fiber = mapped.row(e).transpose();
            block.set_fiber(s, t, fiber);
            block.set_fiber(t, s, fiber);
        }
        blocks.push_back(std::move(block));
    }
    return BulkFeatureArray(std::move(blocks));
}

Matrix explicit_edge_affinity(const FeatureArray3& phi) {
    const Index size = phi.size();
    if (size > kExplicitEdgeAffinityMaxSize) {
        throw SizeGuardError("explicit edge affinity refused: n*m = " + std::to_string(size) +
                             " exceeds " + std::to_string(kExplicitEdgeAffinityMaxSize));
    }
    // <phi (.) X, X (.) phi> = sum_{i,j,k,q} X[k,j] X[i,q] <phi[:,i,k], phi[:,q,j]>,
    // and vec(X)[r + c*size] = X[r, c].
    const Index total = size * size;
    Matrix k_e = Matrix::Zero(total, total);
    for (Index i = 0; i < size; ++i) {
        for (Index k = 0; k < size; ++k) {
            const Vector left = phi.fiber(i, k);
            if (left.isZero(0.0)) continue;
            for (Index q = 0; q < size; ++q) {
                for (Index j = 0; j < size; ++j) {
                    k_e(k + j * size, i + q * size) += left.dot(phi.fiber(q, j));
                }
            }
        }
    }
    return k_e;
}

Matrix explicit_edge_affinity(const GraphCollection& c, const KernelSpec& spec) {
    if (c.n() * c.m() > kExplicitEdgeAffinityMaxSize) {
        throw SizeGuardError("explicit edge affinity refused: n*m = " +
                             std::to_string(c.n() * c.m()) + " exceeds " +
                             std::to_string(kExplicitEdgeAffinityMaxSize));
    }
    return explicit_edge_affinity(build_phi(c, spec).dense());
}

Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

}  // namespace kmgm
