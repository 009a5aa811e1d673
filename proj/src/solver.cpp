#include "kmgm/solver.hpp"

#include "kmgm/errors.hpp"
#include "kmgm/parallel.hpp"

#include <Eigen/SparseCore>

#include <cmath>

namespace kmgm {
namespace {

using SparseSlice = Eigen::SparseMatrix<double>;

// Feature slices of every diagonal block, kept sparse: edge arrays are
// zero away from the edge positions.
class SparseBlocks {
public:
    explicit SparseBlocks(const BulkFeatureArray& phi) : depth_(phi.depth()) {
        slices_.reserve(static_cast<std::size_t>(phi.shape().n * depth_));
        for (const auto& block : phi.blocks()) {
            for (Index l = 0; l < depth_; ++l) slices_.push_back(block.slice(l).sparseView());
        }
    }

    [[nodiscard]] Index depth() const { return depth_; }
    [[nodiscard]] const SparseSlice& slice(Index graph, Index l) const {
        return slices_[static_cast<std::size_t>(graph * depth_ + l)];
    }

private:
    Index depth_;
    std::vector<SparseSlice> slices_;
};

void require_shapes(const Matrix& x, const BulkVertexAffinity& kv, const BulkFeatureArray& phi) {
    const BulkShape shape = kv.shape;
    if (phi.shape() != shape) throw DimensionError("vertex affinity and edge array shapes differ");
    if (kv.mat.rows() != shape.size() || kv.mat.cols() != shape.size()) {
        throw DimensionError("vertex affinity matrix does not match its declared shape");
    }
    if (x.rows() != shape.size() || x.cols() != shape.size()) {
        throw DimensionError("bulk matrix is " + std::to_string(x.rows()) + "x" +
                             std::to_string(x.cols()) + ", expected " +
                             std::to_string(shape.size()) + "x" + std::to_string(shape.size()));
    }
}

std::vector<std::pair<Index, Index>> all_blocks(Index n) {
    std::vector<std::pair<Index, Index>> blocks;
    blocks.reserve(static_cast<std::size_t>(n * n));
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) blocks.emplace_back(i, j);
    }
    return blocks;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw ValidationError("solver tolerance must be > 0");
    if (max_iter < 1) throw ValidationError("solver max_iter must be >= 1");
    projector.validate();
}

bool SolveTrace::is_monotone(double rel_slack) const {
    for (std::size_t t = 1; t < objective_values.size(); ++t) {
        const double prev = objective_values[t - 1];
        if (objective_values[t] < prev - rel_slack * std::abs(prev)) return false;
    }
    return true;
}

double objective(const Matrix& x, const BulkVertexAffinity& kv, const BulkFeatureArray& phi) {
    require_shapes(x, kv, phi);
    const Index n = kv.shape.n;
    const Index m = kv.shape.m;
    const SparseBlocks slices(phi);
    const auto blocks = all_blocks(n);
    std::vector<double> partial(blocks.size(), 0.0);
    // Block (i, j) of phi (.) X is phi_i (.) X_ij and of X (.) phi is X_ij (.) phi_j.
    parallel_for(0, blocks.size(), [&](std::size_t k) {
        const auto [i, j] = blocks[k];
        const Matrix x_ij = x.block(i * m, j * m, m, m);
        if (x_ij.isZero(0.0)) return;
        double sum = 0.0;
        for (Index l = 0; l < slices.depth(); ++l) {
            const Matrix left = slices.slice(i, l) * x_ij;
            const Matrix right = x_ij * slices.slice(j, l);
            sum += left.cwiseProduct(right).sum();
        }
        partial[k] = sum;
    });
    double quadratic = 0.0;
    for (double p : partial) quadratic += p;
    // tr(K^v X) = sum_ab K^v[a, b] X[b, a]
    const double linear = kv.mat.cwiseProduct(x.transpose()).sum();
    return quadratic + linear;
}

double objective(const BulkPermutation& x, const BulkVertexAffinity& kv,
                 const BulkFeatureArray& phi) {
    return objective(x.to_real(), kv, phi);
}

Matrix gradient(const Matrix& x, const BulkVertexAffinity& kv, const BulkFeatureArray& phi) {
    require_shapes(x, kv, phi);
    const Index n = kv.shape.n;
    const Index m = kv.shape.m;
    const SparseBlocks slices(phi);
    Matrix grad = kv.mat;
    const auto blocks = all_blocks(n);
    // Block (i, j): sum_l phi_i,l X_ij phi_j,l^T + phi_i,l^T X_ij phi_j,l.
    parallel_for(0, blocks.size(), [&](std::size_t k) {
        const auto [i, j] = blocks[k];
        const Matrix x_ij = x.block(i * m, j * m, m, m);
        if (x_ij.isZero(0.0)) return;
        Matrix acc = Matrix::Zero(m, m);
        for (Index l = 0; l < slices.depth(); ++l) {
            const SparseSlice& left = slices.slice(i, l);
            const SparseSlice& right = slices.slice(j, l);
            const Matrix a = left * x_ij;
            acc.noalias() += a * right.transpose();
            const Matrix b = SparseSlice(left.transpose()) * x_ij;
            acc.noalias() += b * right;
        }
        grad.block(i * m, j * m, m, m) += acc;
    });
    return grad;
}

double objective_dense(const Matrix& x, const Matrix& kv, const FeatureArray3& phi) {
    return inner3(dot_right(phi, x), dot_left(x, phi)) + (kv * x).trace();
}

Matrix gradient_dense(const Matrix& x, const Matrix& kv, const FeatureArray3& phi) {
    const FeatureArray3 phi_t = transpose3(phi);
    return kv + star(dot_right(phi, x), phi_t) + star(phi_t, dot_left(x, phi));
}

SolveResult solve(const BulkVertexAffinity& kv, const BulkFeatureArray& phi,
                  const SolverConfig& config) {
    config.validate();
    const BulkShape shape = kv.shape;
    Matrix current = Matrix::Zero(shape.size(), shape.size());
    SolveResult result{BulkPermutation::identity(shape.n, shape.m), {}};
    SolveTrace& trace = result.trace;

    for (int t = 0; t < config.max_iter; ++t) {
        const Matrix grad = gradient(current, kv, phi);
        ProjectionResult projected = project(grad, shape, config.projector);
        if (!projected.converged) ++trace.unconverged_projections;
        const Matrix next = projected.estimate.to_real();
        const double step = (next - current).norm();

        trace.objective_values.push_back(objective(next, kv, phi));
        trace.step_deltas.push_back(step);
        trace.iterations_run = t + 1;
        result.matching = std::move(projected.estimate);
        current = next;
        if (step < config.tol) {
            trace.converged = true;
            break;
        }
    }
    return result;
}

SolveResult solve(const GraphCollection& c, const KernelSpec& vertex_kernel,
                  const KernelSpec& edge_kernel, const SolverConfig& config) {
    return solve(build_vertex_affinity(c, vertex_kernel), build_phi(c, edge_kernel), config);
}

}  // namespace kmgm
