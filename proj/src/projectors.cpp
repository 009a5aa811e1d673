#include "kmgm/projectors.hpp"

#include "kmgm/errors.hpp"
#include "kmgm/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <cmath>

namespace kmgm {
namespace {

void require_bulk(const Matrix& x, BulkShape shape, Index rank) {
    if (shape.n < 1 || shape.m < 1) throw ValidationError("bulk shape needs n, m >= 1");
    if (x.rows() != shape.size() || x.cols() != shape.size()) {
        throw DimensionError("bulk matrix is " + std::to_string(x.rows()) + "x" +
                             std::to_string(x.cols()) + ", expected " +
                             std::to_string(shape.size()) + "x" + std::to_string(shape.size()));
    }
    if (rank < 1 || rank > shape.size()) {
        throw ValidationError("projection rank must be in [1, " + std::to_string(shape.size()) +
                              "], got " + std::to_string(rank));
    }
    if (!x.allFinite()) throw NumericalError("bulk matrix has non-finite entries");
}

Eigen::SparseMatrix<double> to_sparse(const BulkPermutation& z) {
    std::vector<Eigen::Triplet<double>> ones;
    ones.reserve(static_cast<std::size_t>(z.size() * z.n()));
    for (Index r = 0; r < z.size(); ++r) {
        for (Index c = 0; c < z.size(); ++c) {
            if (z(r, c)) ones.emplace_back(r, c, 1.0);
        }
    }
    Eigen::SparseMatrix<double> out(z.size(), z.size());
    out.setFromTriplets(ones.begin(), ones.end());
    return out;
}

BulkPermutation match_embedding(const Matrix& embedding, BulkShape shape) {
    const Index n = shape.n;
    const Index m = shape.m;
    BulkPermutation out = BulkPermutation::identity(n, m);
    std::vector<std::pair<Index, Index>> pairs;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    parallel_for(0, pairs.size(), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const Matrix z = embedding.middleRows(i * m, m) * embedding.middleRows(j * m, m).transpose();
        const std::vector<Index> assign = solve_assignment(z, /*maximize=*/true);
        for (Index a = 0; a < m; ++a) {
            const Index b = assign[static_cast<std::size_t>(a)];
            out.set(i * m + a, j * m + b, true);
            out.set(j * m + b, i * m + a, true);
        }
    });
    return out;
}

}  // namespace

ProjectorKind parse_projector_kind(std::string_view name) {
    if (name == "matcheig") return ProjectorKind::matcheig;
    if (name == "gpow") return ProjectorKind::gpow;
    if (name == "msync") return ProjectorKind::msync;
    throw ValidationError("unknown projector '" + std::string(name) +
                          "' (expected matcheig|gpow|msync)");
}

std::string to_string(ProjectorKind kind) {
    switch (kind) {
        case ProjectorKind::matcheig: return "matcheig";
        case ProjectorKind::gpow: return "gpow";
        case ProjectorKind::msync: return "msync";
    }
    return "unknown";
}

void ProjectorSpec::validate() const {
    if (rank < 1) throw ValidationError("projector rank must be >= 1, got " + std::to_string(rank));
    if (!(tol > 0.0)) throw ValidationError("projector tolerance must be > 0");
    if (max_iter < 1) throw ValidationError("projector max_iter must be >= 1");
}

Matrix spectral_embedding(const Matrix& x, Index rank) {
    if (x.rows() != x.cols()) throw DimensionError("spectral_embedding needs a square matrix");
    if (rank < 1 || rank > x.rows()) {
        throw ValidationError("spectral rank must be in [1, " + std::to_string(x.rows()) + "]");
    }
    const Matrix sym = 0.5 * (x + x.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition did not converge");
    // Eigenvalues come in increasing order.
    const Index first = x.rows() - rank;
    Matrix embedding = eig.eigenvectors().rightCols(rank);
    for (Index k = 0; k < rank; ++k) {
        embedding.col(k) *= std::sqrt(std::max(eig.eigenvalues()[first + k], 0.0));
    }
    return embedding;
}

BulkPermutation match_eig(const Matrix& x, BulkShape shape, Index rank) {
    require_bulk(x, shape, rank);
    return match_embedding(spectral_embedding(x, rank), shape);
}

ProjectionResult gpow(const Matrix& x, BulkShape shape, const ProjectorSpec& spec) {
    spec.validate();
    require_bulk(x, shape, spec.rank);
    ProjectionResult result{match_eig(x, shape, spec.rank), 0, false};
    for (int t = 1; t <= spec.max_iter; ++t) {
        const Matrix power = x * to_sparse(result.estimate);
        BulkPermutation next = match_eig(power, shape, spec.rank);
        const double step = frobenius_distance(result.estimate, next);
        result.estimate = std::move(next);
        result.iterations = t;
        if (step < spec.tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

BulkPermutation msync(const Matrix& x, BulkShape shape, Index rank) {
    require_bulk(x, shape, rank);
    const Index n = shape.n;
    const Index m = shape.m;
    const Matrix embedding = spectral_embedding(x, rank);
    const Matrix reference = embedding.topRows(m);

    UniverseAssignment universe;
    universe.rank = m;
    universe.labels.resize(static_cast<std::size_t>(n));
    universe.labels[0].resize(static_cast<std::size_t>(m));
    for (Index a = 0; a < m; ++a) universe.labels[0][static_cast<std::size_t>(a)] = a;
    parallel_for(1, static_cast<std::size_t>(n), [&](std::size_t i) {
        const Matrix z = embedding.middleRows(static_cast<Index>(i) * m, m) * reference.transpose();
        universe.labels[i] = solve_assignment(z, /*maximize=*/true);
    });
    return expand(universe);
}

ProjectionResult project(const Matrix& x, BulkShape shape, const ProjectorSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case ProjectorKind::matcheig: return {match_eig(x, shape, spec.rank), 1, true};
        case ProjectorKind::gpow: return gpow(x, shape, spec);
        case ProjectorKind::msync: return {msync(x, shape, spec.rank), 1, true};
    }
    throw ValidationError("unknown projector kind");
}

}  // namespace kmgm
