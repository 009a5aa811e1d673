#include "kmgm/kernels.hpp"

#include "kmgm/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace kmgm {

KernelKind parse_kernel_kind(std::string_view name) {
    if (name == "linear") return KernelKind::linear;
    if (name == "gaussian") return KernelKind::gaussian;
    throw ValidationError("unknown kernel '" + std::string(name) + "' (expected linear|gaussian)");
}

std::string to_string(KernelKind kind) {
    return kind == KernelKind::linear ? "linear" : "gaussian";
}

void KernelSpec::validate() const {
    if (kind == KernelKind::gaussian && !(gamma > 0.0 && std::isfinite(gamma))) {
        throw ValidationError("gaussian kernel needs gamma > 0, got " + std::to_string(gamma));
    }
    if (rff_dim < 1) throw ValidationError("rff_dim must be >= 1");
}

Matrix vertex_gram(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
    spec.validate();
    if (a.cols() != b.cols()) {
        throw DimensionError("vertex_gram: attribute dimensions differ (" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.cols()) + ")");
    }
    Matrix gram = a * b.transpose();
    if (spec.kind == KernelKind::linear) return gram;

    // |x - y|^2 expanded; the clamp absorbs cancellation on near-equal rows.
    const Vector a_sq = a.rowwise().squaredNorm();
    const Vector b_sq = b.rowwise().squaredNorm();
    for (Index i = 0; i < gram.rows(); ++i) {
        for (Index j = 0; j < gram.cols(); ++j) {
            double dist = std::max(0.0, a_sq[i] + b_sq[j] - 2.0 * gram(i, j));
            // Identical rows must give exactly 1.
            if (dist < 1e-12 && a.row(i) == b.row(j)) dist = 0.0;
            gram(i, j) = std::exp(-spec.gamma * dist);
        }
    }
    return gram;
}

RandomFourierFeatures::RandomFourierFeatures(const KernelSpec& spec, Index input_dim) {
    if (spec.kind != KernelKind::gaussian) {
        throw UnsupportedKernelError("random Fourier features approximate the gaussian kernel only");
    }
    spec.validate();
    if (input_dim < 1) throw DimensionError("random Fourier features need input_dim >= 1");
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 * spec.gamma));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    weights_.resize(spec.rff_dim, input_dim);
    for (Index r = 0; r < weights_.rows(); ++r) {
        for (Index c = 0; c < weights_.cols(); ++c) weights_(r, c) = normal(rng);
    }
    offsets_.resize(spec.rff_dim);
    for (Index r = 0; r < offsets_.size(); ++r) offsets_[r] = phase(rng);
}

Vector RandomFourierFeatures::map(const Vector& x) const {
    if (x.size() != input_dim()) {
        throw DimensionError("rff_map: input has dimension " + std::to_string(x.size()) +
                             ", expected " + std::to_string(input_dim()));
    }
    const double scale = std::sqrt(2.0 / static_cast<double>(output_dim()));
    return scale * (weights_ * x + offsets_).array().cos().matrix();
}

Matrix RandomFourierFeatures::map_rows(const Matrix& rows) const {
    if (rows.cols() != input_dim()) {
        throw DimensionError("rff_map: input has dimension " + std::to_string(rows.cols()) +
                             ", expected " + std::to_string(input_dim()));
    }
    const double scale = std::sqrt(2.0 / static_cast<double>(output_dim()));
    Matrix projected = rows * weights_.transpose();
    projected.rowwise() += offsets_.transpose();
    return scale * projected.array().cos().matrix();
}

Vector rff_map(const KernelSpec& spec, const Vector& x) {
    return RandomFourierFeatures(spec, x.size()).map(x);
}

EdgeFeatureMap::EdgeFeatureMap(const KernelSpec& spec, Index input_dim)
    : kind_(spec.kind), input_dim_(input_dim) {
    spec.validate();
    if (kind_ == KernelKind::gaussian) rff_.emplace(spec, input_dim);
}

Index EdgeFeatureMap::output_dim() const { return rff_ ? rff_->output_dim() : input_dim_; }

Matrix EdgeFeatureMap::map_rows(const Matrix& rows) const {
    if (rows.cols() != input_dim_) {
        throw DimensionError("edge features have dimension " + std::to_string(rows.cols()) +
                             ", expected " + std::to_string(input_dim_));
    }
    return rff_ ? rff_->map_rows(rows) : rows;
}

}  // namespace kmgm
