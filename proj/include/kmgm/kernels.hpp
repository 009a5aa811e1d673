#pragma once

#include "kmgm/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace kmgm {

enum class KernelKind { linear, gaussian };

KernelKind parse_kernel_kind(std::string_view name);
std::string to_string(KernelKind kind);

/// Kernel choice for vertices or edges. The Gaussian kernel is
/// exp(-gamma * |x - y|^2); a kernel written with a variance s^2 as
/// exp(-|x - y|^2 / (2 s^2)) has gamma = 1 / (2 s^2).
struct KernelSpec {
    KernelKind kind = KernelKind::linear;
    double gamma = 1.0;
    Index rff_dim = 100;  // random feature count, Gaussian edge kernels only
    std::uint64_t seed = 0;

    void validate() const;
};

/// Gram matrix between the rows of a and the rows of b.
Matrix vertex_gram(const KernelSpec& spec, const Matrix& a, const Matrix& b);

/// Random Fourier features phi(x) = sqrt(2/D) cos(W x + b) with
/// W_ij ~ N(0, 2 gamma) and b_i ~ U[0, 2 pi), so that
/// E <phi(x), phi(y)> = exp(-gamma |x - y|^2). W and b are drawn once from
/// the kernel seed; every graph of a collection shares them.
class RandomFourierFeatures {
public:
    RandomFourierFeatures(const KernelSpec& spec, Index input_dim);

    [[nodiscard]] Index input_dim() const { return weights_.cols(); }
    [[nodiscard]] Index output_dim() const { return weights_.rows(); }

    [[nodiscard]] Vector map(const Vector& x) const;
    /// Maps every row of `rows`.
    [[nodiscard]] Matrix map_rows(const Matrix& rows) const;

    [[nodiscard]] const Matrix& weights() const { return weights_; }
    [[nodiscard]] const Vector& offsets() const { return offsets_; }

private:
    Matrix weights_;  // D x input_dim
    Vector offsets_;  // D
};

/// One-shot convenience: builds the feature map from the spec and applies it.
Vector rff_map(const KernelSpec& spec, const Vector& x);

/// Edge feature map: identity for the linear kernel, random Fourier features
/// for the Gaussian kernel.
class EdgeFeatureMap {
public:
    EdgeFeatureMap(const KernelSpec& spec, Index input_dim);

    [[nodiscard]] Index output_dim() const;
    [[nodiscard]] Matrix map_rows(const Matrix& rows) const;

private:
    KernelKind kind_;
    Index input_dim_;
    std::optional<RandomFourierFeatures> rff_;
};

}  // namespace kmgm
