#pragma once

#include "kmgm/types.hpp"

#include <span>
#include <vector>

namespace kmgm {

/// Dense d x m x m array. The feature axis is outermost: the array is a
/// stack of d contiguous column-major m x m slices, so every product that
/// acts on the last two axes is a batch of ordinary matrix products.
class FeatureArray3 {
public:
    FeatureArray3() = default;
    /// Zero-initialized array; depth and size must both be >= 1.
    FeatureArray3(Index depth, Index size);

    [[nodiscard]] Index depth() const { return depth_; }
    [[nodiscard]] Index size() const { return size_; }

    double& operator()(Index l, Index i, Index j) { return data_[offset(l, i, j)]; }
    double operator()(Index l, Index i, Index j) const { return data_[offset(l, i, j)]; }

    Eigen::Map<Matrix> slice(Index l);
    [[nodiscard]] Eigen::Map<const Matrix> slice(Index l) const;

    /// The d-vector stored at position (i, j).
    [[nodiscard]] Vector fiber(Index i, Index j) const;
    void set_fiber(Index i, Index j, const Eigen::Ref<const Vector>& value);

    [[nodiscard]] std::span<const double> data() const { return data_; }
    [[nodiscard]] bool all_finite() const;

    bool operator==(const FeatureArray3&) const = default;

private:
    [[nodiscard]] std::size_t offset(Index l, Index i, Index j) const {
        return static_cast<std::size_t>((l * size_ + j) * size_ + i);
    }

    Index depth_ = 0;
    Index size_ = 0;
    std::vector<double> data_;
};

/// result[l,i,j] = a[l,j,i].
FeatureArray3 transpose3(const FeatureArray3& a);

/// result[i,j] = sum_k sum_l a[l,i,k] * b[l,k,j].
Matrix star(const FeatureArray3& a, const FeatureArray3& b);

/// result[:,i,j] = sum_k x[k,j] * a[:,i,k].
FeatureArray3 dot_right(const FeatureArray3& a, const Matrix& x);

/// result[:,i,j] = sum_k x[i,k] * a[:,k,j].
FeatureArray3 dot_left(const Matrix& x, const FeatureArray3& a);

/// tr(transpose3(a) * b), i.e. the sum of element-wise products.
double inner3(const FeatureArray3& a, const FeatureArray3& b);

}  // namespace kmgm
