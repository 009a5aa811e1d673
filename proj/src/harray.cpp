#include "kmgm/harray.hpp"

#include "kmgm/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace kmgm {
namespace {

void require_same_shape(const FeatureArray3& a, const FeatureArray3& b, const char* op) {
    if (a.depth() != b.depth() || a.size() != b.size()) {
        throw DimensionError(std::string(op) + ": array shapes differ (" +
                             std::to_string(a.depth()) + "x" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.depth()) + "x" + std::to_string(b.size()) + ")");
    }
}

void require_square_match(const FeatureArray3& a, const Matrix& x, const char* op) {
    if (x.rows() != a.size() || x.cols() != a.size()) {
        throw DimensionError(std::string(op) + ": matrix is " + std::to_string(x.rows()) + "x" +
                             std::to_string(x.cols()) + ", array slices are " +
                             std::to_string(a.size()) + "x" + std::to_string(a.size()));
    }
}

}  // namespace

FeatureArray3::FeatureArray3(Index depth, Index size) : depth_(depth), size_(size) {
    if (depth < 1 || size < 1) {
        throw DimensionError("FeatureArray3: depth and size must be >= 1, got " +
                             std::to_string(depth) + "x" + std::to_string(size));
    }
    data_.assign(static_cast<std::size_t>(depth * size * size), 0.0);
}

Eigen::Map<Matrix> FeatureArray3::slice(Index l) {
    return {data_.data() + offset(l, 0, 0), size_, size_};
}

Eigen::Map<const Matrix> FeatureArray3::slice(Index l) const {
    return {data_.data() + offset(l, 0, 0), size_, size_};
}

Vector FeatureArray3::fiber(Index i, Index j) const {
    Vector v(depth_);
    for (Index l = 0; l < depth_; ++l) v[l] = (*this)(l, i, j);
    return v;
}

void FeatureArray3::set_fiber(Index i, Index j, const Eigen::Ref<const Vector>& value) {
    if (value.size() != depth_) {
        throw DimensionError("set_fiber: vector has " + std::to_string(value.size()) +
                             " entries, array depth is " + std::to_string(depth_));
    }
    for (Index l = 0; l < depth_; ++l) (*this)(l, i, j) = value[l];
}

bool FeatureArray3::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

FeatureArray3 transpose3(const FeatureArray3& a) {
    FeatureArray3 out(a.depth(), a.size());
    for (Index l = 0; l < a.depth(); ++l) out.slice(l) = a.slice(l).transpose();
    return out;
}

Matrix star(const FeatureArray3& a, const FeatureArray3& b) {
    require_same_shape(a, b, "star");
    Matrix out = Matrix::Zero(a.size(), a.size());
    for (Index l = 0; l < a.depth(); ++l) out.noalias() += a.slice(l) * b.slice(l);
    return out;
}

FeatureArray3 dot_right(const FeatureArray3& a, const Matrix& x) {
    require_square_match(a, x, "dot_right");
    FeatureArray3 out(a.depth(), a.size());
    for (Index l = 0; l < a.depth(); ++l) out.slice(l).noalias() = a.slice(l) * x;
    return out;
}

FeatureArray3 dot_left(const Matrix& x, const FeatureArray3& a) {
    require_square_match(a, x, "dot_left");
    FeatureArray3 out(a.depth(), a.size());
    for (Index l = 0; l < a.depth(); ++l) out.slice(l).noalias() = x * a.slice(l);
    return out;
}

double inner3(const FeatureArray3& a, const FeatureArray3& b) {
    require_same_shape(a, b, "inner3");
    const auto lhs = a.data();
    const auto rhs = b.data();
    return std::inner_product(lhs.begin(), lhs.end(), rhs.begin(), 0.0);
}

}  // namespace kmgm
