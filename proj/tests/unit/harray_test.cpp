#include "kmgm/errors.hpp"
#include "kmgm/harray.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace kmgm {
namespace {

double max_abs_diff(const FeatureArray3& a, const FeatureArray3& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

TEST(FeatureArray3, RejectsEmptyShapes) {
    EXPECT_THROW(FeatureArray3(0, 3), DimensionError);
    EXPECT_THROW(FeatureArray3(2, 0), DimensionError);
}

TEST(FeatureArray3, SlicesAreColumnMajorViews) {
    FeatureArray3 a(2, 3);
    a(1, 2, 0) = 7.0;
    EXPECT_EQ(a.slice(1)(2, 0), 7.0);
    a.slice(0)(0, 1) = 4.0;
    EXPECT_EQ(a(0, 0, 1), 4.0);
    EXPECT_EQ(a.fiber(2, 0), (Vector(2) << 0.0, 7.0).finished());
}

TEST(Transpose3, SymmetricInputUnchanged) {
    std::mt19937_64 rng(1);
    FeatureArray3 a = oracle::random_array(rng, 3, 4);
    for (Index l = 0; l < 3; ++l) a.slice(l) = (a.slice(l) + a.slice(l).transpose()).eval();
    EXPECT_EQ(transpose3(a), a);
}

TEST(Transpose3, SwapsCoordinates) {
    FeatureArray3 a(1, 3);
    a(0, 1, 2) = 5.0;
    const FeatureArray3 t = transpose3(a);
    FeatureArray3 expected(1, 3);
    expected(0, 2, 1) = 5.0;
    EXPECT_EQ(t, expected);
}

TEST(Transpose3, IsAnInvolution) {
    std::mt19937_64 rng(2);
    const FeatureArray3 a = oracle::random_array(rng, 4, 5);
    EXPECT_EQ(transpose3(transpose3(a)), a);
    EXPECT_EQ(transpose3(a), oracle::naive_transpose(a));
}

TEST(Star, DepthOneIsMatrixProduct) {
    std::mt19937_64 rng(3);
    const FeatureArray3 a = oracle::random_array(rng, 1, 4);
    const FeatureArray3 b = oracle::random_array(rng, 1, 4);
    EXPECT_TRUE(star(a, b).isApprox(a.slice(0) * b.slice(0), 1e-14));
}

TEST(Star, ZeroAnnihilates) {
    const FeatureArray3 z(2, 3);
    EXPECT_TRUE(star(z, z).isZero(0.0));
}

TEST(Star, MatchesTripleLoop) {
    std::mt19937_64 rng(4);
    const FeatureArray3 a = oracle::random_array(rng, 3, 4);
    const FeatureArray3 b = oracle::random_array(rng, 3, 4);
    EXPECT_LT((star(a, b) - oracle::naive_star(a, b)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Star, ShapeMismatchThrows) {
    EXPECT_THROW((void)star(FeatureArray3(2, 3), FeatureArray3(3, 3)), DimensionError);
    EXPECT_THROW((void)star(FeatureArray3(2, 3), FeatureArray3(2, 4)), DimensionError);
}

TEST(DotRight, IdentityAndZero) {
    std::mt19937_64 rng(5);
    const FeatureArray3 a = oracle::random_array(rng, 3, 4);
    EXPECT_EQ(dot_right(a, Matrix::Identity(4, 4)), a);
    EXPECT_EQ(dot_right(a, Matrix::Zero(4, 4)), FeatureArray3(3, 4));
}

TEST(DotRight, EachSliceIsMatrixProduct) {
    std::mt19937_64 rng(6);
    const FeatureArray3 a = oracle::random_array(rng, 3, 5);
    const Matrix x = oracle::random_matrix(rng, 5, 5);
    const FeatureArray3 r = dot_right(a, x);
    for (Index l = 0; l < 3; ++l) EXPECT_TRUE(r.slice(l).isApprox(a.slice(l) * x, 1e-13));
    EXPECT_LT(max_abs_diff(r, oracle::naive_dot_right(a, x)), 1e-12);
}

TEST(DotRight, ShapeMismatchThrows) {
    EXPECT_THROW((void)dot_right(FeatureArray3(1, 3), Matrix::Zero(3, 4)), DimensionError);
    EXPECT_THROW((void)dot_left(Matrix::Zero(2, 2), FeatureArray3(1, 3)), DimensionError);
}

TEST(DotLeft, IdentityCase) {
    std::mt19937_64 rng(7);
    const FeatureArray3 a = oracle::random_array(rng, 2, 4);
    EXPECT_EQ(dot_left(Matrix::Identity(4, 4), a), a);
}

TEST(DotLeft, MatchesLoopsAndTransposedDotRight) {
    std::mt19937_64 rng(8);
    const FeatureArray3 a = oracle::random_array(rng, 3, 4);
    const Matrix x = oracle::random_matrix(rng, 4, 4);
    const FeatureArray3 l = dot_left(x, a);
    EXPECT_LT(max_abs_diff(l, oracle::naive_dot_left(x, a)), 1e-12);
    EXPECT_LT(max_abs_diff(l, transpose3(dot_right(transpose3(a), x.transpose()))), 1e-12);
}

TEST(DotLeft, Composes) {
    std::mt19937_64 rng(9);
    const FeatureArray3 a = oracle::random_array(rng, 2, 5);
    const Matrix x = oracle::random_matrix(rng, 5, 5);
    const Matrix y = oracle::random_matrix(rng, 5, 5);
    EXPECT_LT(max_abs_diff(dot_left(y, dot_left(x, a)), dot_left(y * x, a)), 1e-11);
}

TEST(Inner3, PositiveOnNonzero) {
    std::mt19937_64 rng(10);
    const FeatureArray3 a = oracle::random_array(rng, 2, 3);
    EXPECT_GT(inner3(a, a), 0.0);
    EXPECT_EQ(inner3(FeatureArray3(2, 3), FeatureArray3(2, 3)), 0.0);
}

TEST(Inner3, SingleEntryProduct) {
    FeatureArray3 a(1, 3);
    FeatureArray3 b(1, 3);
    a(0, 1, 2) = 3.0;
    b(0, 1, 2) = 4.0;
    EXPECT_EQ(inner3(a, b), 12.0);
}

TEST(Inner3, SymmetricAndEqualToTraceForm) {
    std::mt19937_64 rng(11);
    const FeatureArray3 a = oracle::random_array(rng, 3, 4);
    const FeatureArray3 b = oracle::random_array(rng, 3, 4);
    EXPECT_NEAR(inner3(a, b), inner3(b, a), 1e-12);
    EXPECT_NEAR(inner3(a, b), oracle::naive_inner(a, b), 1e-11);
    EXPECT_THROW((void)inner3(a, FeatureArray3(2, 4)), DimensionError);
}

TEST(Inner3, DepthOneReducesToFrobenius) {
    std::mt19937_64 rng(12);
    const FeatureArray3 a = oracle::random_array(rng, 1, 4);
    const FeatureArray3 b = oracle::random_array(rng, 1, 4);
    EXPECT_NEAR(inner3(a, b), (a.slice(0).array() * b.slice(0).array()).sum(), 1e-13);
}

}  // namespace
}  // namespace kmgm
