#include "kmgm/parallel.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

namespace kmgm {
namespace {

class ParallelFor : public ::testing::TestWithParam<std::size_t> {
protected:
    void SetUp() override { set_num_threads(GetParam()); }
    void TearDown() override { set_num_threads(0); }
};

TEST_P(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(0, hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST_P(ParallelFor, NestedCallsComplete) {
    std::vector<std::vector<int>> hits(20, std::vector<int>(30, 0));
    parallel_for(0, 20, [&](std::size_t i) {
        parallel_for(0, 30, [&](std::size_t j) { ++hits[i][j]; });
    });
    for (const auto& row : hits)
        for (int h : row) EXPECT_EQ(h, 1);
}

TEST_P(ParallelFor, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(0, 100,
                              [](std::size_t i) {
                                  if (i == 57) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST_P(ParallelFor, EmptyRangeIsNoOp) {
    std::atomic<int> calls = 0;
    parallel_for(5, 5, [&](std::size_t) { ++calls; });
    EXPECT_EQ(calls.load(), 0);
}

INSTANTIATE_TEST_SUITE_P(Threads, ParallelFor, ::testing::Values(1, 2, 4));

TEST(NumThreads, CapAndDefault) {
    set_num_threads(3);
    EXPECT_EQ(num_threads(), 3u);
    set_num_threads(0);
    EXPECT_GE(num_threads(), 1u);
}

}  // namespace
}  // namespace kmgm
