#pragma once

#include "kmgm/consistency.hpp"
#include "kmgm/graphs.hpp"

namespace kmgm {

struct Scores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Precision = <T - I, X - I> / |X - I|^2, recall = <T - I, X - I> / |T - I|^2,
/// both counted exactly on the off-diagonal blocks. A zero denominator gives
/// 0, except when neither matrix has an off-diagonal match, which scores 1.
Scores score(const BulkPermutation& estimate, const BulkPermutation& truth);

/// Clears every off-diagonal match whose row or column vertex is a dummy.
BulkPermutation strip_dummy_matches(const BulkPermutation& x, const GraphCollection& c);

}  // namespace kmgm
