#include "kmgm/metrics.hpp"

#include "kmgm/errors.hpp"

namespace kmgm {

Scores score(const BulkPermutation& estimate, const BulkPermutation& truth) {
    if (estimate.shape() != truth.shape()) {
        throw DimensionError("score: estimate and truth have different bulk shapes");
    }
    const Index size = estimate.size();
    const Index m = estimate.m();
    long long common = 0;
    long long estimated = 0;
    long long expected = 0;
    for (Index r = 0; r < size; ++r) {
        for (Index c = 0; c < size; ++c) {
            if (r / m == c / m) continue;
            const bool e = estimate(r, c);
            const bool t = truth(r, c);
            estimated += e;
            expected += t;
            common += e && t;
        }
    }
    if (estimated == 0 && expected == 0) return {1.0, 1.0, 1.0};
    Scores s;
    s.precision = estimated > 0 ? static_cast<double>(common) / static_cast<double>(estimated) : 0.0;
    s.recall = expected > 0 ? static_cast<double>(common) / static_cast<double>(expected) : 0.0;
    const double denom = s.precision + s.recall;
    s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
    return s;
}

BulkPermutation strip_dummy_matches(const BulkPermutation& x, const GraphCollection& c) {
    if (x.shape() != c.shape()) {
        throw DimensionError("strip_dummy_matches: bulk shape does not match the collection");
    }
    const Index m = x.m();
    BulkPermutation out = x;
    for (Index r = 0; r < x.size(); ++r) {
        for (Index col = 0; col < x.size(); ++col) {
            if (r / m == col / m || !x(r, col)) continue;
            if (c.is_dummy(r / m, r % m) || c.is_dummy(col / m, col % m)) out.set(r, col, false);
        }
    }
    return out;
}

}  // namespace kmgm
