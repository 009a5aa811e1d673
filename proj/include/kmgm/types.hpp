#pragma once

#include <Eigen/Dense>

namespace kmgm {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Block layout of a bulk matrix: n graphs of m vertices each.
struct BulkShape {
    Index n = 0;
    Index m = 0;

    [[nodiscard]] Index size() const { return n * m; }
    bool operator==(const BulkShape&) const = default;
};

}  // namespace kmgm
