#include "kmgm/errors.hpp"
#include "kmgm/projectors.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace kmgm {
namespace {

struct DualSolution {
    std::vector<Index> row_to_col;
    Vector row_potential;
    Vector col_potential;
};

// Shortest augmenting path Hungarian method (minimization), O(m^3). On exit
// cost(i, j) - row_potential[i] - col_potential[j] >= 0 everywhere and is
// zero along the assignment.
DualSolution minimize_assignment(const Matrix& cost) {
    const Index m = cost.rows();
    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based bookkeeping; index 0 is the virtual source.
    std::vector<double> u(static_cast<std::size_t>(m + 1), 0.0);
    std::vector<double> v(static_cast<std::size_t>(m + 1), 0.0);
    std::vector<Index> owner(static_cast<std::size_t>(m + 1), 0);
    std::vector<Index> way(static_cast<std::size_t>(m + 1), 0);
    std::vector<double> min_slack(static_cast<std::size_t>(m + 1));
    std::vector<char> used(static_cast<std::size_t>(m + 1));

    for (Index row = 1; row <= m; ++row) {
        owner[0] = row;
        Index col0 = 0;
        std::fill(min_slack.begin(), min_slack.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[static_cast<std::size_t>(col0)] = 1;
            const Index row0 = owner[static_cast<std::size_t>(col0)];
            double delta = inf;
            Index col1 = 0;
            for (Index col = 1; col <= m; ++col) {
                const auto c = static_cast<std::size_t>(col);
                if (used[c]) continue;
                const double slack =
                    cost(row0 - 1, col - 1) - u[static_cast<std::size_t>(row0)] - v[c];
                if (slack < min_slack[c]) {
                    min_slack[c] = slack;
                    way[c] = col0;
                }
                if (min_slack[c] < delta) {
                    delta = min_slack[c];
                    col1 = col;
                }
            }
            for (Index col = 0; col <= m; ++col) {
                const auto c = static_cast<std::size_t>(col);
                if (used[c]) {
                    u[static_cast<std::size_t>(owner[c])] += delta;
                    v[c] -= delta;
                } else {
                    min_slack[c] -= delta;
                }
            }
            col0 = col1;
        } while (owner[static_cast<std::size_t>(col0)] != 0);
        do {
            const Index col1 = way[static_cast<std::size_t>(col0)];
            owner[static_cast<std::size_t>(col0)] = owner[static_cast<std::size_t>(col1)];
            col0 = col1;
        } while (col0 != 0);
    }

    DualSolution out;
    out.row_to_col.assign(static_cast<std::size_t>(m), -1);
    out.row_potential.resize(m);
    out.col_potential.resize(m);
    for (Index col = 1; col <= m; ++col) {
        out.row_to_col[static_cast<std::size_t>(owner[static_cast<std::size_t>(col)] - 1)] = col - 1;
    }
    for (Index k = 0; k < m; ++k) {
        out.row_potential[k] = u[static_cast<std::size_t>(k + 1)];
        out.col_potential[k] = v[static_cast<std::size_t>(k + 1)];
    }
    return out;
}

// Every optimal assignment is a perfect matching on the zero-reduced-cost
// edges. Walk rows in order and move each one to the smallest column that
// still admits such a matching for the rows after it.
void make_lexicographically_smallest(const Matrix& cost, DualSolution& sol) {
    const Index m = cost.rows();
    const double tol = 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());
    auto tight = [&](Index r, Index c) {
        return cost(r, c) - sol.row_potential[r] - sol.col_potential[c] <= tol;
    };
    std::vector<Index>& assign = sol.row_to_col;
    std::vector<Index> owner(static_cast<std::size_t>(m));
    for (Index r = 0; r < m; ++r) owner[static_cast<std::size_t>(assign[static_cast<std::size_t>(r)])] = r;

    std::vector<Index> came_from(static_cast<std::size_t>(m));
    std::vector<char> seen(static_cast<std::size_t>(m));
    for (Index row = 0; row < m; ++row) {
        const Index target = assign[static_cast<std::size_t>(row)];
        for (Index col = 0; col < target; ++col) {
            const Index start = owner[static_cast<std::size_t>(col)];
            if (start < row || !tight(row, col)) continue;

            // Alternating path start -> ... -> target over rows > row.
            // came_from[c] is the column whose owner moved onto c.
            std::fill(seen.begin(), seen.end(), 0);
            seen[static_cast<std::size_t>(col)] = 1;
            std::deque<Index> frontier{col};
            bool found = false;
            while (!frontier.empty() && !found) {
                const Index from_col = frontier.front();
                frontier.pop_front();
                const Index r = owner[static_cast<std::size_t>(from_col)];
                for (Index c = 0; c < m && !found; ++c) {
                    if (seen[static_cast<std::size_t>(c)] || !tight(r, c)) continue;
                    const Index next_owner = owner[static_cast<std::size_t>(c)];
                    if (c != target && next_owner <= row) continue;
                    seen[static_cast<std::size_t>(c)] = 1;
                    came_from[static_cast<std::size_t>(c)] = from_col;
                    if (c == target) {
                        found = true;
                    } else {
                        frontier.push_back(c);
                    }
                }
            }
            if (!found) continue;

            for (Index c = target; c != col;) {
                const Index prev = came_from[static_cast<std::size_t>(c)];
                const Index r = owner[static_cast<std::size_t>(prev)];
                assign[static_cast<std::size_t>(r)] = c;
                owner[static_cast<std::size_t>(c)] = r;
                c = prev;
            }
            assign[static_cast<std::size_t>(row)] = col;
            owner[static_cast<std::size_t>(col)] = row;
            break;
        }
    }
}

}  // namespace

std::vector<Index> solve_assignment(const Matrix& weights, bool maximize) {
    if (weights.rows() != weights.cols()) {
        throw DimensionError("assignment needs a square matrix, got " +
                             std::to_string(weights.rows()) + "x" + std::to_string(weights.cols()));
    }
    if (!weights.allFinite()) throw ValidationError("assignment weights must be finite");
    if (weights.rows() == 0) return {};
    const Matrix cost = maximize ? Matrix(-weights) : weights;
    DualSolution sol = minimize_assignment(cost);
    make_lexicographically_smallest(cost, sol);
    return sol.row_to_col;
}

Matrix hungarian(const Matrix& weights, bool maximize) {
    const std::vector<Index> assign = solve_assignment(weights, maximize);
    Matrix out = Matrix::Zero(weights.rows(), weights.cols());
    for (std::size_t r = 0; r < assign.size(); ++r) out(static_cast<Index>(r), assign[r]) = 1.0;
    return out;
}

}  // namespace kmgm
