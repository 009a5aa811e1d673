#pragma once

#include "kmgm/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmgm {

/// n x n grid of m x m partial permutation blocks, stored as one dense
/// (n*m) x (n*m) row-major 0/1 matrix. Block (i, j) is the matching from
/// the vertices of graph i (rows) to the vertices of graph j (columns).
class BulkPermutation {
public:
    BulkPermutation() = default;
    /// All-zero bulk matrix (not yet a valid bulk permutation).
    BulkPermutation(Index n, Index m);

    /// The (n*m) x (n*m) identity: no vertex is matched across graphs.
    static BulkPermutation identity(Index n, Index m);
    /// Every block is the m x m identity: vertex a of each graph matches
    /// vertex a of every other graph.
    static BulkPermutation all_identity(Index n, Index m);
    /// Rounds nothing: every entry of `dense` must be exactly 0 or 1.
    /// The result is validated.
    static BulkPermutation from_dense(const Matrix& dense, Index n, Index m);

    [[nodiscard]] Index n() const { return shape_.n; }
    [[nodiscard]] Index m() const { return shape_.m; }
    [[nodiscard]] BulkShape shape() const { return shape_; }
    [[nodiscard]] Index size() const { return shape_.size(); }

    [[nodiscard]] bool operator()(Index row, Index col) const {
        return entries_[index(row, col)] != 0;
    }
    void set(Index row, Index col, bool value) { entries_[index(row, col)] = value ? 1 : 0; }

    /// Entry (a, b) of block (i, j).
    [[nodiscard]] bool at(Index i, Index j, Index a, Index b) const {
        return (*this)(i * shape_.m + a, j * shape_.m + b);
    }
    void set_block(Index i, Index j, const Matrix& block);
    [[nodiscard]] Matrix block(Index i, Index j) const;

    /// For block (i, j): the matched column of every row, or -1.
    [[nodiscard]] std::vector<Index> block_map(Index i, Index j) const;

    [[nodiscard]] Matrix to_real() const;
    [[nodiscard]] const std::vector<std::uint8_t>& entries() const { return entries_; }

    /// Number of ones outside the diagonal blocks.
    [[nodiscard]] Index off_diagonal_count() const;

    /// Throws ValidationError unless every block is a partial permutation,
    /// diagonal blocks are identities and X(i,j) = X(j,i)^T.
    void validate() const;

    bool operator==(const BulkPermutation&) const = default;

private:
    [[nodiscard]] std::size_t index(Index row, Index col) const {
        return static_cast<std::size_t>(row * shape_.size() + col);
    }

    BulkShape shape_;
    std::vector<std::uint8_t> entries_;
};

/// sqrt of the number of differing entries.
double frobenius_distance(const BulkPermutation& a, const BulkPermutation& b);

/// Each graph's vertices mapped into a universe of `rank` elements.
/// labels[l][v] is the universe element of vertex v of graph l.
struct UniverseAssignment {
    std::vector<std::vector<Index>> labels;
    Index rank = 0;

    [[nodiscard]] Index n() const { return static_cast<Index>(labels.size()); }
    [[nodiscard]] Index m() const { return labels.empty() ? 0 : static_cast<Index>(labels[0].size()); }

    /// The m x rank 0/1 assignment matrix of graph l.
    [[nodiscard]] Matrix matrix(Index l) const;
    /// Number of universe elements hit by at least one vertex.
    [[nodiscard]] Index used_rank() const;
    /// Every vertex has one label in [0, rank), no two vertices of a graph share one.
    void validate() const;
};

/// Block (i, j) = X_i X_j^T.
BulkPermutation expand(const UniverseAssignment& universe);

struct Triple {
    Index i = 0;
    Index j = 0;
    Index l = 0;
    bool operator==(const Triple&) const = default;
};

struct ConsistencyReport {
    bool consistent = true;
    /// Graph indices of the first violation found. Identity violations
    /// report (i, i, i), symmetry violations (i, j, i).
    std::optional<Triple> violation;
    std::string reason;

    explicit operator bool() const { return consistent; }
};

/// Checks identity, symmetry and transitivity X_ij X_jl <= X_il over all
/// ordered triples. Throws ValidationError if a block is not a partial
/// permutation.
ConsistencyReport is_cycle_consistent(const BulkPermutation& x);

/// Same checks, but transitivity is tested on `samples` random triples.
ConsistencyReport is_cycle_consistent_sampled(const BulkPermutation& x, std::size_t samples,
                                              std::uint64_t seed);

/// Union-find factorization of a cycle-consistent bulk permutation. Universe
/// elements are ordered by their smallest member (graph-major vertex index).
/// Returns nullopt when x is not cycle-consistent.
std::optional<UniverseAssignment> recover_universe(const BulkPermutation& x);

/// True iff x is cycle-consistent and factors through a universe of at most
/// `rank` elements.
bool is_rank_consistent(const BulkPermutation& x, Index rank);

}  // namespace kmgm
