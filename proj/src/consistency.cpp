#include "kmgm/consistency.hpp"

#include "kmgm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace kmgm {
namespace {

std::string block_name(Index i, Index j) {
    return "block (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

// Throws unless every block has row and column sums <= 1.
void require_partial_permutation_blocks(const BulkPermutation& x) {
    const Index n = x.n();
    const Index m = x.m();
    std::vector<int> col_count(static_cast<std::size_t>(m));
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            std::fill(col_count.begin(), col_count.end(), 0);
            for (Index a = 0; a < m; ++a) {
                int row_count = 0;
                for (Index b = 0; b < m; ++b) {
                    if (x.at(i, j, a, b)) {
                        ++row_count;
                        ++col_count[static_cast<std::size_t>(b)];
                    }
                }
                if (row_count > 1) {
                    throw ValidationError(block_name(i, j) + ": row " + std::to_string(a) +
                                          " has more than one match");
                }
            }
            for (Index b = 0; b < m; ++b) {
                if (col_count[static_cast<std::size_t>(b)] > 1) {
                    throw ValidationError(block_name(i, j) + ": column " + std::to_string(b) +
                                          " has more than one match");
                }
            }
        }
    }
}

std::optional<std::string> identity_violation(const BulkPermutation& x, Index i) {
    for (Index a = 0; a < x.m(); ++a) {
        for (Index b = 0; b < x.m(); ++b) {
            if (x.at(i, i, a, b) != (a == b)) {
                return block_name(i, i) + " is not the identity";
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> symmetry_violation(const BulkPermutation& x, Index i, Index j) {
    for (Index a = 0; a < x.m(); ++a) {
        for (Index b = 0; b < x.m(); ++b) {
            if (x.at(i, j, a, b) != x.at(j, i, b, a)) {
                return block_name(i, j) + " is not the transpose of " + block_name(j, i);
            }
        }
    }
    return std::nullopt;
}

using BlockMaps = std::vector<std::vector<Index>>;

BlockMaps all_block_maps(const BulkPermutation& x) {
    BlockMaps maps(static_cast<std::size_t>(x.n() * x.n()));
    for (Index i = 0; i < x.n(); ++i) {
        for (Index j = 0; j < x.n(); ++j) {
            maps[static_cast<std::size_t>(i * x.n() + j)] = x.block_map(i, j);
        }
    }
    return maps;
}

std::optional<std::string> transitivity_violation(const BlockMaps& maps, Index n, Index i, Index j,
                                                  Index l) {
    const auto& ij = maps[static_cast<std::size_t>(i * n + j)];
    const auto& jl = maps[static_cast<std::size_t>(j * n + l)];
    const auto& il = maps[static_cast<std::size_t>(i * n + l)];
    for (std::size_t a = 0; a < ij.size(); ++a) {
        const Index b = ij[a];
        if (b < 0) continue;
        const Index c = jl[static_cast<std::size_t>(b)];
        if (c >= 0 && il[a] != c) {
            return "vertex " + std::to_string(a) + " of graph " + std::to_string(i) +
                   " reaches vertex " + std::to_string(c) + " of graph " + std::to_string(l) +
                   " through graph " + std::to_string(j) + " but is not matched to it directly";
        }
    }
    return std::nullopt;
}

ConsistencyReport violated(Triple t, std::string reason) {
    return {false, t, std::move(reason)};
}

std::optional<ConsistencyReport> check_identity_and_symmetry(const BulkPermutation& x) {
    for (Index i = 0; i < x.n(); ++i) {
        if (auto why = identity_violation(x, i)) return violated({i, i, i}, *why);
    }
    for (Index i = 0; i < x.n(); ++i) {
        for (Index j = i + 1; j < x.n(); ++j) {
            if (auto why = symmetry_violation(x, i, j)) return violated({i, j, i}, *why);
        }
    }
    return std::nullopt;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t count) : parent_(count) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

BulkPermutation::BulkPermutation(Index n, Index m) : shape_{n, m} {
    if (n < 1 || m < 1) {
        throw ValidationError("BulkPermutation: n and m must be >= 1, got n=" + std::to_string(n) +
                              ", m=" + std::to_string(m));
    }
    entries_.assign(static_cast<std::size_t>(size() * size()), 0);
}

BulkPermutation BulkPermutation::identity(Index n, Index m) {
    BulkPermutation x(n, m);
    for (Index k = 0; k < x.size(); ++k) x.set(k, k, true);
    return x;
}

BulkPermutation BulkPermutation::all_identity(Index n, Index m) {
    BulkPermutation x(n, m);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index a = 0; a < m; ++a) x.set(i * m + a, j * m + a, true);
    return x;
}

BulkPermutation BulkPermutation::from_dense(const Matrix& dense, Index n, Index m) {
    BulkPermutation x(n, m);
    if (dense.rows() != x.size() || dense.cols() != x.size()) {
        throw DimensionError("bulk permutation must be " + std::to_string(x.size()) + "x" +
                             std::to_string(x.size()) + ", got " + std::to_string(dense.rows()) +
                             "x" + std::to_string(dense.cols()));
    }
    for (Index r = 0; r < x.size(); ++r) {
        for (Index c = 0; c < x.size(); ++c) {
            const double v = dense(r, c);
            if (v != 0.0 && v != 1.0) {
                throw ValidationError("bulk permutation entry (" + std::to_string(r) + ", " +
                                      std::to_string(c) + ") is not 0 or 1");
            }
            x.set(r, c, v == 1.0);
        }
    }
    x.validate();
    return x;
}

void BulkPermutation::set_block(Index i, Index j, const Matrix& block) {
    if (block.rows() != m() || block.cols() != m()) {
        throw DimensionError("set_block: expected " + std::to_string(m()) + "x" +
                             std::to_string(m()) + " block");
    }
    for (Index a = 0; a < m(); ++a) {
        for (Index b = 0; b < m(); ++b) set(i * m() + a, j * m() + b, block(a, b) != 0.0);
    }
}

Matrix BulkPermutation::block(Index i, Index j) const {
    Matrix out(m(), m());
    for (Index a = 0; a < m(); ++a) {
        for (Index b = 0; b < m(); ++b) out(a, b) = at(i, j, a, b) ? 1.0 : 0.0;
    }
    return out;
}

std::vector<Index> BulkPermutation::block_map(Index i, Index j) const {
    std::vector<Index> map(static_cast<std::size_t>(m()), -1);
    for (Index a = 0; a < m(); ++a) {
        for (Index b = 0; b < m(); ++b) {
            if (at(i, j, a, b)) {
                map[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
    }
    return map;
}

Matrix BulkPermutation::to_real() const {
    Matrix out(size(), size());
    for (Index r = 0; r < size(); ++r) {
        for (Index c = 0; c < size(); ++c) out(r, c) = (*this)(r, c) ? 1.0 : 0.0;
    }
    return out;
}

Index BulkPermutation::off_diagonal_count() const {
    Index count = 0;
    for (Index r = 0; r < size(); ++r) {
        for (Index c = 0; c < size(); ++c) {
            if (r / m() != c / m() && (*this)(r, c)) ++count;
        }
    }
    return count;
}

void BulkPermutation::validate() const {
    require_partial_permutation_blocks(*this);
    if (auto failure = check_identity_and_symmetry(*this)) throw ValidationError(failure->reason);
}

double frobenius_distance(const BulkPermutation& a, const BulkPermutation& b) {
    if (a.shape() != b.shape()) throw DimensionError("frobenius_distance: bulk shapes differ");
    std::size_t differing = 0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        if (a.entries()[k] != b.entries()[k]) ++differing;
    }
    return std::sqrt(static_cast<double>(differing));
}

Matrix UniverseAssignment::matrix(Index l) const {
    const auto& row_labels = labels.at(static_cast<std::size_t>(l));
    Matrix out = Matrix::Zero(static_cast<Index>(row_labels.size()), rank);
    for (std::size_t v = 0; v < row_labels.size(); ++v) out(static_cast<Index>(v), row_labels[v]) = 1.0;
    return out;
}

Index UniverseAssignment::used_rank() const {
    std::vector<bool> used(static_cast<std::size_t>(rank), false);
    for (const auto& graph : labels) {
        for (Index u : graph) used[static_cast<std::size_t>(u)] = true;
    }
    return static_cast<Index>(std::count(used.begin(), used.end(), true));
}

void UniverseAssignment::validate() const {
    if (labels.empty()) throw ValidationError("universe assignment has no graphs");
    if (rank < 1) throw ValidationError("universe rank must be >= 1");
    const std::size_t m_count = labels.front().size();
    if (m_count == 0) throw ValidationError("universe assignment graphs have no vertices");
    for (std::size_t l = 0; l < labels.size(); ++l) {
        if (labels[l].size() != m_count) {
            throw ValidationError("graph " + std::to_string(l) + " has " +
                                  std::to_string(labels[l].size()) + " labels, expected " +
                                  std::to_string(m_count));
        }
        std::vector<bool> taken(static_cast<std::size_t>(rank), false);
        for (std::size_t v = 0; v < m_count; ++v) {
            const Index u = labels[l][v];
            if (u < 0 || u >= rank) {
                throw ValidationError("graph " + std::to_string(l) + " vertex " +
                                      std::to_string(v) + ": label out of range");
            }
            if (taken[static_cast<std::size_t>(u)]) {
                throw ValidationError("graph " + std::to_string(l) + ": universe element " +
                                      std::to_string(u) + " used twice");
            }
            taken[static_cast<std::size_t>(u)] = true;
        }
    }
}

BulkPermutation expand(const UniverseAssignment& universe) {
    universe.validate();
    const Index n = universe.n();
    const Index m = universe.m();
    BulkPermutation x(n, m);
    // X_i X_j^T has a one at (a, b) iff both vertices share a universe element.
    std::vector<Index> owner(static_cast<std::size_t>(universe.rank));
    for (Index j = 0; j < n; ++j) {
        std::fill(owner.begin(), owner.end(), -1);
        for (Index b = 0; b < m; ++b) {
            owner[static_cast<std::size_t>(universe.labels[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)])] = b;
        }
        for (Index i = 0; i < n; ++i) {
            for (Index a = 0; a < m; ++a) {
                const Index b = owner[static_cast<std::size_t>(universe.labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)])];
                if (b >= 0) x.set(i * m + a, j * m + b, true);
            }
        }
    }
    return x;
}

ConsistencyReport is_cycle_consistent(const BulkPermutation& x) {
    require_partial_permutation_blocks(x);
    if (auto failure = check_identity_and_symmetry(x)) return *failure;
    const BlockMaps maps = all_block_maps(x);
    const Index n = x.n();
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            for (Index l = 0; l < n; ++l) {
                if (auto why = transitivity_violation(maps, n, i, j, l)) {
                    return violated({i, j, l}, *why);
                }
            }
        }
    }
    return {};
}

ConsistencyReport is_cycle_consistent_sampled(const BulkPermutation& x, std::size_t samples,
                                              std::uint64_t seed) {
    require_partial_permutation_blocks(x);
    if (auto failure = check_identity_and_symmetry(x)) return *failure;
    const BlockMaps maps = all_block_maps(x);
    const Index n = x.n();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        const Index i = pick(rng);
        const Index j = pick(rng);
        const Index l = pick(rng);
        if (auto why = transitivity_violation(maps, n, i, j, l)) return violated({i, j, l}, *why);
    }
    return {};
}

std::optional<UniverseAssignment> recover_universe(const BulkPermutation& x) {
    if (!is_cycle_consistent(x)) return std::nullopt;
    const Index n = x.n();
    const Index m = x.m();
    DisjointSets sets(static_cast<std::size_t>(x.size()));
    for (Index r = 0; r < x.size(); ++r) {
        for (Index c = r + 1; c < x.size(); ++c) {
            if (x(r, c)) sets.unite(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    UniverseAssignment universe;
    universe.labels.assign(static_cast<std::size_t>(n), std::vector<Index>(static_cast<std::size_t>(m)));
    std::vector<Index> class_of_root(static_cast<std::size_t>(x.size()), -1);
    Index classes = 0;
    for (Index v = 0; v < x.size(); ++v) {
        const std::size_t root = sets.find(static_cast<std::size_t>(v));
        if (class_of_root[root] < 0) class_of_root[root] = classes++;
        universe.labels[static_cast<std::size_t>(v / m)][static_cast<std::size_t>(v % m)] = class_of_root[root];
    }
    universe.rank = classes;
    return universe;
}

bool is_rank_consistent(const BulkPermutation& x, Index rank) {
    const auto universe = recover_universe(x);
    return universe.has_value() && universe->rank <= rank;
}

}  // namespace kmgm
