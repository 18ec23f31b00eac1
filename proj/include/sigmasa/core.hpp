#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sigmasa/errors.hpp"
#include "sigmasa/matching.hpp"

namespace sigmasa {

/// Matrix position (row, col), 0-based throughout the library. File formats
/// and reports use 1-based indices at the I/O boundary.
using Position = std::pair<int, int>;

/// (row, col, sigma) of a finite entry.
using Triplet = std::tuple<int, int, int>;

inline std::vector<std::string> default_row_labels(int n) {
    std::vector<std::string> v;
    v.reserve(n);
    for (int i = 1; i <= n; ++i) v.push_back("f" + std::to_string(i));
    return v;
}

inline std::vector<std::string> default_col_labels(int n) {
    std::vector<std::string> v;
    v.reserve(n);
    for (int j = 1; j <= n; ++j) v.push_back("x" + std::to_string(j));
    return v;
}

namespace detail {

inline void check_labels(const std::vector<std::string>& labels, int n, const char* what) {
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) +
                                    " labels, got " + std::to_string(labels.size()));
    std::set<std::string> seen(labels.begin(), labels.end());
    if (static_cast<int>(seen.size()) != n)
        throw std::invalid_argument(std::string(what) + ": labels must be pairwise distinct");
}

} // namespace detail

/// n x n signature matrix. Finite entries are stored sparsely per row; an
/// absent entry means -infinity and never participates in arithmetic.
/// Entry values may be any int internally; the >= 0 restriction is enforced
/// at the parsing boundary (.sig / .dae).
class SignatureMatrix {
public:
    static SignatureMatrix from_triplets(int n, const std::vector<Triplet>& triplets,
                                         std::vector<std::string> row_labels = {},
                                         std::vector<std::string> col_labels = {}) {
        if (n <= 0) throw std::invalid_argument("SignatureMatrix: n must be positive");
        SignatureMatrix m;
        m.n_ = n;
        m.rows_.assign(n, {});
        for (const auto& [i, j, s] : triplets) {
            if (i < 0 || i >= n || j < 0 || j >= n)
                throw std::invalid_argument("SignatureMatrix: position out of range");
            m.rows_[i].emplace_back(j, s);
        }
        for (auto& row : m.rows_) {
            std::sort(row.begin(), row.end());
            for (size_t k = 1; k < row.size(); ++k)
                if (row[k].first == row[k - 1].first)
                    throw std::invalid_argument("SignatureMatrix: duplicate position");
        }
        if (row_labels.empty()) row_labels = default_row_labels(n);
        if (col_labels.empty()) col_labels = default_col_labels(n);
        detail::check_labels(row_labels, n, "row labels");
        detail::check_labels(col_labels, n, "col labels");
        m.row_labels_ = std::move(row_labels);
        m.col_labels_ = std::move(col_labels);
        return m;
    }

    int size() const { return n_; }

    /// sigma_ij, or nullopt for -infinity.
    std::optional<int> sigma(int i, int j) const {
        const auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(j, INT_MIN_SENTINEL));
        if (it != row.end() && it->first == j) return it->second;
        return std::nullopt;
    }

    bool finite(int i, int j) const { return sigma(i, j).has_value(); }

    /// Finite entries of row i as (col, sigma), sorted by column.
    const std::vector<std::pair<int, int>>& row(int i) const { return rows_[i]; }

    /// All finite entries in row-major order.
    std::vector<Triplet> entries() const {
        std::vector<Triplet> out;
        for (int i = 0; i < n_; ++i)
            for (const auto& [j, s] : rows_[i]) out.emplace_back(i, j, s);
        return out;
    }

    int entry_count() const {
        int m = 0;
        for (const auto& row : rows_) m += static_cast<int>(row.size());
        return m;
    }

    int max_sigma() const {
        int s = 0;
        for (const auto& row : rows_)
            for (const auto& [j, v] : row) s = std::max(s, v);
        return s;
    }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    bool operator==(const SignatureMatrix& o) const {
        return n_ == o.n_ && rows_ == o.rows_ && row_labels_ == o.row_labels_ &&
               col_labels_ == o.col_labels_;
    }

private:
    static constexpr int INT_MIN_SENTINEL = std::numeric_limits<int>::min();
    int n_ = 0;
    std::vector<std::vector<std::pair<int, int>>> rows_;
    std::vector<std::string> row_labels_, col_labels_;
};

/// Subset of the n x n positions.
class SparsityPattern {
public:
    SparsityPattern(int n, std::set<Position> positions)
        : n_(n), positions_(std::move(positions)) {
        if (n <= 0) throw std::invalid_argument("SparsityPattern: n must be positive");
        for (const auto& [i, j] : positions_)
            if (i < 0 || i >= n || j < 0 || j >= n)
                throw std::invalid_argument("SparsityPattern: position out of range");
    }

    int size() const { return n_; }
    const std::set<Position>& positions() const { return positions_; }
    bool contains(int i, int j) const { return positions_.count({i, j}) != 0; }
    int count() const { return static_cast<int>(positions_.size()); }

    /// Candidate columns per row, sorted -- the bipartite adjacency.
    std::vector<std::vector<int>> row_adjacency() const {
        std::vector<std::vector<int>> adj(n_);
        for (const auto& [i, j] : positions_) adj[i].push_back(j);
        return adj;
    }

    bool operator==(const SparsityPattern& o) const = default;

private:
    int n_;
    std::set<Position> positions_;
};

/// n positions, one per row and per column. Stored as the matched column of
/// each row; construction validates bijectivity.
class Transversal {
public:
    explicit Transversal(std::vector<int> col_of_row) : col_of_row_(std::move(col_of_row)) {
        const int n = static_cast<int>(col_of_row_.size());
        if (n == 0) throw std::invalid_argument("Transversal: empty");
        std::vector<char> seen(n, 0);
        for (int c : col_of_row_) {
            if (c < 0 || c >= n || seen[c])
                throw std::invalid_argument("Transversal: column map is not a bijection");
            seen[c] = 1;
        }
    }

    static Transversal from_positions(int n, const std::set<Position>& pos) {
        if (static_cast<int>(pos.size()) != n)
            throw std::invalid_argument("Transversal: need exactly n positions");
        std::vector<int> col(n, -1);
        for (const auto& [i, j] : pos) {
            if (i < 0 || i >= n || col[i] != -1)
                throw std::invalid_argument("Transversal: not one position per row");
            col[i] = j;
        }
        return Transversal(std::move(col));
    }

    int size() const { return static_cast<int>(col_of_row_.size()); }
    int col(int row) const { return col_of_row_[row]; }
    const std::vector<int>& col_of_row() const { return col_of_row_; }

    std::vector<int> row_of_col() const {
        std::vector<int> r(col_of_row_.size());
        for (int i = 0; i < size(); ++i) r[col_of_row_[i]] = i;
        return r;
    }

    std::set<Position> positions() const {
        std::set<Position> p;
        for (int i = 0; i < size(); ++i) p.insert({i, col_of_row_[i]});
        return p;
    }

    bool operator==(const Transversal& o) const = default;

private:
    std::vector<int> col_of_row_;
};

/// Equation offsets c and variable offsets d.
struct OffsetPair {
    std::vector<int> c, d;
    bool operator==(const OffsetPair&) const = default;
};

/// Bijective reindexing map: operator()(i) is the original index at permuted
/// position i.
class Permutation {
public:
    explicit Permutation(std::vector<int> forward) : fwd_(std::move(forward)) {
        const int n = static_cast<int>(fwd_.size());
        if (n == 0) throw std::invalid_argument("Permutation: empty");
        std::vector<char> seen(n, 0);
        for (int v : fwd_) {
            if (v < 0 || v >= n || seen[v])
                throw std::invalid_argument("Permutation: map is not a bijection");
            seen[v] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i;
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(fwd_.size()); }
    int operator()(int i) const { return fwd_[i]; }
    const std::vector<int>& forward() const { return fwd_; }

    Permutation inverse() const {
        std::vector<int> inv(fwd_.size());
        for (int i = 0; i < size(); ++i) inv[fwd_[i]] = i;
        return Permutation(std::move(inv));
    }

    bool operator==(const Permutation& o) const = default;

private:
    std::vector<int> fwd_;
};

/// A permuted square-block structure: row/column permutations plus the block
/// size vector (N_1..N_p), sum n.
class BlockForm {
public:
    BlockForm(Permutation row_perm, Permutation col_perm, std::vector<int> block_sizes)
        : row_perm_(std::move(row_perm)), col_perm_(std::move(col_perm)),
          sizes_(std::move(block_sizes)) {
        if (row_perm_.size() != col_perm_.size())
            throw std::invalid_argument("BlockForm: permutation sizes differ");
        if (sizes_.empty()) throw std::invalid_argument("BlockForm: need p >= 1 blocks");
        int total = 0;
        for (int s : sizes_) {
            if (s <= 0) throw std::invalid_argument("BlockForm: block sizes must be positive");
            total += s;
        }
        if (total != row_perm_.size())
            throw std::invalid_argument("BlockForm: block sizes must sum to n");
        starts_.assign(sizes_.size() + 1, 0);
        for (size_t l = 0; l < sizes_.size(); ++l) starts_[l + 1] = starts_[l] + sizes_[l];
    }

    int n() const { return row_perm_.size(); }
    int p() const { return static_cast<int>(sizes_.size()); }
    const Permutation& row_perm() const { return row_perm_; }
    const Permutation& col_perm() const { return col_perm_; }
    const std::vector<int>& block_sizes() const { return sizes_; }

    /// Block containing permuted index i (applies to rows and columns alike).
    int block_of(int i) const {
        auto it = std::upper_bound(starts_.begin(), starts_.end(), i);
        return static_cast<int>(it - starts_.begin()) - 1;
    }

    int block_begin(int l) const { return starts_[l]; }
    int block_end(int l) const { return starts_[l + 1]; }

    bool operator==(const BlockForm& o) const {
        return row_perm_ == o.row_perm_ && col_perm_ == o.col_perm_ && sizes_ == o.sizes_;
    }

private:
    Permutation row_perm_, col_perm_;
    std::vector<int> sizes_;
    std::vector<int> starts_;
};

using LabelSet = std::set<std::string>;

/// Order-free identity of a square-block form: the set of (row-label-set,
/// column-label-set) pairs. Equality is plain set equality.
class Emblem {
public:
    explicit Emblem(std::set<std::pair<LabelSet, LabelSet>> pairs) : pairs_(std::move(pairs)) {
        std::set<std::string> rows, cols;
        for (const auto& [r, c] : pairs_) {
            if (r.size() != c.size())
                throw std::invalid_argument("Emblem: |R_l| must equal |C_l|");
            if (r.empty()) throw std::invalid_argument("Emblem: empty block");
            for (const auto& s : r)
                if (!rows.insert(s).second)
                    throw std::invalid_argument("Emblem: row sets are not disjoint");
            for (const auto& s : c)
                if (!cols.insert(s).second)
                    throw std::invalid_argument("Emblem: column sets are not disjoint");
        }
    }

    const std::set<std::pair<LabelSet, LabelSet>>& pairs() const { return pairs_; }
    int block_count() const { return static_cast<int>(pairs_.size()); }
    bool operator==(const Emblem& o) const = default;

private:
    std::set<std::pair<LabelSet, LabelSet>> pairs_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// S: the finite positions of Sigma.
inline SparsityPattern pattern_of(const SignatureMatrix& sm) {
    std::set<Position> pos;
    for (int i = 0; i < sm.size(); ++i)
        for (const auto& [j, s] : sm.row(i)) pos.insert({i, j});
    return SparsityPattern(sm.size(), std::move(pos));
}

inline bool is_transversal(const SparsityPattern& a, const Transversal& t) {
    if (a.size() != t.size())
        throw std::invalid_argument("is_transversal: size mismatch");
    for (int i = 0; i < t.size(); ++i)
        if (!a.contains(i, t.col(i))) return false;
    return true;
}

/// val(T) = sum of sigma over the positions of T.
inline long long transversal_value(const SignatureMatrix& sm, const Transversal& t) {
    if (sm.size() != t.size())
        throw std::invalid_argument("transversal_value: size mismatch");
    long long v = 0;
    for (int i = 0; i < t.size(); ++i) {
        auto s = sm.sigma(i, t.col(i));
        if (!s)
            throw InfinitePosition("transversal_value: position (" + std::to_string(i + 1) +
                                   "," + std::to_string(t.col(i) + 1) + ") is -inf");
        v += *s;
    }
    return v;
}

inline bool is_structurally_well_posed(const SignatureMatrix& sm) {
    auto match = max_bipartite_matching(sm.size(), sm.size(), pattern_of(sm).row_adjacency());
    return matching_size(match) == sm.size();
}

namespace detail {

/// Positions where d_j - c_i = sigma_ij.
inline std::set<Position> equality_positions(const SignatureMatrix& sm, const OffsetPair& off) {
    std::set<Position> eq;
    for (int i = 0; i < sm.size(); ++i)
        for (const auto& [j, s] : sm.row(i))
            if (off.d[j] - off.c[i] == s) eq.insert({i, j});
    return eq;
}

/// If off is a general offset pair, returns a transversal on which equality
/// holds (a HVT); nullopt otherwise.
inline std::optional<Transversal> general_witness(const SignatureMatrix& sm,
                                                  const OffsetPair& off) {
    const int n = sm.size();
    if (static_cast<int>(off.c.size()) != n || static_cast<int>(off.d.size()) != n)
        throw std::invalid_argument("offsets: size mismatch");
    for (int i = 0; i < n; ++i)
        for (const auto& [j, s] : sm.row(i))
            if (off.d[j] - off.c[i] < s) return std::nullopt;
    std::vector<std::vector<int>> adj(n);
    for (const auto& [i, j] : equality_positions(sm, off)) adj[i].push_back(j);
    auto match = max_bipartite_matching(n, n, adj);
    if (matching_size(match) != n) return std::nullopt;
    return Transversal(std::move(match));
}

inline bool offsets_valid(const SignatureMatrix& sm, const OffsetPair& off) {
    if (!general_witness(sm, off)) return false;
    return std::all_of(off.c.begin(), off.c.end(), [](int v) { return v >= 0; });
}

} // namespace detail

/// S0(c,d): positions with d_j - c_i = sigma_ij. Requires valid offsets.
inline SparsityPattern jacobian_pattern(const SignatureMatrix& sm, const OffsetPair& off) {
    if (!detail::offsets_valid(sm, off))
        throw InvalidOffsets("jacobian_pattern: offsets are not valid for this matrix");
    return SparsityPattern(sm.size(), detail::equality_positions(sm, off));
}

/// (i,j) in result iff (rho(i), kappa(j)) in A.
inline SparsityPattern permute_pattern(const SparsityPattern& a, const Permutation& rho,
                                       const Permutation& kappa) {
    if (rho.size() != a.size() || kappa.size() != a.size())
        throw std::invalid_argument("permute_pattern: size mismatch");
    auto rho_inv = rho.inverse();
    auto kappa_inv = kappa.inverse();
    std::set<Position> pos;
    for (const auto& [i, j] : a.positions()) pos.insert({rho_inv(i), kappa_inv(j)});
    return SparsityPattern(a.size(), std::move(pos));
}

/// sigma~_ij = sigma_{rho(i),kappa(j)}; labels are carried along.
inline SignatureMatrix permute_sigma(const SignatureMatrix& sm, const Permutation& rho,
                                     const Permutation& kappa) {
    if (rho.size() != sm.size() || kappa.size() != sm.size())
        throw std::invalid_argument("permute_sigma: size mismatch");
    auto kappa_inv = kappa.inverse();
    std::vector<Triplet> trips;
    std::vector<std::string> rl(sm.size()), cl(sm.size());
    for (int i = 0; i < sm.size(); ++i) {
        rl[i] = sm.row_labels()[rho(i)];
        cl[i] = sm.col_labels()[kappa(i)];
    }
    auto rho_inv = rho.inverse();
    for (const auto& [i, j, s] : sm.entries()) trips.emplace_back(rho_inv(i), kappa_inv(j), s);
    return SignatureMatrix::from_triplets(sm.size(), trips, std::move(rl), std::move(cl));
}

/// Restriction of Sigma to the given original rows/columns, in the given
/// order, regarded as a free-standing signature matrix. Labels carried.
inline SignatureMatrix submatrix(const SignatureMatrix& sm, const std::vector<int>& rows,
                                 const std::vector<int>& cols) {
    if (rows.size() != cols.size() || rows.empty())
        throw std::invalid_argument("submatrix: need equally many rows and columns");
    const int m = static_cast<int>(rows.size());
    std::vector<int> col_pos(sm.size(), -1);
    for (int q = 0; q < m; ++q) col_pos[cols[q]] = q;
    std::vector<Triplet> trips;
    std::vector<std::string> rl(m), cl(m);
    for (int q = 0; q < m; ++q) {
        rl[q] = sm.row_labels()[rows[q]];
        cl[q] = sm.col_labels()[cols[q]];
    }
    for (int q = 0; q < m; ++q)
        for (const auto& [j, s] : sm.row(rows[q]))
            if (col_pos[j] >= 0) trips.emplace_back(q, col_pos[j], s);
    return SignatureMatrix::from_triplets(m, trips, std::move(rl), std::move(cl));
}

/// Emblem of a block form over the given original labels.
inline Emblem emblem_of(const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels, const BlockForm& bf) {
    if (static_cast<int>(row_labels.size()) != bf.n() ||
        static_cast<int>(col_labels.size()) != bf.n())
        throw std::invalid_argument("emblem_of: label count mismatch");
    std::set<std::pair<LabelSet, LabelSet>> pairs;
    for (int l = 0; l < bf.p(); ++l) {
        LabelSet r, c;
        for (int k = bf.block_begin(l); k < bf.block_end(l); ++k) {
            r.insert(row_labels[bf.row_perm()(k)]);
            c.insert(col_labels[bf.col_perm()(k)]);
        }
        pairs.insert({std::move(r), std::move(c)});
    }
    return Emblem(std::move(pairs));
}

inline bool emblems_equal(const Emblem& a, const Emblem& b) { return a == b; }

} // namespace sigmasa
