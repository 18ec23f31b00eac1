#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sigmasa/assignment.hpp"
#include "sigmasa/core.hpp"
#include "sigmasa/digraph.hpp"

namespace sigmasa {

/// Graph of a pattern relative to a transversal: after the implicit
/// permutation putting T on the diagonal, vertex i is the T-matched pair
/// (row i, column T(i)) and there is an edge u -> v iff (u, T(v)) is in A,
/// u != v.
inline Digraph digraph_of(const SparsityPattern& a, const Transversal& t) {
    if (a.size() != t.size())
        throw std::invalid_argument("digraph_of: size mismatch");
    if (!is_transversal(a, t))
        throw TransversalNotInPattern("digraph_of: transversal not contained in pattern");
    const int n = a.size();
    auto row_of_col = t.row_of_col();
    Digraph g(n);
    for (const auto& [i, j] : a.positions()) {
        int v = row_of_col[j];
        if (i != v) g.add_edge(i, v);
    }
    return g;
}

/// Irreducible block-triangular form of a pattern. Blocks are listed in the
/// deterministic topological order of the condensation (upper BTF: all edges
/// point from earlier to later blocks, so below-diagonal sub-patterns are
/// empty). Within a block, rows and columns both appear in ascending original
/// index, so the presentation does not depend on which transversal the
/// matching happened to find.
struct BtfResult {
    BlockForm form;
    Transversal transversal_used;
    std::vector<std::vector<int>> block_rows; ///< original row indices per block
    std::vector<std::vector<int>> block_cols; ///< original col indices per block
    std::vector<int> block_of_row;            ///< original row -> block
    std::vector<int> block_of_col;            ///< original col -> block

    int p() const { return form.p(); }

    Emblem emblem(const std::vector<std::string>& row_labels,
                  const std::vector<std::string>& col_labels) const {
        return emblem_of(row_labels, col_labels, form);
    }
};

namespace detail {

/// Assembles the BtfResult from a pattern, a transversal of it, and the SCC
/// partition of digraph_of(a, t) (component ids already in topological order).
inline BtfResult btf_from_partition(const SparsityPattern& a, const Transversal& t,
                                    const SccResult& scc) {
    const int n = a.size();
    const int p = static_cast<int>(scc.components.size());
    std::vector<int> row_perm, col_perm, sizes;
    std::vector<std::vector<int>> block_rows(p), block_cols(p);
    std::vector<int> block_of_row(n), block_of_col(n);
    for (int l = 0; l < p; ++l) {
        std::vector<int> rows = scc.components[l]; // already sorted ascending
        std::vector<int> cols;
        for (int r : rows) cols.push_back(t.col(r));
        std::sort(cols.begin(), cols.end());
        for (size_t k = 0; k < rows.size(); ++k) {
            row_perm.push_back(rows[k]);
            col_perm.push_back(cols[k]);
            block_rows[l].push_back(rows[k]);
            block_cols[l].push_back(cols[k]);
            block_of_row[rows[k]] = l;
            block_of_col[cols[k]] = l;
        }
        sizes.push_back(static_cast<int>(rows.size()));
    }
    return BtfResult{BlockForm(Permutation(std::move(row_perm)), Permutation(std::move(col_perm)),
                               std::move(sizes)),
                     t,
                     std::move(block_rows),
                     std::move(block_cols),
                     std::move(block_of_row),
                     std::move(block_of_col)};
}

inline Transversal any_transversal(const SparsityPattern& a) {
    auto match = max_bipartite_matching(a.size(), a.size(), a.row_adjacency());
    if (matching_size(match) != a.size()) throw StructurallySingular();
    return Transversal(std::move(match));
}

} // namespace detail

/// Irreducible BTF with a caller-supplied transversal of the pattern.
inline BtfResult irreducible_btf(const SparsityPattern& a, const Transversal& t) {
    auto scc = strong_components(digraph_of(a, t));
    return detail::btf_from_partition(a, t, scc);
}

inline BtfResult irreducible_btf(const SparsityPattern& a) {
    return irreducible_btf(a, detail::any_transversal(a));
}

/// Coarse blocks: irreducible BTF of S, the pattern of Sigma.
inline BtfResult coarse_blocks(const SignatureMatrix& sm) {
    return irreducible_btf(pattern_of(sm));
}

/// Fine blocks: irreducible BTF of a Jacobian pattern S0(c,d); canonical
/// offsets by default. The emblem is the same for every valid offset pair.
inline BtfResult fine_blocks(const SignatureMatrix& sm,
                             const std::optional<OffsetPair>& off = std::nullopt) {
    OffsetPair used = off ? *off : canonical_offsets(sm);
    return irreducible_btf(jacobian_pattern(sm, used));
}

/// S_ess: union of the diagonal blocks of the fine irreducible BTF of S0,
/// in original indices; equals the union of all HVTs and is independent of
/// the offsets used.
inline SparsityPattern essential_pattern(const SignatureMatrix& sm,
                                         const std::optional<OffsetPair>& off = std::nullopt) {
    OffsetPair used = off ? *off : canonical_offsets(sm);
    SparsityPattern s0 = jacobian_pattern(sm, used);
    BtfResult fine = irreducible_btf(s0);
    std::set<Position> pos;
    for (const auto& [i, j] : s0.positions())
        if (fine.block_of_row[i] == fine.block_of_col[j]) pos.insert({i, j});
    return SparsityPattern(sm.size(), std::move(pos));
}

/// True iff the pattern cannot be permuted to a BTF with more than one block.
inline bool is_irreducible(const SparsityPattern& a) { return irreducible_btf(a).p() == 1; }

/// Fine-block irreducibility of the DAE; offset-independent.
inline bool classify_fine_irreducible(const SignatureMatrix& sm) {
    return fine_blocks(sm).p() == 1;
}

} // namespace sigmasa
