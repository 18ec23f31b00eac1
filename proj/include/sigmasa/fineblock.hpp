#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sigmasa/assignment.hpp"
#include "sigmasa/blocktri.hpp"
#include "sigmasa/core.hpp"
#include "sigmasa/digraph.hpp"

namespace sigmasa {

/// Lead times K_1..K_p, one per fine block.
using LeadTimeVector = std::vector<int>;

/// FBG edge k -> l with weight W_kl; block ids are 0-based.
struct FbgEdge {
    int from = 0;
    int to = 0;
    int weight = 0;
    bool operator==(const FbgEdge&) const = default;
};

/// Weighted fine-block graph. Vertices are the fine blocks in the
/// deterministic order of the fine BTF; each inequality K_l - K_k >= W_kl of
/// the block-inequality system is one edge. Only the largest W per ordered
/// pair is kept, and only off-block-diagonal nonempty sub-patterns of S
/// contribute. Every directed cycle has strictly negative weight sum.
struct FineBlockGraph {
    int p = 0;
    BtfResult fine;                           ///< fine BTF the graph is built on
    std::vector<std::string> row_labels, col_labels;
    std::vector<int> local_c, local_d;        ///< canonical local offsets, permuted order
    std::vector<int> local_c_row, local_d_col; ///< same, indexed by original row/col
    std::vector<int> anchors;                 ///< original row i_l with local c = 0, per block
    std::vector<FbgEdge> edges;               ///< sorted by (from, to)

    Digraph digraph() const {
        Digraph g(p);
        for (const auto& e : edges) g.add_edge(e.from, e.to);
        return g;
    }

    /// Enumerated fine blocks as label sets.
    Emblem blocks_emblem() const { return fine.emblem(row_labels, col_labels); }
};

/// Canonical local offsets: per fine diagonal block, the canonical offsets of
/// Sigma_ll as a free-standing signature matrix, assembled in permuted order.
inline std::pair<std::vector<int>, std::vector<int>> local_offsets(const SignatureMatrix& sm,
                                                                   const BtfResult& fine) {
    const int n = sm.size();
    std::vector<int> lc(n), ld(n);
    int base = 0;
    for (int l = 0; l < fine.p(); ++l) {
        auto block = submatrix(sm, fine.block_rows[l], fine.block_cols[l]);
        OffsetPair off = canonical_offsets(block);
        const int sz = static_cast<int>(fine.block_rows[l].size());
        for (int k = 0; k < sz; ++k) {
            lc[base + k] = off.c[k];
            ld[base + k] = off.d[k];
        }
        base += sz;
    }
    return {std::move(lc), std::move(ld)};
}

namespace detail {

inline FineBlockGraph build_fbg_from(const SignatureMatrix& sm, BtfResult fine,
                                     std::vector<int> local_c, std::vector<int> local_d) {
    const int n = sm.size();
    const int p = fine.p();
    FineBlockGraph fbg{p,
                       std::move(fine),
                       sm.row_labels(),
                       sm.col_labels(),
                       std::move(local_c),
                       std::move(local_d),
                       std::vector<int>(n),
                       std::vector<int>(n),
                       {},
                       {}};
    for (int k = 0; k < n; ++k) {
        fbg.local_c_row[fbg.fine.form.row_perm()(k)] = fbg.local_c[k];
        fbg.local_d_col[fbg.fine.form.col_perm()(k)] = fbg.local_d[k];
    }
    fbg.anchors.assign(p, -1);
    for (int l = 0; l < p; ++l)
        for (int r : fbg.fine.block_rows[l])
            if (fbg.local_c_row[r] == 0 && (fbg.anchors[l] == -1 || r < fbg.anchors[l]))
                fbg.anchors[l] = r;

    constexpr int NONE = std::numeric_limits<int>::min();
    std::vector<std::vector<int>> best(p, std::vector<int>(p, NONE));
    for (const auto& [i, j, s] : sm.entries()) {
        const int k = fbg.fine.block_of_row[i];
        const int l = fbg.fine.block_of_col[j];
        if (k == l) continue;
        best[k][l] = std::max(best[k][l], s - fbg.local_d_col[j] + fbg.local_c_row[i]);
    }
    for (int k = 0; k < p; ++k)
        for (int l = 0; l < p; ++l)
            if (best[k][l] != NONE) fbg.edges.push_back({k, l, best[k][l]});
    return fbg;
}

} // namespace detail

/// Fine blocks, canonical local offsets, anchors and all weighted edges.
inline FineBlockGraph build_fbg(const SignatureMatrix& sm) {
    BtfResult fine = fine_blocks(sm);
    auto [lc, ld] = local_offsets(sm, fine);
    return detail::build_fbg_from(sm, std::move(fine), std::move(lc), std::move(ld));
}

struct LeadTimeCheck {
    bool solution = false;
    bool valid = false;
    bool normalised = false;
};

inline LeadTimeCheck check_lead_times(const FineBlockGraph& fbg, const LeadTimeVector& k) {
    if (static_cast<int>(k.size()) != fbg.p)
        throw std::invalid_argument("check_lead_times: |K| must equal p");
    LeadTimeCheck res;
    res.solution = std::all_of(fbg.edges.begin(), fbg.edges.end(), [&](const FbgEdge& e) {
        return k[e.to] - k[e.from] >= e.weight;
    });
    res.valid = res.solution && std::all_of(k.begin(), k.end(), [](int x) { return x >= 0; });
    res.normalised = res.valid && *std::min_element(k.begin(), k.end()) == 0;
    return res;
}

/// psi: the lead-time vector of a general offset vector c, K_l = c_{i_l}.
/// Verifies that c - local_c is constant on each block and throws
/// NotBlockConstant otherwise (c is then not a general offset vector).
inline LeadTimeVector lead_times(const FineBlockGraph& fbg, const std::vector<int>& c) {
    if (static_cast<int>(c.size()) != static_cast<int>(fbg.local_c_row.size()))
        throw std::invalid_argument("lead_times: |c| must equal n");
    LeadTimeVector k(fbg.p);
    for (int l = 0; l < fbg.p; ++l) k[l] = c[fbg.anchors[l]];
    for (size_t i = 0; i < c.size(); ++i) {
        const int l = fbg.fine.block_of_row[static_cast<int>(i)];
        if (c[i] - fbg.local_c_row[i] != k[l])
            throw NotBlockConstant("lead_times: c - local c is not constant on block " +
                                   std::to_string(l + 1));
    }
    return k;
}

/// psi^-1: c_i = K_l + local_c_i and d_j = K_l + local_d_j, original order.
/// K must solve the block inequalities.
inline OffsetPair offsets_from_lead_times(const FineBlockGraph& fbg, const LeadTimeVector& k) {
    if (!check_lead_times(fbg, k).solution)
        throw NotASolution("offsets_from_lead_times: K violates a block inequality");
    const int n = static_cast<int>(fbg.local_c_row.size());
    OffsetPair off;
    off.c.resize(n);
    off.d.resize(n);
    for (int i = 0; i < n; ++i) off.c[i] = k[fbg.fine.block_of_row[i]] + fbg.local_c_row[i];
    for (int j = 0; j < n; ++j) off.d[j] = k[fbg.fine.block_of_col[j]] + fbg.local_d_col[j];
    return off;
}

/// Elementwise-smallest valid solution of the block inequalities, by the
/// longest-path fixpoint K := 0; K_l := max(K_l, K_k + W_kl, 0). Terminates
/// because every cycle has negative weight sum; the cap signals a violated
/// invariant, not user error.
inline LeadTimeVector canonical_lead_times(const FineBlockGraph& fbg) {
    LeadTimeVector k(fbg.p, 0);
    int max_w = 0;
    for (const auto& e : fbg.edges) max_w = std::max(max_w, e.weight);
    const long long cap =
        static_cast<long long>(fbg.p) * (static_cast<long long>(fbg.p) * max_w + 1) + 1;
    for (long long iter = 0;; ++iter) {
        if (iter > cap)
            throw InternalNonConvergence(
                "canonical_lead_times: fixpoint exceeded iteration cap (positive cycle?)");
        bool changed = false;
        for (const auto& e : fbg.edges) {
            if (k[e.to] < k[e.from] + e.weight) {
                k[e.to] = k[e.from] + e.weight;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return k;
}

enum class OffsetSetClass { Unique, FiniteMultiple, Infinite };

inline const char* to_string(OffsetSetClass c) {
    switch (c) {
    case OffsetSetClass::Unique: return "unique";
    case OffsetSetClass::FiniteMultiple: return "finite_multiple";
    case OffsetSetClass::Infinite: return "infinite";
    }
    return "?";
}

/// unique iff p = 1; infinite iff the FBG has more than one strong component
/// (iff the DAE is coarse-block reducible); finite_multiple otherwise.
inline OffsetSetClass classify_offset_set(const FineBlockGraph& fbg) {
    if (fbg.p == 1) return OffsetSetClass::Unique;
    if (strong_components(fbg.digraph()).components.size() > 1) return OffsetSetClass::Infinite;
    return OffsetSetClass::FiniteMultiple;
}

struct LeadTimeEnumeration {
    std::vector<LeadTimeVector> vectors; ///< lexicographically sorted
    bool truncated = false; ///< set when the solution set is provably infinite
};

/// All normalised solutions with max_l K_l <= bound, in lexicographic order.
/// Depth-first over blocks with per-vertex interval pruning from edges into
/// the already-assigned prefix; matches the oracle grid search exactly.
inline LeadTimeEnumeration enumerate_normalised_lead_times(const FineBlockGraph& fbg, int bound) {
    if (bound < 0) throw std::invalid_argument("enumerate_normalised_lead_times: bound < 0");
    const int p = fbg.p;
    std::vector<std::vector<std::pair<int, int>>> in_edges(p), out_edges(p);
    for (const auto& e : fbg.edges) {
        in_edges[e.to].emplace_back(e.from, e.weight);
        out_edges[e.from].emplace_back(e.to, e.weight);
    }
    LeadTimeEnumeration res;
    LeadTimeVector k(p, 0);
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == p) {
            if (*std::min_element(k.begin(), k.end()) == 0) res.vectors.push_back(k);
            return;
        }
        int lo = 0, hi = bound;
        for (const auto& [from, w] : in_edges[v])
            if (from < v) lo = std::max(lo, k[from] + w);
        for (const auto& [to, w] : out_edges[v])
            if (to < v) hi = std::min(hi, k[to] - w);
        for (int val = lo; val <= hi; ++val) {
            k[v] = val;
            self(self, v + 1);
        }
    };
    dfs(dfs, 0);
    std::sort(res.vectors.begin(), res.vectors.end());
    res.truncated = classify_offset_set(fbg) == OffsetSetClass::Infinite;
    return res;
}

/// Edges satisfied with equality by a solution K. Always acyclic; a cycle
/// would breach the negative-cycle invariant and raises InternalCycle.
inline Digraph critical_subgraph(const FineBlockGraph& fbg, const LeadTimeVector& k) {
    if (!check_lead_times(fbg, k).solution)
        throw NotASolution("critical_subgraph: K violates a block inequality");
    Digraph g(fbg.p);
    for (const auto& e : fbg.edges)
        if (k[e.to] - k[e.from] == e.weight) g.add_edge(e.from, e.to);
    if (!topological_order(g))
        throw InternalCycle("critical_subgraph: critical edges contain a cycle");
    return g;
}

namespace detail {

inline std::vector<int> block_min_row_keys(const FineBlockGraph& fbg) {
    std::vector<int> key(fbg.p);
    for (int l = 0; l < fbg.p; ++l)
        key[l] = *std::min_element(fbg.fine.block_rows[l].begin(), fbg.fine.block_rows[l].end());
    return key;
}

} // namespace detail

/// One block ordering that puts S0 into BTF for this K: a topological sort of
/// the critical subgraph, min-row-label tie-break.
inline std::vector<int> btf_block_order(const FineBlockGraph& fbg, const LeadTimeVector& k) {
    Digraph crit = critical_subgraph(fbg, k);
    auto order = topological_order(crit, detail::block_min_row_keys(fbg));
    return *order; // critical subgraph is acyclic, so an order always exists
}

/// True iff the given block order is a topological sort of the K-critical
/// subgraph, i.e. iff it puts S0(psi^-1(K)) into BTF.
inline bool is_btf_order(const FineBlockGraph& fbg, const LeadTimeVector& k,
                         const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != fbg.p)
        throw std::invalid_argument("is_btf_order: order size mismatch");
    std::vector<int> pos(fbg.p, -1);
    for (int idx = 0; idx < fbg.p; ++idx) {
        const int b = order[idx];
        if (b < 0 || b >= fbg.p || pos[b] != -1)
            throw std::invalid_argument("is_btf_order: order is not a permutation of blocks");
        pos[b] = idx;
    }
    Digraph crit = critical_subgraph(fbg, k);
    for (const auto& [u, v] : crit.edges())
        if (pos[u] >= pos[v]) return false;
    return true;
}

/// Coarse emblem obtained by uniting fine blocks within each strong component
/// of the FBG; equals the emblem of coarse_blocks.
inline Emblem coarse_via_fbg(const FineBlockGraph& fbg) {
    auto scc = strong_components(fbg.digraph(), detail::block_min_row_keys(fbg));
    std::set<std::pair<LabelSet, LabelSet>> pairs;
    for (const auto& comp : scc.components) {
        LabelSet rows, cols;
        for (int l : comp) {
            for (int r : fbg.fine.block_rows[l]) rows.insert(fbg.row_labels[r]);
            for (int c : fbg.fine.block_cols[l]) cols.insert(fbg.col_labels[c]);
        }
        pairs.insert({std::move(rows), std::move(cols)});
    }
    return Emblem(std::move(pairs));
}

} // namespace sigmasa
