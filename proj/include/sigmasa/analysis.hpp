#pragma once

#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "sigmasa/assignment.hpp"
#include "sigmasa/blocktri.hpp"
#include "sigmasa/core.hpp"
#include "sigmasa/fineblock.hpp"

namespace sigmasa {

namespace detail {

/// Runs body(0..count-1), chunked over worker threads when threads > 1.
/// Each call writes only its own result slot, so the merged outcome is
/// identical to the sequential loop regardless of scheduling. The first
/// exception, if any, is rethrown on the caller thread.
template <class F>
inline void parallel_for(int count, unsigned threads, F&& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail

struct AnalyzeOptions {
    std::optional<OffsetPair> offsets; ///< override offsets for the fine analysis
    unsigned threads = 1;              ///< per-coarse-block parallelism
};

/// Everything the Sigma-method structural analysis produces for one system.
struct DaeAnalysis {
    SignatureMatrix sigma;
    Transversal hvt;
    long long val = 0;
    OffsetPair canonical; ///< canonical offsets of the whole system
    OffsetPair used;      ///< offsets the fine analysis was run with
    BtfResult coarse;
    BtfResult fine;
    SparsityPattern sess;
    FineBlockGraph fbg;
    LeadTimeVector canonical_k;
    OffsetSetClass classification = OffsetSetClass::Unique;
};

/// Full analysis via the bootstrap scheme: coarse BTF of S first, then the
/// expensive per-coarse-block work (assignment solves, fine strong
/// components, local offsets) runs block by block -- independently, and in
/// parallel when options.threads > 1. Results are merged deterministically,
/// so the report is bit-identical to a sequential run.
inline DaeAnalysis analyze(const SignatureMatrix& sm, const AnalyzeOptions& options = {}) {
    const int n = sm.size();
    const SparsityPattern s = pattern_of(sm);

    // Coarse BTF (any transversal of S; throws when structurally singular).
    Transversal coarse_t = [&] {
        auto match = max_bipartite_matching(n, n, s.row_adjacency());
        if (matching_size(match) != n) throw StructurallyIllPosed();
        return Transversal(std::move(match));
    }();
    BtfResult coarse = irreducible_btf(s, coarse_t);

    // Per-coarse-block assignment solves; block HVTs assemble to a global HVT
    // because every transversal lives inside the diagonal blocks.
    std::vector<int> hvt_cols(n, -1);
    {
        std::vector<std::optional<Transversal>> block_hvt(coarse.p());
        detail::parallel_for(coarse.p(), options.threads, [&](int l) {
            auto block = submatrix(sm, coarse.block_rows[l], coarse.block_cols[l]);
            block_hvt[l] = solve_hvt(block).hvt;
        });
        for (int l = 0; l < coarse.p(); ++l) {
            const auto& rows = coarse.block_rows[l];
            const auto& cols = coarse.block_cols[l];
            for (size_t k = 0; k < rows.size(); ++k)
                hvt_cols[rows[k]] = cols[block_hvt[l]->col(static_cast<int>(k))];
        }
    }
    Transversal hvt{std::move(hvt_cols)};

    DaeAnalysis res{sm,
                    hvt,
                    transversal_value(sm, hvt),
                    detail::canonical_from_hvt(sm, hvt),
                    OffsetPair{},
                    coarse,
                    coarse, // placeholder, replaced below
                    SparsityPattern(n, {}),
                    FineBlockGraph{0, coarse, {}, {}, {}, {}, {}, {}, {}, {}},
                    {},
                    OffsetSetClass::Unique};

    if (options.offsets) {
        if (!detail::offsets_valid(sm, *options.offsets))
            throw InvalidOffsets("analyze: supplied offsets are not valid for this system");
        res.used = *options.offsets;
    } else {
        res.used = res.canonical;
    }

    const SparsityPattern s0 = jacobian_pattern(sm, res.used);

    // Fine strong components, computed per coarse block: fine blocks refine
    // coarse blocks, so the global SCC partition of graph(S0, T) is the union
    // of the per-block partitions. T is contained in S0 (equality holds on
    // every HVT), hence restricts to a transversal of each diagonal block.
    {
        auto row_of_col = hvt.row_of_col();
        std::vector<std::vector<std::vector<int>>> block_comps(coarse.p());
        detail::parallel_for(coarse.p(), options.threads, [&](int l) {
            const auto& rows = coarse.block_rows[l];
            std::vector<char> in_block(n, 0);
            for (int r : rows) in_block[r] = 1;
            Digraph g(static_cast<int>(rows.size()));
            std::vector<int> local_of(n, -1);
            for (size_t k = 0; k < rows.size(); ++k) local_of[rows[k]] = static_cast<int>(k);
            for (int r : rows)
                for (const auto& [j, sig] : sm.row(r)) {
                    if (res.used.d[j] - res.used.c[r] != sig) continue; // not in S0
                    int v = row_of_col[j];
                    if (!in_block[v] || v == r) continue;
                    g.add_edge(local_of[r], local_of[v]);
                }
            auto scc = strong_components(g);
            for (const auto& comp : scc.components) {
                std::vector<int> orig;
                for (int v : comp) orig.push_back(rows[v]);
                block_comps[l].push_back(std::move(orig));
            }
        });
        // Merge to a global component numbering, then rebuild the global
        // condensation and renumber with the same deterministic rule the
        // direct path uses, so both paths produce the same BtfResult.
        std::vector<int> comp_of(n, -1);
        int raw_count = 0;
        for (const auto& comps : block_comps)
            for (const auto& comp : comps) {
                for (int r : comp) comp_of[r] = raw_count;
                ++raw_count;
            }
        Digraph fine_graph = digraph_of(s0, hvt);
        Digraph raw_cond(raw_count);
        for (const auto& [u, v] : fine_graph.edges())
            if (comp_of[u] != comp_of[v]) raw_cond.add_edge(comp_of[u], comp_of[v]);
        std::vector<int> comp_key(raw_count, n);
        for (int r = 0; r < n; ++r) comp_key[comp_of[r]] = std::min(comp_key[comp_of[r]], r);
        auto order = topological_order(raw_cond, comp_key);
        SccResult scc;
        scc.component_of.assign(n, -1);
        scc.components.assign(raw_count, {});
        std::vector<int> new_id(raw_count, -1);
        for (int pos = 0; pos < raw_count; ++pos) new_id[(*order)[pos]] = pos;
        for (int r = 0; r < n; ++r) {
            scc.component_of[r] = new_id[comp_of[r]];
            scc.components[scc.component_of[r]].push_back(r);
        }
        res.fine = detail::btf_from_partition(s0, hvt, scc);
    }

    // S_ess: union of the fine diagonal blocks of S0.
    {
        std::set<Position> pos;
        for (const auto& [i, j] : s0.positions())
            if (res.fine.block_of_row[i] == res.fine.block_of_col[j]) pos.insert({i, j});
        res.sess = SparsityPattern(n, std::move(pos));
    }

    // Local offsets, grouped per coarse block so the solves stay independent.
    {
        std::vector<int> lc(n), ld(n);
        std::vector<int> fine_to_coarse(res.fine.p());
        for (int l = 0; l < res.fine.p(); ++l)
            fine_to_coarse[l] = coarse.block_of_row[res.fine.block_rows[l][0]];
        std::vector<std::vector<int>> fines_of_coarse(coarse.p());
        for (int l = 0; l < res.fine.p(); ++l) fines_of_coarse[fine_to_coarse[l]].push_back(l);
        std::vector<int> fine_start(res.fine.p(), 0);
        for (int l = 1; l < res.fine.p(); ++l)
            fine_start[l] = fine_start[l - 1] + static_cast<int>(res.fine.block_rows[l - 1].size());
        detail::parallel_for(coarse.p(), options.threads, [&](int cb) {
            for (int l : fines_of_coarse[cb]) {
                auto block = submatrix(sm, res.fine.block_rows[l], res.fine.block_cols[l]);
                OffsetPair off = canonical_offsets(block);
                for (size_t k = 0; k < off.c.size(); ++k) {
                    lc[fine_start[l] + static_cast<int>(k)] = off.c[k];
                    ld[fine_start[l] + static_cast<int>(k)] = off.d[k];
                }
            }
        });
        res.fbg = detail::build_fbg_from(sm, res.fine, std::move(lc), std::move(ld));
    }

    res.canonical_k = canonical_lead_times(res.fbg);
    res.classification = classify_offset_set(res.fbg);
    return res;
}

} // namespace sigmasa
