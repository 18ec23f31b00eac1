#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "sigmasa/core.hpp"
#include "sigmasa/errors.hpp"

namespace sigmasa {

struct HvtResult {
    Transversal hvt;
    long long value = 0;
};

/// Highest-value transversal via shortest augmenting paths on the bipartite
/// graph of finite entries (a sparse Jonker-Volgenant scheme on costs -sigma,
/// exact integer arithmetic, absent entries are forbidden edges).
///
/// Invariant maintained: reduced costs cost(i,j) - u[i] - v[j] are >= 0 on all
/// finite entries and 0 on matched ones; the initial row reduction
/// establishes it and each potential update preserves it, so Dijkstra labels
/// never go through a negative edge.
inline HvtResult solve_hvt(const SignatureMatrix& sm) {
    const int n = sm.size();
    constexpr long long INF = std::numeric_limits<long long>::max() / 4;

    std::vector<long long> u(n, 0), v(n, 0);
    std::vector<int> match_col(n, -1); // column -> row
    std::vector<int> match_row(n, -1); // row -> column

    for (int i = 0; i < n; ++i) {
        if (sm.row(i).empty()) throw StructurallyIllPosed();
        long long best = INF;
        for (const auto& [j, s] : sm.row(i)) best = std::min(best, -static_cast<long long>(s));
        u[i] = best;
    }

    std::vector<long long> dist(n);
    std::vector<int> par_row(n);
    std::vector<char> done(n);

    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), INF);
        std::fill(par_row.begin(), par_row.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        for (const auto& [j, s] : sm.row(root)) {
            dist[j] = -static_cast<long long>(s) - u[root] - v[j];
            par_row[j] = root;
        }
        int free_col = -1;
        long long free_dist = 0;
        while (true) {
            int jmin = -1;
            long long dmin = INF;
            for (int j = 0; j < n; ++j)
                if (!done[j] && dist[j] < dmin) {
                    dmin = dist[j];
                    jmin = j;
                }
            if (jmin == -1) throw StructurallyIllPosed();
            done[jmin] = 1;
            if (match_col[jmin] == -1) {
                free_col = jmin;
                free_dist = dmin;
                break;
            }
            const int i = match_col[jmin];
            for (const auto& [j2, s2] : sm.row(i)) {
                if (done[j2]) continue;
                long long nd = dmin - static_cast<long long>(s2) - u[i] - v[j2];
                if (nd < dist[j2]) {
                    dist[j2] = nd;
                    par_row[j2] = i;
                }
            }
        }
        // Potential update over the scanned part of the tree.
        u[root] += free_dist;
        for (int j = 0; j < n; ++j) {
            if (!done[j] || j == free_col) continue;
            v[j] += dist[j] - free_dist;
            u[match_col[j]] += free_dist - dist[j];
        }
        // Augment along the parent chain.
        int j = free_col;
        while (true) {
            const int i = par_row[j];
            const int prev = match_row[i];
            match_col[j] = i;
            match_row[i] = j;
            if (i == root) break;
            j = prev;
        }
    }

    Transversal t{std::vector<int>(match_row)};
    return {t, transversal_value(sm, t)};
}

namespace detail {

/// Canonical offsets from a known HVT by the standard smallest-dual fixpoint:
/// c := 0; repeat { d_j := max over finite sigma_ij of sigma_ij + c_i;
/// c_i := d_{T(i)} - sigma_{i,T(i)} } until unchanged. Monotone from below and
/// bounded by every valid pair, so the fixpoint is the elementwise-smallest
/// one. Cap n*(max sigma + 1) + 1 sweeps; exceeding it means a bug.
inline OffsetPair canonical_from_hvt(const SignatureMatrix& sm, const Transversal& hvt) {
    const int n = sm.size();
    std::vector<std::vector<std::pair<int, int>>> cols(n); // per column: (row, sigma)
    for (const auto& [i, j, s] : sm.entries()) cols[j].emplace_back(i, s);

    std::vector<int> c(n, 0), d(n, 0);
    std::vector<int> diag_sigma(n);
    for (int i = 0; i < n; ++i) {
        auto s = sm.sigma(i, hvt.col(i));
        if (!s) throw InfinitePosition("canonical_offsets: transversal hits a -inf entry");
        diag_sigma[i] = *s;
    }

    const long long cap = static_cast<long long>(n) * (std::max(sm.max_sigma(), 0) + 1) + 1;
    for (long long iter = 0;; ++iter) {
        if (iter > cap)
            throw InternalNonConvergence("canonical_offsets: fixpoint exceeded iteration cap");
        bool changed = false;
        for (int j = 0; j < n; ++j) {
            int best = std::numeric_limits<int>::min();
            for (const auto& [i, s] : cols[j]) best = std::max(best, s + c[i]);
            if (best != d[j]) {
                d[j] = best;
                changed = true;
            }
        }
        for (int i = 0; i < n; ++i) {
            int nc = d[hvt.col(i)] - diag_sigma[i];
            if (nc != c[i]) {
                c[i] = nc;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return {std::move(c), std::move(d)};
}

} // namespace detail

/// The unique elementwise-smallest valid offset pair.
inline OffsetPair canonical_offsets(const SignatureMatrix& sm) {
    return detail::canonical_from_hvt(sm, solve_hvt(sm).hvt);
}

struct OffsetClassification {
    bool is_general = false;
    bool is_valid = false;
    bool is_normalised = false;
    std::optional<Transversal> witness_hvt; ///< equality transversal when general
};

/// Classifies (c,d) against Sigma. General means the dual inequalities hold
/// everywhere finite and the equality sub-pattern contains a transversal
/// (found by maximum matching; it is then a HVT and equality holds on all
/// HVTs). Valid adds c >= 0, normalised adds min c = 0.
inline OffsetClassification check_offsets(const SignatureMatrix& sm, const OffsetPair& off) {
    OffsetClassification cls;
    auto witness = detail::general_witness(sm, off);
    if (!witness) return cls;
    cls.is_general = true;
    cls.witness_hvt = std::move(witness);
    cls.is_valid = std::all_of(off.c.begin(), off.c.end(), [](int x) { return x >= 0; });
    cls.is_normalised =
        cls.is_valid && *std::min_element(off.c.begin(), off.c.end()) == 0;
    return cls;
}

/// d from c through a HVT: d_j = c_i + sigma_ij for (i,j) in T. For general
/// offsets this is independent of the HVT chosen.
inline std::vector<int> d_from_c(const SignatureMatrix& sm, const Transversal& hvt,
                                 const std::vector<int>& c) {
    const int n = sm.size();
    if (static_cast<int>(c.size()) != n)
        throw std::invalid_argument("d_from_c: size mismatch");
    std::vector<int> d(n, 0);
    for (int i = 0; i < n; ++i) {
        auto s = sm.sigma(i, hvt.col(i));
        if (!s) throw InfinitePosition("d_from_c: transversal hits a -inf entry");
        d[hvt.col(i)] = c[i] + *s;
    }
    return d;
}

/// Shift so that min c = 0; the inequality/equality structure is unchanged.
inline OffsetPair normalise(const OffsetPair& off) {
    if (off.c.empty()) throw std::invalid_argument("normalise: empty offsets");
    const int shift = *std::min_element(off.c.begin(), off.c.end());
    OffsetPair out = off;
    for (int& x : out.c) x -= shift;
    for (int& x : out.d) x -= shift;
    return out;
}

} // namespace sigmasa
