#pragma once

#include <algorithm>
#include <vector>

#include "sigmasa/core.hpp"
#include "sigmasa/errors.hpp"
#include "sigmasa/fineblock.hpp"

namespace sigmasa::oracle {

/// Every transversal contained in A, by backtracking over rows. Hard guard
/// n <= 10; the oracle never silently attempts exponential work.
inline std::vector<Transversal> all_transversals(const SparsityPattern& a) {
    if (a.size() > 10) throw TooLarge("all_transversals: n > 10");
    const int n = a.size();
    auto adj = a.row_adjacency();
    std::vector<Transversal> out;
    std::vector<int> col_of_row(n, -1);
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, int row) -> void {
        if (row == n) {
            out.emplace_back(col_of_row);
            return;
        }
        for (int j : adj[row]) {
            if (used[j]) continue;
            used[j] = 1;
            col_of_row[row] = j;
            self(self, row + 1);
            used[j] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

/// All highest-value transversals of Sigma.
inline std::vector<Transversal> all_hvts(const SignatureMatrix& sm) {
    auto ts = all_transversals(pattern_of(sm));
    if (ts.empty()) throw StructurallyIllPosed();
    long long best = std::numeric_limits<long long>::min();
    for (const auto& t : ts) best = std::max(best, transversal_value(sm, t));
    std::vector<Transversal> out;
    for (const auto& t : ts)
        if (transversal_value(sm, t) == best) out.push_back(t);
    return out;
}

/// S_ess by definition: the union of all HVTs.
inline SparsityPattern sess_bruteforce(const SignatureMatrix& sm) {
    std::set<Position> pos;
    for (const auto& t : all_hvts(sm))
        for (const auto& p : t.positions()) pos.insert(p);
    return SparsityPattern(sm.size(), std::move(pos));
}

namespace detail {

inline int rows_met_by_columns(const SparsityPattern& a, unsigned mask) {
    int rows = 0;
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) {
            if ((mask >> j & 1u) && a.contains(i, j)) {
                ++rows;
                break;
            }
        }
    }
    return rows;
}

} // namespace detail

/// Literal subset enumeration: any r columns contain elements of >= r rows.
inline bool hall_property(const SparsityPattern& a) {
    if (a.size() > 6) throw TooLarge("hall_property: n > 6");
    const int n = a.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int r = __builtin_popcount(mask);
        if (detail::rows_met_by_columns(a, mask) < r) return false;
    }
    return true;
}

/// Literal subset enumeration: any r columns, 1 <= r <= n-1, contain elements
/// of >= r+1 rows.
inline bool strong_hall_property(const SparsityPattern& a) {
    if (a.size() > 6) throw TooLarge("strong_hall_property: n > 6");
    const int n = a.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int r = __builtin_popcount(mask);
        if (r >= n) continue;
        if (detail::rows_met_by_columns(a, mask) < r + 1) return false;
    }
    return true;
}

/// All normalised offset pairs with max c_i <= bound: grid search over c,
/// d derived via a fixed HVT (equality holds on every HVT for general
/// offsets, so this loses nothing), all dual inequalities checked, min c = 0.
/// Candidates are pruned as soon as a constraint among assigned components
/// fails; the result is sorted by (c, d).
inline std::vector<OffsetPair> normalized_offsets_bruteforce(const SignatureMatrix& sm,
                                                             int bound) {
    if (sm.size() > 7) throw TooLarge("normalized_offsets_bruteforce: n > 7");
    if (bound > 8) throw TooLarge("normalized_offsets_bruteforce: bound > 8");
    if (bound < 0) throw std::invalid_argument("normalized_offsets_bruteforce: bound < 0");
    const int n = sm.size();
    const Transversal hvt = all_hvts(sm).front();

    // cols_by_row_known[i]: entries (i,j) whose column j is matched to a row
    // <= i, so d_j is known once rows 0..i are assigned.
    auto row_of_col = hvt.row_of_col();
    std::vector<int> c(n, 0), d(n, 0);
    std::vector<OffsetPair> out;
    auto rec = [&](auto&& self, int row) -> void {
        if (row == n) {
            if (*std::min_element(c.begin(), c.end()) == 0) out.push_back({c, d});
            return;
        }
        for (int val = 0; val <= bound; ++val) {
            c[row] = val;
            d[hvt.col(row)] = val + *sm.sigma(row, hvt.col(row));
            // check entries with both endpoints assigned so far
            bool ok = true;
            for (const auto& [j, s] : sm.row(row)) {
                if (row_of_col[j] <= row && d[j] - c[row] < s) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                const int jn = hvt.col(row);
                for (int i2 = 0; i2 < row && ok; ++i2) {
                    auto s2 = sm.sigma(i2, jn);
                    if (s2 && d[jn] - c[i2] < *s2) ok = false;
                }
            }
            if (ok) self(self, row + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const OffsetPair& a, const OffsetPair& b) {
        return std::tie(a.c, a.d) < std::tie(b.c, b.d);
    });
    return out;
}

/// Full grid {0..bound}^p filtered by every edge inequality and min K = 0.
inline std::vector<LeadTimeVector> normalized_lead_times_bruteforce(const FineBlockGraph& fbg,
                                                                    int bound) {
    if (fbg.p > 6) throw TooLarge("normalized_lead_times_bruteforce: p > 6");
    if (bound > 10) throw TooLarge("normalized_lead_times_bruteforce: bound > 10");
    if (bound < 0) throw std::invalid_argument("normalized_lead_times_bruteforce: bound < 0");
    std::vector<LeadTimeVector> out;
    LeadTimeVector k(fbg.p, 0);
    while (true) {
        bool ok = *std::min_element(k.begin(), k.end()) == 0;
        for (const auto& e : fbg.edges) {
            if (!ok) break;
            if (k[e.to] - k[e.from] < e.weight) ok = false;
        }
        if (ok) out.push_back(k);
        // odometer increment
        int pos = fbg.p - 1;
        while (pos >= 0 && k[pos] == bound) k[pos--] = 0;
        if (pos < 0) break;
        ++k[pos];
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sigmasa::oracle
