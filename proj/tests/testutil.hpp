#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "sigmasa/sigmasa.hpp"

namespace fixtures {

using namespace sigmasa;

// Simple pendulum in Cartesian coordinates: rows A,B,C over x,y,lam.
inline SignatureMatrix pendulum() {
    return SignatureMatrix::from_triplets(
        3, {{0, 0, 2}, {0, 2, 0}, {1, 1, 2}, {1, 2, 0}, {2, 0, 0}, {2, 1, 0}},
        {"A", "B", "C"}, {"x", "y", "lam"});
}

// Pendulum with x replaced by x' in the constraint equation: sigma(C,x) = 1.
inline SignatureMatrix modified_pendulum() {
    return SignatureMatrix::from_triplets(
        3, {{0, 0, 2}, {0, 2, 0}, {1, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}},
        {"A", "B", "C"}, {"x", "y", "lam"});
}

// Two coupled pendula, rows A..F over x,y,lam,u,v,mu; 14 finite entries.
inline SignatureMatrix two_pendula() {
    return SignatureMatrix::from_triplets(6,
                                          {{0, 0, 2},
                                           {0, 2, 0},
                                           {1, 0, 1},
                                           {1, 1, 2},
                                           {1, 2, 0},
                                           {2, 0, 0},
                                           {2, 1, 0},
                                           {3, 3, 2},
                                           {3, 5, 0},
                                           {4, 4, 3},
                                           {4, 5, 0},
                                           {5, 2, 2},
                                           {5, 3, 0},
                                           {5, 4, 0}},
                                          {"A", "B", "C", "D", "E", "F"},
                                          {"x", "y", "lam", "u", "v", "mu"});
}

inline SparsityPattern pat(int n, std::set<Position> pos) { return {n, std::move(pos)}; }

inline Transversal tv(std::vector<int> cols) { return Transversal(std::move(cols)); }

/// Random structurally well-posed signature matrix: a planted random
/// transversal guarantees well-posedness, extra entries are sprinkled with
/// the given density, sigma values drawn from 0..max_sigma.
inline SignatureMatrix random_wellposed(std::mt19937& rng, int n, int max_sigma,
                                        double density) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_int_distribution<int> sig(0, max_sigma);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::set<Position> pos;
    for (int i = 0; i < n; ++i) pos.insert({i, perm[i]});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (coin(rng) < density) pos.insert({i, j});
    std::vector<Triplet> trips;
    for (const auto& [i, j] : pos) trips.emplace_back(i, j, sig(rng));
    return SignatureMatrix::from_triplets(n, trips);
}

/// Random pattern, not necessarily well-posed.
inline SparsityPattern random_pattern(std::mt19937& rng, int n, double density) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::set<Position> pos;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (coin(rng) < density) pos.insert({i, j});
    return SparsityPattern(n, std::move(pos));
}

/// Up to `want` distinct valid offset pairs for sm, always starting with the
/// canonical one; uses enumerated normalised lead times when the fine
/// structure allows, constant shifts otherwise.
inline std::vector<OffsetPair> some_valid_offsets(const SignatureMatrix& sm, int want) {
    std::vector<OffsetPair> out;
    OffsetPair canon = canonical_offsets(sm);
    out.push_back(canon);
    FineBlockGraph fbg = build_fbg(sm);
    LeadTimeVector k0 = canonical_lead_times(fbg);
    int bound = 2;
    for (int v : k0) bound = std::max(bound, v + 2);
    bound = std::min(bound, 10);
    auto en = enumerate_normalised_lead_times(fbg, bound);
    for (const auto& k : en.vectors) {
        if (static_cast<int>(out.size()) >= want) break;
        OffsetPair off = offsets_from_lead_times(fbg, k);
        if (off != canon) out.push_back(off);
    }
    int shift = 1;
    while (static_cast<int>(out.size()) < want) {
        OffsetPair off = canon;
        for (int& x : off.c) x += shift;
        for (int& x : off.d) x += shift;
        out.push_back(off);
        ++shift;
    }
    return out;
}

inline std::string data_path(const std::string& name) {
    return std::string(SIGMASA_DATA_DIR) + "/" + name;
}

} // namespace fixtures
