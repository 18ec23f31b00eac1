#include <doctest.h>

#include "testutil.hpp"

using namespace sigmasa;
using fixtures::pat;
using fixtures::tv;

TEST_CASE("digraph_of") {
    SUBCASE("pendulum S relative to the bullet HVT has 3 off-diagonal edges") {
        auto g = digraph_of(pattern_of(fixtures::pendulum()), tv({0, 2, 1}));
        CHECK(g.edge_count() == 3);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(1, 2));
        CHECK(g.has_edge(2, 0));
    }
    SUBCASE("diagonal-only pattern gives an edgeless digraph") {
        auto g = digraph_of(pat(3, {{0, 0}, {1, 1}, {2, 2}}), tv({0, 1, 2}));
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("two-pendula S relative to the reference HVT: 14 - 6 = 8 edges") {
        auto g = digraph_of(pattern_of(fixtures::two_pendula()), tv({0, 2, 1, 5, 4, 3}));
        CHECK(g.edge_count() == 8);
    }
    SUBCASE("transversal not contained in the pattern") {
        CHECK_THROWS_AS(digraph_of(pat(2, {{0, 0}, {1, 1}}), tv({1, 0})),
                        TransversalNotInPattern);
    }
}

TEST_CASE("strong_components") {
    SUBCASE("3-cycle is one component") {
        auto scc = strong_components(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
        CHECK(scc.components.size() == 1);
    }
    SUBCASE("chain gives singleton components in chain order") {
        auto scc = strong_components(Digraph(3, {{0, 1}, {1, 2}}));
        REQUIRE(scc.components.size() == 3);
        CHECK(scc.components[0] == std::vector<int>{0});
        CHECK(scc.components[1] == std::vector<int>{1});
        CHECK(scc.components[2] == std::vector<int>{2});
        CHECK(scc.condensation.has_edge(0, 1));
        CHECK(scc.condensation.has_edge(1, 2));
    }
    SUBCASE("two-pendula FBG edge set") {
        auto scc = strong_components(Digraph(4, {{0, 1}, {1, 2}, {2, 3}, {2, 0}}));
        REQUIRE(scc.components.size() == 2);
        CHECK(scc.components[0] == std::vector<int>{0, 1, 2});
        CHECK(scc.components[1] == std::vector<int>{3});
        CHECK(scc.condensation.has_edge(0, 1));
    }
}

TEST_CASE("irreducible_btf") {
    SUBCASE("modified pendulum S0: three singleton blocks (B,y),(A,lam),(C,x)") {
        auto sm = fixtures::modified_pendulum();
        auto s0 = jacobian_pattern(sm, canonical_offsets(sm));
        auto btf = irreducible_btf(s0);
        REQUIRE(btf.p() == 3);
        CHECK(btf.form.block_sizes() == std::vector<int>{1, 1, 1});
        CHECK(btf.block_rows[0] == std::vector<int>{1}); // B
        CHECK(btf.block_cols[0] == std::vector<int>{1}); // y
        CHECK(btf.block_rows[1] == std::vector<int>{0}); // A
        CHECK(btf.block_cols[1] == std::vector<int>{2}); // lam
        CHECK(btf.block_rows[2] == std::vector<int>{2}); // C
        CHECK(btf.block_cols[2] == std::vector<int>{0}); // x
    }
    SUBCASE("two-pendula S0: block sizes (1,1,1,3)") {
        auto sm = fixtures::two_pendula();
        auto btf = irreducible_btf(jacobian_pattern(sm, canonical_offsets(sm)));
        CHECK(btf.form.block_sizes() == std::vector<int>{1, 1, 1, 3});
    }
    SUBCASE("pendulum S is a single 3x3 block") {
        auto btf = irreducible_btf(pattern_of(fixtures::pendulum()));
        CHECK(btf.p() == 1);
        CHECK(btf.form.block_sizes() == std::vector<int>{3});
    }
    SUBCASE("singular pattern") {
        CHECK_THROWS_AS(irreducible_btf(pat(2, {{0, 0}, {0, 1}})), StructurallySingular);
    }
}

TEST_CASE("the permuted pattern of an irreducible BTF is upper block-triangular") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        auto sm = fixtures::random_wellposed(rng, 2 + rep % 6, 3, 0.3);
        auto a = pattern_of(sm);
        auto btf = irreducible_btf(a);
        auto permuted = permute_pattern(a, btf.form.row_perm(), btf.form.col_perm());
        for (const auto& [i, j] : permuted.positions())
            CHECK(btf.form.block_of(i) <= btf.form.block_of(j));
        // The transversal used stays inside the diagonal blocks.
        for (int i = 0; i < a.size(); ++i)
            CHECK(btf.block_of_row[i] == btf.block_of_col[btf.transversal_used.col(i)]);
    }
}

TEST_CASE("coarse_blocks / fine_blocks") {
    SUBCASE("two-pendula: coarse (3,3), fine (1,1,1,3)") {
        auto sm = fixtures::two_pendula();
        auto coarse = coarse_blocks(sm);
        CHECK(coarse.form.block_sizes() == std::vector<int>{3, 3});
        // Blocks D,E,F then A,B,C.
        CHECK(LabelSet(coarse.emblem(sm.row_labels(), sm.col_labels()).pairs().begin()->first) ==
              LabelSet{"A", "B", "C"});
        auto fine = fine_blocks(sm);
        CHECK(fine.form.block_sizes() == std::vector<int>{1, 1, 1, 3});
    }
    SUBCASE("pendulum: coarse = fine = single block") {
        auto sm = fixtures::pendulum();
        CHECK(coarse_blocks(sm).p() == 1);
        CHECK(fine_blocks(sm).p() == 1);
    }
    SUBCASE("modified pendulum: coarse 1 block, fine 3 blocks") {
        auto sm = fixtures::modified_pendulum();
        CHECK(coarse_blocks(sm).p() == 1);
        CHECK(fine_blocks(sm).p() == 3);
    }
}

TEST_CASE("essential_pattern") {
    SUBCASE("pendulum: all 6 positions") {
        auto sm = fixtures::pendulum();
        CHECK(essential_pattern(sm) == pattern_of(sm));
    }
    SUBCASE("two-pendula: the 9 reference positions") {
        auto sm = fixtures::two_pendula();
        std::set<Position> expect = {
            {4, 4}, {3, 5}, {5, 3},                         // (E,v),(D,mu),(F,u)
            {0, 0}, {0, 2}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, // (A,x),(A,lam),(C,x),(C,y),(B,y),(B,lam)
        };
        CHECK(essential_pattern(sm).positions() == expect);
    }
    SUBCASE("modified pendulum: the unique HVT, i.e. the three 1x1 diagonal blocks") {
        // S0 has 5 positions but its off-diagonal entries (A,x),(B,lam) are
        // not on any HVT; the essential pattern is just the unique HVT.
        auto sm = fixtures::modified_pendulum();
        auto sess = essential_pattern(sm);
        CHECK(sess.positions() == std::set<Position>{{0, 2}, {1, 1}, {2, 0}});
        CHECK(sess == oracle::sess_bruteforce(sm));
    }
}

TEST_CASE("is_irreducible / classify_fine_irreducible") {
    auto pend = fixtures::pendulum();
    CHECK(is_irreducible(jacobian_pattern(pend, canonical_offsets(pend))));
    CHECK(classify_fine_irreducible(pend));
    auto mod = fixtures::modified_pendulum();
    CHECK_FALSE(is_irreducible(jacobian_pattern(mod, canonical_offsets(mod))));
    CHECK_FALSE(classify_fine_irreducible(mod));
    CHECK(is_irreducible(pat(1, {{0, 0}})));
}

TEST_CASE("every transversal lies in the diagonal blocks of any BTF") {
    std::mt19937 rng(43);
    for (int rep = 0; rep < 25; ++rep) {
        auto sm = fixtures::random_wellposed(rng, 2 + rep % 5, 3, 0.35);
        auto a = pattern_of(sm);
        auto btf = irreducible_btf(a);
        for (const auto& t : oracle::all_transversals(a))
            for (int i = 0; i < a.size(); ++i)
                CHECK(btf.block_of_row[i] == btf.block_of_col[t.col(i)]);
    }
}

TEST_CASE("every transversal of S0 is a HVT of Sigma") {
    std::mt19937 rng(47);
    for (int rep = 0; rep < 25; ++rep) {
        auto sm = fixtures::random_wellposed(rng, 2 + rep % 5, 3, 0.35);
        auto val = solve_hvt(sm).value;
        auto s0 = jacobian_pattern(sm, canonical_offsets(sm));
        for (const auto& t : oracle::all_transversals(s0))
            CHECK(transversal_value(sm, t) == val);
    }
}

TEST_CASE("valid offsets restrict to valid offsets on each fine block") {
    std::mt19937 rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        auto sm = fixtures::random_wellposed(rng, 2 + rep % 5, 3, 0.35);
        auto fine = fine_blocks(sm);
        for (const auto& off : fixtures::some_valid_offsets(sm, 3)) {
            for (int l = 0; l < fine.p(); ++l) {
                auto block = submatrix(sm, fine.block_rows[l], fine.block_cols[l]);
                OffsetPair restricted;
                for (int r : fine.block_rows[l]) restricted.c.push_back(off.c[r]);
                for (int c : fine.block_cols[l]) restricted.d.push_back(off.d[c]);
                auto cls = check_offsets(block, restricted);
                CHECK(cls.is_general);
                CHECK(cls.is_valid);
            }
        }
    }
}

TEST_CASE("fine emblem is offset-independent") {
    std::mt19937 rng(59);
    for (int rep = 0; rep < 20; ++rep) {
        auto sm = fixtures::random_wellposed(rng, 2 + rep % 5, 3, 0.4);
        auto offs = fixtures::some_valid_offsets(sm, 3);
        auto base =
            fine_blocks(sm, offs[0]).emblem(sm.row_labels(), sm.col_labels());
        for (const auto& off : offs) {
            auto e = fine_blocks(sm, off).emblem(sm.row_labels(), sm.col_labels());
            CHECK(emblems_equal(base, e));
        }
    }
}

TEST_CASE("irreducible iff Strong Hall iff strongly connected for any transversal") {
    std::mt19937 rng(61);
    int checked = 0;
    while (checked < 30) {
        auto a = fixtures::random_pattern(rng, 2 + checked % 4, 0.5);
        auto match = max_bipartite_matching(a.size(), a.size(), a.row_adjacency());
        if (matching_size(match) != a.size()) {
            // Hall still comparable on singular patterns.
            CHECK_FALSE(oracle::hall_property(a));
            continue;
        }
        bool irr = is_irreducible(a);
        CHECK(oracle::hall_property(a));
        CHECK(oracle::strong_hall_property(a) == irr);
        for (const auto& t : oracle::all_transversals(a)) {
            auto scc = strong_components(digraph_of(a, t));
            CHECK((scc.components.size() == 1) == irr);
        }
        ++checked;
    }
}

TEST_CASE("any irreducible BTF of S_ess is block-diagonal") {
    std::mt19937 rng(67);
    for (int rep = 0; rep < 20; ++rep) {
        auto sm = fixtures::random_wellposed(rng, 2 + rep % 5, 3, 0.4);
        auto sess = essential_pattern(sm);
        auto btf = irreducible_btf(sess);
        for (const auto& [i, j] : sess.positions())
            CHECK(btf.block_of_row[i] == btf.block_of_col[j]);
    }
}

TEST_CASE("fine-block irreducible systems have a unique normalised offset vector") {
    std::mt19937 rng(71);
    int seen = 0;
    while (seen < 8) {
        auto sm = fixtures::random_wellposed(rng, 2 + seen % 4, 2, 0.5);
        if (!classify_fine_irreducible(sm)) continue;
        auto canon = canonical_offsets(sm);
        int maxc = *std::max_element(canon.c.begin(), canon.c.end());
        if (maxc > 6) continue;
        auto all = oracle::normalized_offsets_bruteforce(sm, std::max(2, maxc + 1));
        CHECK(all.size() == 1);
        CHECK(all[0] == canon);
        ++seen;
    }
}
