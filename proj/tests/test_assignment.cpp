#include <doctest.h>

#include "testutil.hpp"

using namespace sigmasa;
using fixtures::tv;

TEST_CASE("solve_hvt") {
    SUBCASE("pendulum: val 2, T is one of the two HVTs") {
        auto [t, val] = solve_hvt(fixtures::pendulum());
        CHECK(val == 2);
        bool bullet = t == tv({0, 2, 1});
        bool circle = t == tv({2, 1, 0});
        CHECK((bullet || circle));
    }
    SUBCASE("two-pendula: val 5") {
        CHECK(solve_hvt(fixtures::two_pendula()).value == 5);
    }
    SUBCASE("diagonal matrix: only transversal") {
        auto diag = SignatureMatrix::from_triplets(3, {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}});
        auto [t, val] = solve_hvt(diag);
        CHECK(val == 0);
        CHECK(t == tv({0, 1, 2}));
    }
    SUBCASE("ill-posed input") {
        auto bad = SignatureMatrix::from_triplets(2, {{0, 0, 1}, {0, 1, 2}});
        CHECK_THROWS_AS(solve_hvt(bad), StructurallyIllPosed);
        auto bad_col = SignatureMatrix::from_triplets(2, {{0, 0, 1}, {1, 0, 2}});
        CHECK_THROWS_AS(solve_hvt(bad_col), StructurallyIllPosed);
    }
}

TEST_CASE("canonical_offsets of the three example systems") {
    CHECK(canonical_offsets(fixtures::pendulum()) == OffsetPair{{0, 0, 2}, {2, 2, 0}});
    CHECK(canonical_offsets(fixtures::modified_pendulum()) == OffsetPair{{0, 0, 1}, {2, 2, 0}});
    CHECK(canonical_offsets(fixtures::two_pendula()) ==
          OffsetPair{{4, 4, 6, 0, 0, 2}, {6, 6, 4, 2, 3, 0}});
}

TEST_CASE("check_offsets") {
    auto sm = fixtures::pendulum();
    SUBCASE("canonical: general, valid, normalised") {
        auto cls = check_offsets(sm, {{0, 0, 2}, {2, 2, 0}});
        CHECK(cls.is_general);
        CHECK(cls.is_valid);
        CHECK(cls.is_normalised);
        REQUIRE(cls.witness_hvt.has_value());
        CHECK(is_transversal(pattern_of(sm), *cls.witness_hvt));
    }
    SUBCASE("shifted canonical: valid but not normalised") {
        auto cls = check_offsets(sm, {{1, 1, 3}, {3, 3, 1}});
        CHECK(cls.is_general);
        CHECK(cls.is_valid);
        CHECK_FALSE(cls.is_normalised);
    }
    SUBCASE("no equality transversal: not general") {
        auto cls = check_offsets(sm, {{0, 0, 0}, {2, 2, 0}});
        CHECK_FALSE(cls.is_general);
        CHECK_FALSE(cls.is_valid);
        CHECK_FALSE(cls.is_normalised);
        CHECK_FALSE(cls.witness_hvt.has_value());
    }
    SUBCASE("negative c: general but not valid") {
        auto cls = check_offsets(sm, {{-1, -1, 1}, {1, 1, -1}});
        CHECK(cls.is_general);
        CHECK_FALSE(cls.is_valid);
    }
}

TEST_CASE("d_from_c") {
    auto sm = fixtures::pendulum();
    CHECK(d_from_c(sm, tv({0, 2, 1}), {0, 0, 2}) == std::vector<int>{2, 2, 0});

    // In the permuted two-pendula order (rows E,D,F,A,C,B / cols v,mu,u,x,y,lam)
    // the diagonal is a HVT and the canonical c gives the reference d.
    auto perm = permute_sigma(fixtures::two_pendula(), Permutation({4, 3, 5, 0, 2, 1}),
                              Permutation({4, 5, 3, 0, 1, 2}));
    CHECK(d_from_c(perm, tv({0, 1, 2, 3, 4, 5}), {0, 0, 2, 4, 6, 4}) ==
          std::vector<int>{3, 0, 2, 6, 6, 4});

    auto one = SignatureMatrix::from_triplets(1, {{0, 0, 5}});
    CHECK(d_from_c(one, tv({0}), {0}) == std::vector<int>{5});
}

TEST_CASE("normalise") {
    CHECK(normalise({{1, 1, 3}, {3, 3, 1}}) == OffsetPair{{0, 0, 2}, {2, 2, 0}});
    CHECK(normalise({{0, 0, 2}, {2, 2, 0}}) == OffsetPair{{0, 0, 2}, {2, 2, 0}});
    CHECK(normalise({{5}, {5}}) == OffsetPair{{0}, {0}});
    auto sm = fixtures::pendulum();
    auto norm = normalise({{1, 1, 3}, {3, 3, 1}});
    CHECK(check_offsets(sm, norm).is_normalised);
}

TEST_CASE("offset duality invariants on random instances") {
    std::mt19937 rng(13);
    for (int rep = 0; rep < 40; ++rep) {
        auto sm = fixtures::random_wellposed(rng, 2 + rep % 6, 4, 0.35);
        auto [t, val] = solve_hvt(sm);
        auto canon = canonical_offsets(sm);

        // The solver's value is the true maximum over all transversals.
        long long best = std::numeric_limits<long long>::min();
        for (const auto& h : oracle::all_transversals(pattern_of(sm)))
            best = std::max(best, transversal_value(sm, h));
        CHECK(val == best);
        CHECK(transversal_value(sm, t) == best);

        // Equality holds on the returned HVT and on every HVT the oracle finds.
        for (int i = 0; i < sm.size(); ++i)
            CHECK(canon.d[t.col(i)] - canon.c[i] == *sm.sigma(i, t.col(i)));
        for (const auto& h : oracle::all_hvts(sm))
            for (int i = 0; i < sm.size(); ++i)
                CHECK(canon.d[h.col(i)] - canon.c[i] == *sm.sigma(i, h.col(i)));

        // Both objective functions share the optimal value.
        long long sum = 0;
        for (int i = 0; i < sm.size(); ++i) sum += canon.d[i] - canon.c[i];
        CHECK(sum == val);

        // Same for any other valid offsets.
        for (const auto& off : fixtures::some_valid_offsets(sm, 3)) {
            long long s2 = 0;
            for (int i = 0; i < sm.size(); ++i) s2 += off.d[i] - off.c[i];
            CHECK(s2 == val);
        }

        // Solved value is independent of tie-breaking / input order.
        std::vector<int> r(sm.size()), k(sm.size());
        for (int i = 0; i < sm.size(); ++i) r[i] = k[i] = i;
        std::shuffle(r.begin(), r.end(), rng);
        std::shuffle(k.begin(), k.end(), rng);
        auto permuted = permute_sigma(sm, Permutation(r), Permutation(k));
        CHECK(solve_hvt(permuted).value == val);
    }
}

TEST_CASE("canonical offsets are the elementwise minimum of the normalised set") {
    std::mt19937 rng(29);
    int done = 0;
    while (done < 12) {
        auto sm = fixtures::random_wellposed(rng, 2 + done % 5, 3, 0.4);
        auto canon = canonical_offsets(sm);
        int maxc = *std::max_element(canon.c.begin(), canon.c.end());
        if (maxc > 6) continue;
        auto all = oracle::normalized_offsets_bruteforce(sm, std::max(2, maxc));
        REQUIRE(!all.empty());
        for (int i = 0; i < sm.size(); ++i) {
            int mn = all[0].c[i];
            for (const auto& p : all) mn = std::min(mn, p.c[i]);
            CHECK(mn == canon.c[i]);
        }
        CHECK(std::count(all.begin(), all.end(), canon) == 1);
        ++done;
    }
}
