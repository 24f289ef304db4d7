#include <gtest/gtest.h>

#include "shatwist/selmer.hpp"

using namespace shatwist;

TEST(Selmer, CongruentSeventeen) {
    TwistTriple t;
    auto g = selmer_group(t, FactoredSquarefree(17));
    std::vector<SelmerElement> want{{1, 1, 1}, {1, 17, 17}, {17, 1, 17}, {17, 17, 1}};
    EXPECT_EQ(g, want);
    EXPECT_EQ(selmer_bruteforce(t, 17), want);
}

TEST(Selmer, BaseDimensionMatchesLocalSolvability) {
    // Sel'_2 of the base curve has 2^{dim - 2} elements.
    for (i64 k = 0; k <= 4; ++k) {
        TwistTriple t = triple_from_k(k);
        std::size_t size = selmer_bruteforce(t, 1).size();
        EXPECT_EQ(std::size_t{1} << (base_selmer_dim(t) - 2), size) << "k = " << k;
    }
    EXPECT_EQ(base_selmer_dim(triple_from_k(0)), 2u);
    EXPECT_EQ(base_selmer_dim(triple_from_k(1)), 3u);
    EXPECT_EQ(base_selmer_dim(triple_from_k(2)), 2u);
}

TEST(Selmer, MatrixKernelMatchesOracleOnSmallTwists) {
    for (const TwistTriple& t : {TwistTriple(1, 1, 1), TwistTriple(1, 7, 5), TwistTriple(7, 23, 17)}) {
        int checked = 0;
        for (i64 n = 1; n <= 400; n += 2) {
            if (!is_squarefree(n) || gcd(n, t.rad_abc()) != 1) continue;
            FactoredSquarefree f(n);
            if (!satisfies_residue_condition(f, t)) continue;
            EXPECT_EQ(selmer_group(t, f), selmer_bruteforce(t, n)) << t.to_string() << " n=" << n;
            ++checked;
        }
        EXPECT_GT(checked, 5);
    }
}

TEST(Selmer, LemmaMatchesPencilOracle) {
    TwistTriple t(7, 23, 17);
    for (i64 n : {1, 113, 137, 409}) {
        if (!satisfies_residue_condition(FactoredSquarefree(n), t)) continue;
        for (const auto& L : selmer_bruteforce(t, n))
            for (i64 v : bad_places(t, n))
                EXPECT_EQ(local_solvable_lemma(L, t, n, v), torsor_local_solvable(t.A(), t.B(), t.C(), n, L, v))
                    << L.to_string() << " at " << v;
    }
}

TEST(Selmer, TorsionImagesAreInSelmer) {
    TwistTriple t;
    for (const auto& e : torsion_images(t, 17))
        for (i64 v : bad_places(t, 17)) EXPECT_TRUE(torsor_local_solvable(t.A(), t.B(), t.C(), 17, e, v));
}

TEST(Selmer, ResidueConditionIsEnforced) {
    TwistTriple t(7, 23, 17);
    EXPECT_THROW(build_Mn(t, FactoredSquarefree(3)), contract_violation);
}
