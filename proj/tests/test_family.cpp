#include <gtest/gtest.h>

#include "shatwist/family.hpp"

using namespace shatwist;

TEST(Family, TriplesFromParameter) {
    EXPECT_EQ(triple_from_k(0), TwistTriple(1, 1, 1));
    EXPECT_EQ(triple_from_k(1), TwistTriple(1, 7, 5));
    EXPECT_EQ(triple_from_k(2), TwistTriple(7, 23, 17));
    for (i64 k = -20; k <= 20; ++k) {
        TwistTriple t = triple_from_k(k);
        EXPECT_EQ(t.A() + t.B(), 2 * t.C());
    }
}

TEST(Family, TripleValidation) {
    EXPECT_THROW(TwistTriple(1, 1, 2), contract_violation);
    EXPECT_THROW(TwistTriple(2, 2, 2), contract_violation);
    EXPECT_THROW(TwistTriple(-1, 1, 1), contract_violation);
    TwistTriple t(7, 23, 17);
    EXPECT_EQ(t.qprimes, (std::vector<i64>{7, 17, 23}));
    EXPECT_EQ(t.kprime, 3u);
}

TEST(Family, AdmissiblePrimes) {
    TwistTriple base;
    EXPECT_TRUE(admissible_t1(7, base));
    EXPECT_TRUE(admissible_t1(17, base));
    EXPECT_FALSE(admissible_t1(5, base));
    EXPECT_TRUE(admissible_t2(5, base));
    EXPECT_FALSE(admissible_t2(7, base));
    TwistTriple t(7, 23, 17);
    // 2 mod 7 = 2 is a square, mod 17 (2 = 6^2), mod 23 (2 = 5^2): p must be square mod each.
    for (i64 p : {5, 13, 17, 29, 37, 41}) {
        if (p == 17) continue;
        bool want = p % 4 == 1 && jacobi(p, 7) == 1 && jacobi(p, 17) == 1 && jacobi(p, 23) == 1;
        EXPECT_EQ(admissible_t2(p, t), want) << p;
    }
    EXPECT_THROW(admissible_t2(17, t), contract_violation);
    EXPECT_THROW(admissible_t1(9, base), contract_violation);
}

TEST(Family, AdmissibleN) {
    TwistTriple base;
    EXPECT_TRUE(admissible_n(FactoredSquarefree(17), base, 2));
    EXPECT_TRUE(admissible_n(FactoredSquarefree(17), base, 1));
    EXPECT_TRUE(admissible_n(FactoredSquarefree(65), base, 2));
    EXPECT_FALSE(admissible_n(FactoredSquarefree(65), base, 1));
    EXPECT_FALSE(admissible_n(FactoredSquarefree(13), base, 2));  // not 1 mod 8
    EXPECT_TRUE(admissible_n(FactoredSquarefree(7 * 23), base, 1));
}
