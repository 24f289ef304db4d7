#include <gtest/gtest.h>

#include <random>

#include "shatwist/arith.hpp"

using namespace shatwist;

namespace {
int euler_legendre(i64 a, i64 p) {
    i64 r = powmod(mod(a, p), (p - 1) / 2, p);
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
}
}  // namespace

TEST(Arith, JacobiMatchesEulerCriterion) {
    for (i64 p = 3; p < 300; p += 2) {
        if (!is_prime(p)) continue;
        for (i64 a = -50; a < 50; ++a) EXPECT_EQ(jacobi(a, p), euler_legendre(a, p)) << a << " " << p;
    }
    EXPECT_EQ(jacobi(3, 17), -1);
    EXPECT_EQ(additive_jacobi(2, 5), 1);
    EXPECT_THROW(additive_jacobi(5, 15), undefined_symbol);
    EXPECT_THROW(jacobi(1, 4), contract_violation);
}

TEST(Arith, HilbertProductFormula) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        i64 a = static_cast<i64>(rng() % 2000) - 1000, b = static_cast<i64>(rng() % 2000) - 1000;
        if (a == 0 || b == 0) continue;
        int prod = hilbert(a, b, kInfinity) * hilbert(a, b, 2);
        for (i64 p : prime_divisors(std::abs(a) * std::abs(b)))
            if (p != 2) prod *= hilbert(a, b, p);
        EXPECT_EQ(prod, 1) << a << " " << b;
    }
    EXPECT_EQ(hilbert(-1, -1, kInfinity), -1);
    EXPECT_EQ(hilbert(-1, -1, 2), -1);
}

TEST(Arith, PrimaryPrimesAndQuarticSymbols) {
    GaussInt pi = primary_prime_above(17);
    EXPECT_TRUE(is_primary(pi));
    EXPECT_EQ(pi.norm(), 17);
    EXPECT_GT(pi.im, 0);
    // 2 is a quartic residue mod p = 1 mod 8 iff p = x^2 + 64 y^2.
    EXPECT_EQ(rational_quartic(2, 17), -1);
    EXPECT_EQ(rational_quartic(2, 73), 1);
    EXPECT_THROW(rational_quartic(3, 17), undefined_symbol);
    EXPECT_THROW(rational_quartic(2, 7), undefined_symbol);
}

TEST(Arith, QuarticSymbolIsMultiplicative) {
    GaussInt pi = primary_prime_above(97);
    for (i64 a = 1; a < 30; ++a)
        for (i64 b = 1; b < 30; ++b) {
            if (a % 97 == 0 || b % 97 == 0) continue;
            QuarticValue lhs = quartic_symbol(GaussInt{a} * GaussInt{b}, pi);
            QuarticValue rhs = quartic_symbol(GaussInt{a}, pi) * quartic_symbol(GaussInt{b}, pi);
            EXPECT_EQ(lhs.k, rhs.k);
        }
}

TEST(Arith, FactoredSquarefreeRejectsSquares) {
    EXPECT_THROW(FactoredSquarefree(12), contract_violation);
    FactoredSquarefree f(1241);
    EXPECT_EQ(f.primes, (std::vector<i64>{17, 73}));
}
