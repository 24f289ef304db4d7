#include <gtest/gtest.h>

#include <random>

#include "shatwist/f2linalg.hpp"

using namespace shatwist;

namespace {
BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1);
    return m;
}
bool is_zero_vec(const BitVector& v) {
    return std::all_of(v.begin(), v.end(), [](auto b) { return b == 0; });
}
}  // namespace

TEST(F2Linalg, RankOfSmallMatrices) {
    EXPECT_EQ(rank(BitMatrix::identity(5)), 5u);
    EXPECT_EQ(rank(BitMatrix(3, 4)), 0u);
    EXPECT_EQ(rank(BitMatrix::from_rows({{1, 1, 0}, {1, 1, 0}})), 1u);
    EXPECT_EQ(rank(BitMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})), 2u);
}

TEST(F2Linalg, KernelVectorsAreAnnihilated) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        BitMatrix m = random_matrix(rng, r, c);
        auto ker = kernel_basis(m);
        EXPECT_EQ(ker.size() + rank(m), c);
        for (const auto& v : ker) EXPECT_TRUE(is_zero_vec(m.apply(v)));
    }
}

TEST(F2Linalg, SolveAgreesWithImage) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        BitMatrix m = random_matrix(rng, r, c);
        BitVector x(c);
        for (auto& b : x) b = rng() & 1;
        BitVector w = m.apply(x);
        auto sol = solve(m, w);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(m.apply(*sol), w);
    }
    EXPECT_FALSE(solve(BitMatrix(2, 2), BitVector{1, 0}).has_value());
}

TEST(F2Linalg, SpanEnumeratesAllCombinations) {
    std::vector<BitVector> basis{{1, 0, 0}, {0, 1, 1}};
    auto s = span(basis, 3);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_TRUE(is_zero_vec(s.front()));
}

TEST(F2Linalg, ArithmeticAndTranspose) {
    std::mt19937_64 rng(3);
    BitMatrix a = random_matrix(rng, 4, 70), b = random_matrix(rng, 70, 3);
    EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
    EXPECT_TRUE((a + a).is_zero());
    EXPECT_EQ(a.transpose().transpose(), a);
}

TEST(F2Linalg, OutOfRangeAccessIsRejected) {
    BitMatrix m(2, 2);
    EXPECT_THROW(m.get(2, 0), contract_violation);
    EXPECT_THROW(m * BitMatrix(3, 3), contract_violation);
}
