#include <gtest/gtest.h>

#include "shatwist/genus.hpp"

using namespace shatwist;

TEST(Genus, RedeiMatrixExamples) {
    EXPECT_EQ(redei_matrix(FactoredSquarefree(17)), BitMatrix::from_rows({{0, 0}}));
    EXPECT_EQ(redei_matrix(FactoredSquarefree(5)), BitMatrix::from_rows({{0, 1}}));
    EXPECT_EQ(redei_matrix(FactoredSquarefree(1241)), BitMatrix::from_rows({{1, 1, 0}, {1, 1, 0}}));
    EXPECT_THROW(redei_matrix(FactoredSquarefree(1)), contract_violation);
}

TEST(Genus, FourRankExamples) {
    EXPECT_EQ(h4(FactoredSquarefree(5)), 0u);
    EXPECT_EQ(h4(FactoredSquarefree(17)), 1u);
    EXPECT_EQ(h4(FactoredSquarefree(1241)), 1u);
}

TEST(Genus, DistinguishedDivisor) {
    EXPECT_EQ(distinguished_divisor(FactoredSquarefree(17)), 2);
    EXPECT_EQ(distinguished_divisor(FactoredSquarefree(1241)), 2);
    EXPECT_THROW(distinguished_divisor(FactoredSquarefree(5)), contract_violation);
    for (i64 n = 3; n < 3000; n += 2) {
        if (!is_squarefree(n)) continue;
        FactoredSquarefree f(n);
        if (h4(f) != 1) continue;
        auto [d1, d2] = distinguished_pair(f);
        auto odd = [](i64 v) { return v % 2 ? v : v / 2; };
        EXPECT_EQ(odd(d1) * odd(d2), n);
    }
}

TEST(Genus, NormEquation) {
    NormSolution s = solve_norm_equation(1, 17, 1);
    EXPECT_EQ(s.alpha, 1);
    EXPECT_EQ(s.beta, 1);
    EXPECT_EQ(s.gamma, 3);
    NormSolution t = solve_norm_equation(1, 1, 1);
    EXPECT_EQ(t.gamma, 1);
    NormSolution u = solve_norm_equation(2, 17, 0);
    EXPECT_EQ(2 * u.alpha * u.alpha + 17 * u.beta * u.beta, u.gamma * u.gamma);
    EXPECT_FALSE(norm_equation_solvable(1, 3, 1));
    EXPECT_THROW(solve_norm_equation(1, 3, 1), contract_violation);
    for (i64 n = 17; n < 2000; n += 8) {
        if (!is_squarefree(n) || !norm_equation_solvable(1, n, 1)) continue;
        for (std::uint64_t seed : {0, 1, 2}) {
            NormSolution w = solve_norm_equation(1, n, 1, {seed});
            EXPECT_EQ(static_cast<i128>(w.alpha) * w.alpha + static_cast<i128>(n) * w.beta * w.beta,
                      2 * static_cast<i128>(w.gamma) * w.gamma);
            EXPECT_EQ(gcd(gcd(w.alpha, w.beta), w.gamma), 1);
        }
    }
}

TEST(Genus, ClassGroupOracleExamples) {
    auto o5 = classgroup_oracle(5);
    EXPECT_EQ(o5.class_number, 2u);
    EXPECT_EQ(o5.h2, 1u);
    EXPECT_EQ(o5.h4, 0u);
    auto o17 = classgroup_oracle(17);
    EXPECT_EQ(o17.class_number, 4u);
    EXPECT_EQ(o17.h4, 1u);
    EXPECT_EQ(o17.h8, 0u);
    auto o1 = classgroup_oracle(1);
    EXPECT_EQ(o1.class_number, 1u);
    EXPECT_EQ(o1.h2, 0u);
    // Known class numbers of Q(sqrt(-n)).
    EXPECT_EQ(classgroup_oracle(41).class_number, 8u);
    EXPECT_EQ(classgroup_oracle(23).class_number, 3u);
    EXPECT_EQ(classgroup_oracle(65).class_number, 8u);
    EXPECT_THROW(classgroup_oracle(20'000'001, 10'000'000), contract_violation);
}

TEST(Genus, CompositionGroupLaws) {
    const i64 D = -4 * 1241;
    auto forms = reduced_forms(D);
    QuadForm e = identity_form(D);
    for (std::size_t i = 0; i < forms.size(); i += 3) {
        EXPECT_EQ(compose(forms[i], e, D), forms[i]);
        QuadForm inv{forms[i].a, -forms[i].b, forms[i].c};
        EXPECT_EQ(compose(forms[i], detail::reduce_form(inv, D), D), e);
        for (std::size_t j = 0; j < forms.size(); j += 5)
            EXPECT_EQ(compose(forms[i], forms[j], D), compose(forms[j], forms[i], D));
    }
    EXPECT_EQ(form_power(forms.back(), forms.size(), D), e);
}

TEST(Genus, EightRankAgreesWithOracleSmallRange) {
    int tested = 0;
    for (i64 n = 5; n < 5000; n += 4) {
        if (!is_squarefree(n)) continue;
        FactoredSquarefree f(n);
        auto o = classgroup_oracle(n);
        EXPECT_EQ(h2(f), o.h2) << n;
        EXPECT_EQ(h4(f), o.h4) << n;
        if (o.h4 == 1) {
            EXPECT_EQ(static_cast<std::size_t>(h8_indicator(f)), o.h8) << n;
            ++tested;
        }
    }
    EXPECT_GT(tested, 100);
}

TEST(Genus, JungYue) {
    EXPECT_EQ(jung_yue_h8(FactoredSquarefree(17)), 0);
    EXPECT_EQ(static_cast<std::size_t>(jung_yue_h8(FactoredSquarefree(1241))), classgroup_oracle(1241).h8);
    EXPECT_EQ(static_cast<std::size_t>(jung_yue_h8(FactoredSquarefree(73))), classgroup_oracle(73).h8);
    EXPECT_THROW(jung_yue_h8(FactoredSquarefree(7 * 23)), contract_violation);
}
