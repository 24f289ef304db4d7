#pragma once
// Closed-form Cassels pairing values on the pure 2-Selmer group when h4(n) = 1,
// and the resulting criterion for E^(n)(Q) and the 2-primary Sha to be (Z/2)^2.

#include <string>

#include "genus.hpp"
#include "selmer.hpp"

namespace shatwist {

enum class PairingBranch { T1DOne, T1DMinusOne, T2RankKMinus2, T2RankKMinus1 };

inline const char* to_string(PairingBranch b) {
    switch (b) {
        case PairingBranch::T1DOne: return "thm1-d=1mod8";
        case PairingBranch::T1DMinusOne: return "thm1-d=-1mod8";
        case PairingBranch::T2RankKMinus2: return "thm2-rank-k-2";
        case PairingBranch::T2RankKMinus1: return "thm2-rank-k-1";
    }
    return "?";
}

struct Generators {
    SelmerElement lambda, lambda_prime;
    i64 d = 1;
    PairingBranch branch = PairingBranch::T1DOne;
};

struct PairingOutcome {
    int value = 1;
    PairingBranch branch = PairingBranch::T1DOne;
    i64 d = 1;
    NormSolution witness;
};

namespace detail {
inline void require_h4_one(const FactoredSquarefree& n) {
    require(h4(n) == 1, "pairing needs h4(n) = 1");
}
inline bool is_trivial_vector(const BitVector& v, std::uint8_t bit) {
    return std::all_of(v.begin(), v.end(), [bit](auto x) { return x == bit; });
}
}  // namespace detail

// ---------------------------------------------------------------- primes = +-1 mod 8

inline Generators generators_t1(const TwistTriple& t, const FactoredSquarefree& n) {
    require(admissible_n(n, t, 1), "n is not admissible for the +-1 mod 8 criterion");
    detail::require_h4_one(n);
    BitMatrix M = matrix_A(n) + matrix_D(-1, n);
    auto ker = kernel_basis(M);
    require(ker.size() == 1, "kernel of A + D_{-1} is not one-dimensional");
    Generators g;
    g.d = detail::divisor_from_vector(n.primes, ker[0]);
    g.lambda = {2, 2, 1};
    g.lambda_prime = {g.d, 1, g.d};
    g.branch = g.d % 8 == 1 ? PairingBranch::T1DOne : PairingBranch::T1DMinusOne;
    require(g.d % 8 == 1 || g.d % 8 == 7, "d must be +-1 mod 8");
    return g;
}

inline PairingOutcome pairing_t1(const TwistTriple& t, const FactoredSquarefree& n, const NormSearchOptions& opt = {}) {
    Generators g = generators_t1(t, n);
    PairingOutcome out;
    out.branch = g.branch;
    out.d = g.d;
    out.witness = solve_norm_equation(1, n.value, 1, opt);
    const i64 gamma = out.witness.gamma;
    out.value = jacobi(gamma, g.d);
    if (g.branch == PairingBranch::T1DMinusOne) out.value *= jacobi(-1, gamma);
    return out;
}

// ---------------------------------------------------------------- primes = 1 mod 4

inline Generators generators_t2(const TwistTriple& t, const FactoredSquarefree& n) {
    require(admissible_n(n, t, 2), "n is not admissible for the 1 mod 4 criterion");
    detail::require_h4_one(n);
    const std::size_t k = n.k();
    BitMatrix A = matrix_A(n);
    Generators g;
    if (rank(A) + 2 == k) {
        BitVector z;
        for (const auto& v : span(kernel_basis(A), k))
            if (!detail::is_trivial_vector(v, 0) && !detail::is_trivial_vector(v, 1) && v[0] == 1) z = v;
        require(!z.empty(), "kernel vector with z_1 = 1 not found");
        g.d = detail::divisor_from_vector(n.primes, z);
        require(g.d % 8 == 5, "d must be 5 mod 8 when rank A = k - 2");
        g.branch = PairingBranch::T2RankKMinus2;
        g.lambda = {g.d, g.d, 1};
    } else {
        auto x = solve(A, vector_b(n));
        require(x.has_value(), "b is not in the image of A");
        g.d = detail::divisor_from_vector(n.primes, *x);
        g.branch = PairingBranch::T2RankKMinus1;
        g.lambda = {2 * g.d, 2 * g.d, 1};
    }
    g.lambda_prime = {-1, 1, -1};
    return g;
}

namespace detail {
// Rewrite a primitive solution of d a^2 + d' b^2 = g^2 so that a is even.
inline NormSolution make_alpha_even(NormSolution s) {
    if (s.alpha % 2 == 0) return s;
    const i128 d = s.d, dp = s.dprime, a = s.alpha, b = s.beta, g = s.gamma;
    i128 na = dp * a - 2 * dp * b - d * a;
    i128 nb = d * b - 2 * d * a - dp * b;
    i128 ng = (d + dp) * g;
    if (na < 0) na = -na;
    if (nb < 0) nb = -nb;
    if (ng < 0) ng = -ng;
    i128 h = gcd128(gcd128(na, nb), ng);
    NormSolution r = s;
    r.alpha = narrow(na / h);
    r.beta = narrow(nb / h);
    r.gamma = narrow(ng / h);
    require(r.alpha % 2 == 0 && r.alpha > 0 && r.beta > 0, "even-alpha transform failed");
    require(static_cast<i128>(r.d) * r.alpha * r.alpha + static_cast<i128>(r.dprime) * r.beta * r.beta ==
                static_cast<i128>(r.gamma) * r.gamma,
            "even-alpha transform broke the norm equation");
    return r;
}
}  // namespace detail

inline PairingOutcome pairing_t2(const TwistTriple& t, const FactoredSquarefree& n, const NormSearchOptions& opt = {}) {
    Generators g = generators_t2(t, n);
    PairingOutcome out;
    out.branch = g.branch;
    out.d = g.d;
    const i64 dprime = n.value / g.d;
    if (g.branch == PairingBranch::T2RankKMinus2) {
        out.witness = detail::make_alpha_even(solve_norm_equation(g.d, dprime, 0, opt));
        out.value = -jacobi(-1, out.witness.gamma);
    } else {
        out.witness = solve_norm_equation(g.d, dprime, 1, opt);
        out.value = jacobi(-1, out.witness.gamma) * jacobi(2, g.d);
    }
    return out;
}

// ---------------------------------------------------------------- predicate

struct ShaReport {
    bool predicate = false;
    std::size_t h4 = 0;
    std::optional<int> h8;
    std::optional<i64> d;  // criterion 1: kernel d of A + D_{-1}; criterion 2: odd part of d0
    std::string trace;
};

inline ShaReport sha_report(const TwistTriple& t, const FactoredSquarefree& n, int theorem, const NormSearchOptions& opt = {}) {
    require(theorem == 1 || theorem == 2, "theorem must be 1 or 2");
    require(admissible_n(n, t, theorem), "n is not admissible for the chosen criterion");
    require(base_selmer_dim(t) == 2, "base curve must have 2-Selmer dimension 2");
    ShaReport r;
    r.h4 = h4(n);
    if (r.h4 != 1) {
        r.trace = "h4=" + std::to_string(r.h4) + " != 1";
        return r;
    }
    const int h8 = h8_indicator(n, opt);
    r.h8 = h8;
    if (theorem == 1) {
        r.d = generators_t1(t, n).d;
        r.predicate = h8 == 0;
        r.trace = "h4=1, h8=" + std::to_string(h8) + (r.predicate ? " = 0" : " != 0");
    } else {
        i64 d0 = distinguished_divisor(n);
        i64 d = d0 % 2 == 0 ? d0 / 2 : d0;
        require(d % 4 == 1, "odd part of d0 must be 1 mod 4");
        i64 dk = generators_t2(t, n).d;
        require(dk == d || dk == n.value / d, "distinguished divisor disagrees with the kernel divisor");
        r.d = d;
        const int target = static_cast<int>(((d - 1) / 4) % 2);
        r.predicate = h8 == target;
        r.trace = "h4=1, d=" + std::to_string(d) + ", h8=" + std::to_string(h8) + (r.predicate ? " = " : " != ") +
                  "(d-1)/4 mod 2 = " + std::to_string(target);
    }
    return r;
}

inline bool sha_predicate(const TwistTriple& t, const FactoredSquarefree& n, int theorem) {
    return sha_report(t, n, theorem).predicate;
}

// ---------------------------------------------------------------- matrix identities for primes = +-1 mod 8

// (1) Ax = 0 iff x^T (A + D_{-1}) = 0, for every x.
// (2) (A + D_{-1})x = 0 implies x^T A = 0 (d = 1 mod 8) or (x0 - x)^T A = 0 (d = -1 mod 8).
inline bool check_pm1_identities(const FactoredSquarefree& n) {
    for (i64 p : n.primes) require(p % 8 == 1 || p % 8 == 7, "identities need primes = +-1 mod 8");
    require(n.value % 8 == 1, "identities need n = 1 mod 8");
    const std::size_t k = n.k();
    require(k <= 20, "identity check enumerates 2^k vectors");
    BitMatrix A = matrix_A(n), M = A + matrix_D(-1, n);
    BitMatrix At = A.transpose(), Mt = M.transpose();
    for (u64 mask = 0; mask < (u64{1} << k); ++mask) {
        BitVector x(k), xc(k);
        for (std::size_t i = 0; i < k; ++i) {
            x[i] = (mask >> i) & 1;
            xc[i] = x[i] ^ 1;
        }
        auto zero = [](const BitVector& v) { return std::all_of(v.begin(), v.end(), [](auto b) { return b == 0; }); };
        if (zero(A.apply(x)) != zero(Mt.apply(x))) return false;
        if (zero(M.apply(x))) {
            i64 d = detail::divisor_from_vector(n.primes, x);
            const BitVector& w = d % 8 == 1 ? x : xc;
            if (!zero(At.apply(w))) return false;
        }
    }
    return true;
}

}  // namespace shatwist
