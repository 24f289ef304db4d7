#pragma once
// Genus theory of Q(sqrt(-n)): Redei matrix, 4- and 8-ranks, norm equations, and a
// class-group oracle built from reduced binary quadratic forms.

#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "arith.hpp"
#include "f2linalg.hpp"
#include "selmer.hpp"

namespace shatwist {

// Fundamental discriminant of Q(sqrt(-n)) for odd square-free n.
inline i64 fundamental_discriminant(i64 n) {
    require(n >= 1 && n % 2 == 1 && is_squarefree(n), "n must be odd, positive and square-free");
    return n % 4 == 1 ? -4 * n : -n;
}

// Primes of the discriminant; 2 last when present.
inline std::vector<i64> discriminant_primes(i64 n) {
    std::vector<i64> p = prime_divisors(n);
    if (n % 4 == 1) p.push_back(2);
    return p;
}

inline BitMatrix redei_matrix(const FactoredSquarefree& n) {
    require(n.value > 1 && n.value % 2 == 1, "n must be odd and greater than 1");
    const i64 D = fundamental_discriminant(n.value);
    auto P = discriminant_primes(n.value);
    const std::size_t t = P.size();
    BitMatrix R(t - 1, t);
    for (std::size_t i = 0; i + 1 < t; ++i) {
        const i64 p = P[i];
        const i64 pstar = (p % 4 == 1) ? p : -p;
        R.set(i, i, additive_jacobi(D / pstar, p));
        for (std::size_t j = 0; j < t; ++j)
            if (j != i) R.set(i, j, additive_jacobi(P[j], p));
    }
    return R;
}

inline std::size_t h2(const FactoredSquarefree& n) { return discriminant_primes(n.value).size() - 1; }

inline std::size_t h4(const FactoredSquarefree& n) {
    BitMatrix R = redei_matrix(n);
    return R.rows() - rank(R);
}

namespace detail {
inline i64 divisor_from_vector(const std::vector<i64>& primes, const BitVector& y) {
    i64 d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (y[i]) d = checked_mul(d, primes[i]);
    return d;
}
}  // namespace detail

// The two divisors of the discriminant mapping to the nontrivial element of 2A ∩ A[2] (h4 = 1).
inline std::pair<i64, i64> distinguished_pair(const FactoredSquarefree& n) {
    BitMatrix R = redei_matrix(n);
    require(R.rows() - rank(R) == 1, "distinguished divisor needs h4(n) = 1");
    auto P = discriminant_primes(n.value);
    std::vector<i64> others;
    for (const auto& y : span(kernel_basis(R), R.cols())) {
        i64 d = detail::divisor_from_vector(P, y);
        if (d != 1 && d != n.value) others.push_back(d);
    }
    require(others.size() == 2, "kernel of the Redei matrix does not contain the trivial pair");
    std::sort(others.begin(), others.end());
    return {others[0], others[1]};
}

inline i64 distinguished_divisor(const FactoredSquarefree& n) { return distinguished_pair(n).first; }

// ---------------------------------------------------------------- norm equations

struct NormSolution {
    i64 d = 1, dprime = 1;
    int r = 0;
    i64 alpha = 0, beta = 0, gamma = 0;
};

// Hilbert-symbol test for d x^2 + d' y^2 = 2^r z^2 having a nontrivial rational solution.
inline bool norm_equation_solvable(i64 d, i64 dprime, int r) {
    i64 a = checked_mul(d, i64{1} << r), b = checked_mul(dprime, i64{1} << r);
    std::vector<i64> places{kInfinity, 2};
    for (i64 p : prime_divisors(a)) places.push_back(p);
    for (i64 p : prime_divisors(b)) places.push_back(p);
    for (i64 v : places)
        if (hilbert(a, b, v) != 1) return false;
    return true;
}

struct NormSearchOptions {
    std::uint64_t seed = 0;  // 0: first solution in the scan order; otherwise a seeded pick among the first few
    i64 initial_bound = 0;   // 0: derived from the coefficients
    int max_doublings = 6;
};

// Positive primitive solution of d a^2 + d' b^2 = 2^r g^2, scanning g upward.
inline NormSolution solve_norm_equation(i64 d, i64 dprime, int r, const NormSearchOptions& opt = {}) {
    require(d >= 1 && dprime >= 1 && (r == 0 || r == 1), "norm equation needs positive d, d' and r in {0, 1}");
    if (!norm_equation_solvable(d, dprime, r)) throw contract_violation("norm equation has no rational solution");
    const i64 two_r = i64{1} << r;
    // Holzer: a solution with g <= sqrt(d d') exists when coefficients are coprime and square-free.
    i64 bound = opt.initial_bound ? opt.initial_bound : std::max<i64>(1024, 4 * isqrt(narrow(checked_mul128(two_r * d, dprime))) + 4);
    const bool loop_alpha = d >= dprime;
    const i64 big = loop_alpha ? d : dprime, small = loop_alpha ? dprime : d;
    const std::size_t wanted = opt.seed ? 8 : 1;
    std::vector<NormSolution> found;
    i64 g = 1;
    for (int round = 0; round <= opt.max_doublings; ++round, bound *= 2) {
        for (; g <= bound; ++g) {
            i128 T = checked_mul128(checked_mul128(g, g), two_r);
            for (i64 x = 1; checked_mul128(checked_mul128(x, x), big) < T; ++x) {
                i128 rem = T - checked_mul128(checked_mul128(x, x), big);
                if (rem % small) continue;
                i128 y2 = rem / small;
                if (y2 > INT64_MAX) continue;
                i64 y = isqrt(static_cast<i64>(y2));
                if (static_cast<i128>(y) * y != y2 || y == 0) continue;
                if (gcd(gcd(x, y), g) != 1) continue;
                NormSolution s{d, dprime, r, loop_alpha ? x : y, loop_alpha ? y : x, g};
                found.push_back(s);
                if (found.size() >= wanted) break;
            }
            if (found.size() >= wanted) break;
        }
        if (!found.empty() && (found.size() >= wanted || round == opt.max_doublings)) break;
    }
    if (found.empty())
        throw resource_exhausted("norm equation search exhausted gamma <= " + std::to_string(bound / 2));
    if (!opt.seed) return found.front();
    std::mt19937_64 rng(opt.seed);
    return found[rng() % found.size()];
}

// Odd part of gamma with factors of n removed (Lemma-2 hypothesis on w).
inline i64 reduce_witness(i64 gamma, i64 n) {
    while (gamma % 2 == 0) gamma /= 2;
    for (i64 p : prime_divisors(n))
        while (gamma % p == 0) gamma /= p;
    return gamma;
}

inline int h8_indicator(const FactoredSquarefree& n, const NormSearchOptions& opt = {}) {
    require(n.value % 4 == 1, "8-rank indicator is implemented for n = 1 mod 4");
    i64 d0 = distinguished_divisor(n);
    int r = d0 % 2 == 0 ? 1 : 0;
    i64 d = d0 >> r;
    NormSolution s = solve_norm_equation(d, n.value / d, r, opt);
    i64 w = reduce_witness(s.gamma, n.value);
    BitVector W(n.k());
    for (std::size_t i = 0; i < n.k(); ++i) W[i] = static_cast<std::uint8_t>(additive_jacobi(w, n.primes[i]));
    return solve(redei_matrix(n), W).has_value() ? 1 : 0;
}

// ---------------------------------------------------------------- class group oracle

struct QuadForm {
    i64 a, b, c;
    friend bool operator==(const QuadForm& x, const QuadForm& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

namespace detail {
inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline QuadForm reduce_form(QuadForm f, i64 D) {
    auto normalize = [&](QuadForm& g) {
        if (-g.a < g.b && g.b <= g.a) return;
        i64 r = floor_div(g.a - g.b, 2 * g.a);
        g.b += 2 * r * g.a;
        g.c = narrow((static_cast<i128>(g.b) * g.b - D) / (4 * static_cast<i128>(g.a)));
    };
    normalize(f);
    while (f.a > f.c) {
        f = {f.c, -f.b, f.a};
        normalize(f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

// Extended gcd: u a + v b = g >= 0.
inline i64 ext_gcd(i64 a, i64 b, i64& u, i64& v) {
    i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        i64 q = floor_div(a, b);
        i64 t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1; u0 = u1; u1 = t;
        t = v0 - q * v1; v0 = v1; v1 = t;
    }
    if (a < 0) { a = -a; u0 = -u0; v0 = -v0; }
    u = u0;
    v = v0;
    return a;
}
}  // namespace detail

// Gaussian composition of primitive positive definite forms of discriminant D.
inline QuadForm compose(QuadForm f1, QuadForm f2, i64 D) {
    if (f1.a > f2.a) std::swap(f1, f2);
    const i64 s = (f1.b + f2.b) / 2;
    const i64 nn = f2.b - s;
    i64 y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        i64 u, v;
        d = detail::ext_gcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 u, v;
        d1 = detail::ext_gcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    const i64 v1 = f1.a / d1, v2 = f2.a / d1;
    i128 rr = (static_cast<i128>(y1) * y2 % v1 * nn - static_cast<i128>(x2) * f2.c) % v1;
    if (rr < 0) rr += v1;
    const i64 r = static_cast<i64>(rr);
    const i64 b3 = narrow(f2.b + 2 * static_cast<i128>(v2) * r);
    const i64 a3 = checked_mul(v1, v2);
    const i64 c3 = narrow((static_cast<i128>(b3) * b3 - D) / (4 * static_cast<i128>(a3)));
    return detail::reduce_form({a3, b3, c3}, D);
}

inline QuadForm identity_form(i64 D) {
    return D % 4 == 0 ? QuadForm{1, 0, -D / 4} : QuadForm{1, 1, (1 - D) / 4};
}

inline QuadForm form_power(QuadForm f, u64 e, i64 D) {
    QuadForm r = identity_form(D);
    while (e) {
        if (e & 1) r = compose(r, f, D);
        f = compose(f, f, D);
        e >>= 1;
    }
    return r;
}

// Reduced primitive forms of discriminant D < 0.
inline std::vector<QuadForm> reduced_forms(i64 D) {
    require(D < 0 && (mod(D, 4) == 0 || mod(D, 4) == 1), "discriminant must be negative and 0 or 1 mod 4");
    std::vector<QuadForm> out;
    const i64 amax = isqrt(-D / 3);
    for (i64 a = 1; a <= amax; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod(b - D, 2) != 0) continue;
            i128 num = static_cast<i128>(b) * b - D;
            if (num % (4 * a)) continue;
            i64 c = static_cast<i64>(num / (4 * a));
            if (c < a || (c == a && b < 0)) continue;
            if (gcd(gcd(a, b < 0 ? -b : b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    return out;
}

struct ClassGroupRanks {
    std::size_t class_number = 1;
    std::size_t h2 = 0, h4 = 0, h8 = 0;
};

// 2-power ranks of the class group of Q(sqrt(-n)) from counts of 2^j-torsion elements.
inline ClassGroupRanks classgroup_oracle(i64 n, i64 bound = 10'000'000) {
    require(n <= bound, "class group oracle bound exceeded");
    const i64 D = fundamental_discriminant(n);
    auto forms = reduced_forms(D);
    ClassGroupRanks out;
    out.class_number = forms.size();
    u64 m = forms.size();
    while (m % 2 == 0) m /= 2;
    const QuadForm e = identity_form(D);
    std::size_t cnt[4] = {0, 0, 0, 0};
    for (const auto& f : forms) {
        QuadForm g = form_power(f, m, D);
        for (int j = 0; j < 4; ++j) {
            if (g == e) {
                for (int i = j; i < 4; ++i) ++cnt[i];
                break;
            }
            g = compose(g, g, D);
        }
    }
    auto lg = [](std::size_t a, std::size_t b) {
        std::size_t q = a / b, r = 0;
        while (q > 1) { q >>= 1; ++r; }
        return r;
    };
    out.h2 = lg(cnt[1], cnt[0]);
    out.h4 = lg(cnt[2], cnt[1]);
    out.h8 = lg(cnt[3], cnt[2]);
    return out;
}

// ---------------------------------------------------------------- quartic criterion

struct JungYueResult {
    int h8 = 0;
    bool rank_k_minus_2 = false;
    i64 d = 1, dprime = 1;
};

inline JungYueResult jung_yue(const FactoredSquarefree& n) {
    require(n.value % 8 == 1, "criterion needs n = 1 mod 8");
    for (i64 p : n.primes) require(p % 4 == 1, "criterion needs every prime of n to be 1 mod 4");
    require(h4(n) == 1, "criterion needs h4(n) = 1");
    const std::size_t k = n.k();
    BitMatrix A = matrix_A(n);
    JungYueResult res;
    BitVector z;
    if (rank(A) + 2 == k) {
        res.rank_k_minus_2 = true;
        for (const auto& v : span(kernel_basis(A), k)) {
            bool all = std::all_of(v.begin(), v.end(), [](auto x) { return x == 1; });
            bool none = std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
            if (!all && !none && v[0] == 1) z = v;
        }
        require(!z.empty(), "kernel vector not found");
    } else {
        auto sol = solve(A, vector_b(n));
        require(sol.has_value(), "b is not in the image of A");
        z = *sol;
    }
    res.d = detail::divisor_from_vector(n.primes, z);
    res.dprime = n.value / res.d;
    if (res.rank_k_minus_2) {
        int v = rational_quartic(res.d, res.dprime) * rational_quartic(res.dprime, res.d);
        res.h8 = v == -1 ? 1 : 0;
    } else {
        int target = ((n.value - 1) / 8) % 2 ? -1 : 1;
        int v = rational_quartic(2 * res.d, res.dprime) * rational_quartic(2 * res.dprime, res.d);
        res.h8 = v == target ? 1 : 0;
    }
    return res;
}

inline int jung_yue_h8(const FactoredSquarefree& n) { return jung_yue(n).h8; }

}  // namespace shatwist
