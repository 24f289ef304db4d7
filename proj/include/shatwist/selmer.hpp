#pragma once
// 2-Selmer groups of y^2 = x(x - An)(x + Bn) with A = a^2, B = b^2 (A + B = 2C):
// matrix description, lemma-based local tests, and an independent local-solvability oracle.

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arith.hpp"
#include "f2linalg.hpp"
#include "family.hpp"

namespace shatwist {

struct SelmerElement {
    i64 d1 = 1, d2 = 1, d3 = 1;

    friend bool operator==(const SelmerElement& x, const SelmerElement& y) {
        return std::tie(x.d1, x.d2, x.d3) == std::tie(y.d1, y.d2, y.d3);
    }
    friend bool operator<(const SelmerElement& x, const SelmerElement& y) {
        return std::tie(x.d1, x.d2, x.d3) < std::tie(y.d1, y.d2, y.d3);
    }
    std::string to_string() const {
        return "(" + std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d3) + ")";
    }
};

// The torsion images of (An,0), (-Bn,0), (0,0) and O.
inline std::vector<SelmerElement> torsion_images(const TwistTriple& t, i64 n) {
    i64 A = t.A(), B = t.B(), C = t.C();
    auto sq = [](i64 x) { return squarefree_part(x); };
    return {
        {sq(checked_mul(2 * A, C)), sq(checked_mul(2 * C, n)), sq(checked_mul(A, n))},
        {sq(checked_mul(-2 * C, n)), sq(checked_mul(2 * B, C)), sq(checked_mul(-B, n))},
        {sq(checked_mul(-A, n)), sq(checked_mul(B, n)), sq(checked_mul(-A, B))},
        {1, 1, 1},
    };
}

// Representative with positive odd d1, d2 modulo the torsion images.
inline SelmerElement canonicalize(SelmerElement e, const TwistTriple& t, i64 n) {
    for (const auto& tau : torsion_images(t, n)) {
        SelmerElement m{squarefree_of_product(e.d1, tau.d1), squarefree_of_product(e.d2, tau.d2),
                        squarefree_of_product(e.d3, tau.d3)};
        if (m.d1 > 0 && m.d2 > 0 && m.d1 % 2 != 0 && m.d2 % 2 != 0) return m;
    }
    throw contract_violation("element has no canonical representative");
}

// ---------------------------------------------------------------- matrices

namespace detail {
inline void check_twist(const TwistTriple& t, const FactoredSquarefree& n) {
    require(n.value % 2 == 1, "n must be odd");
    require(gcd(n.value, t.rad_abc()) == 1, "n must be coprime to abc");
}

inline std::vector<i64> block_qprimes(const TwistTriple& t) {
    std::vector<i64> q = t.a_primes;
    q.insert(q.end(), t.b_primes.begin(), t.b_primes.end());
    q.insert(q.end(), t.c_primes.begin(), t.c_primes.end());
    return q;
}
}  // namespace detail

// A_n: off-diagonal [p_j/p_i], diagonal the row sum.
inline BitMatrix matrix_A(const FactoredSquarefree& n) {
    std::size_t k = n.k();
    BitMatrix A(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        bool s = false;
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            bool v = additive_jacobi(n.primes[j], n.primes[i]);
            A.set(i, j, v);
            s ^= v;
        }
        A.set(i, i, s);
    }
    return A;
}

// D_u = diag([u/p_i]).
inline BitMatrix matrix_D(i64 u, const FactoredSquarefree& n) {
    BitMatrix D(n.k(), n.k());
    for (std::size_t i = 0; i < n.k(); ++i) D.set(i, i, additive_jacobi(u, n.primes[i]));
    return D;
}

// The column ([2/p_i]).
inline BitVector vector_b(const FactoredSquarefree& n) {
    BitVector b(n.k());
    for (std::size_t i = 0; i < n.k(); ++i) b[i] = static_cast<std::uint8_t>(additive_jacobi(2, n.primes[i]));
    return b;
}

// Column layout of M_1: [z_a | z_c | w_b | w_c].
inline BitMatrix build_M1(const TwistTriple& t) {
    const std::size_t ka = t.a_primes.size(), kb = t.b_primes.size(), kc = t.c_primes.size();
    const std::size_t k3 = ka + kb + kc;
    auto q = detail::block_qprimes(t);
    auto f = [&](std::size_t i, std::size_t j) { return i != j && additive_jacobi(q[j], q[i]); };
    const std::size_t za = 0, zc = ka, wb = ka + kc, wc = ka + kc + kb;
    const std::size_t ia = 0, ib = ka, ic = ka + kb;  // offsets of the a, b, c primes in q
    BitMatrix M(2 * k3 - ka, 2 * k3 - (ka + kb));
    std::size_t r = 0;
    for (std::size_t i = 0; i < ka; ++i, ++r) {
        for (std::size_t j = 0; j < kb; ++j) M.set(r, wb + j, f(ia + i, ib + j));
        for (std::size_t j = 0; j < kc; ++j) M.set(r, wc + j, f(ia + i, ic + j));
    }
    // (d1/q) = 1 at q | b is only forced when q = 1 mod 4; for q = 3 mod 4 the row stays zero.
    for (std::size_t i = 0; i < kb; ++i, ++r) {
        if (q[ib + i] % 4 == 3) continue;
        for (std::size_t j = 0; j < ka; ++j) M.set(r, za + j, f(ib + i, ia + j));
        for (std::size_t j = 0; j < kc; ++j) M.set(r, zc + j, f(ib + i, ic + j));
    }
    for (std::size_t i = 0; i < kc; ++i, ++r) {
        for (std::size_t j = 0; j < ka; ++j) M.set(r, za + j, f(ic + i, ia + j));
        for (std::size_t j = 0; j < kb; ++j) M.set(r, wb + j, f(ic + i, ib + j));
    }
    for (std::size_t i = 0; i < kb; ++i, ++r) M.set(r, wb + i, additive_jacobi(-1, q[ib + i]));
    for (std::size_t i = 0; i < kc; ++i, ++r) {
        M.set(r, zc + i, true);
        M.set(r, wc + i, true);
    }
    return M;
}

// Column layout of M_n: [x | y | z_a | z_c | w_b | w_c].
inline BitMatrix build_Mn(const TwistTriple& t, const FactoredSquarefree& n) {
    detail::check_twist(t, n);
    require(satisfies_residue_condition(n, t), "every prime of n must be a square modulo every prime of abc");
    const std::size_t k = n.k();
    const std::size_t ka = t.a_primes.size(), kb = t.b_primes.size(), kc = t.c_primes.size();
    BitMatrix M1 = build_M1(t);
    BitMatrix A = matrix_A(n);
    BitMatrix D2 = matrix_D(2, n), Dm2 = matrix_D(-2, n);
    BitMatrix M(2 * k + M1.rows(), 2 * k + M1.cols());
    M.paste(A + Dm2, 0, 0);
    M.paste(D2, 0, k);
    M.paste(D2, k, 0);
    M.paste(A + D2, k, k);
    auto g = [&](std::size_t i, i64 q) { return additive_jacobi(q, n.primes[i]); };
    const std::size_t za = 2 * k, zc = za + ka, wb = zc + kc, wc = wb + kb;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < ka; ++j) M.set(i, za + j, g(i, t.a_primes[j]));
        for (std::size_t j = 0; j < kc; ++j) M.set(i, zc + j, g(i, t.c_primes[j]));
        for (std::size_t j = 0; j < kb; ++j) M.set(k + i, wb + j, g(i, t.b_primes[j]));
        for (std::size_t j = 0; j < kc; ++j) M.set(k + i, wc + j, g(i, t.c_primes[j]));
    }
    M.paste(M1, 2 * k, 2 * k);
    return M;
}

inline SelmerElement decode_kernel_vector(const TwistTriple& t, const FactoredSquarefree& n, const BitVector& v) {
    const std::size_t k = n.k();
    const std::size_t ka = t.a_primes.size(), kb = t.b_primes.size(), kc = t.c_primes.size();
    i64 d1 = 1, d2 = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (v[i]) d1 = checked_mul(d1, n.primes[i]);
        if (v[k + i]) d2 = checked_mul(d2, n.primes[i]);
    }
    std::size_t o = 2 * k;
    for (std::size_t j = 0; j < ka; ++j)
        if (v[o + j]) d1 = checked_mul(d1, t.a_primes[j]);
    o += ka;
    for (std::size_t j = 0; j < kc; ++j)
        if (v[o + j]) d1 = checked_mul(d1, t.c_primes[j]);
    o += kc;
    for (std::size_t j = 0; j < kb; ++j)
        if (v[o + j]) d2 = checked_mul(d2, t.b_primes[j]);
    o += kb;
    for (std::size_t j = 0; j < kc; ++j)
        if (v[o + j]) d2 = checked_mul(d2, t.c_primes[j]);
    return {d1, d2, squarefree_of_product(d1, d2)};
}

// Pure 2-Selmer group, canonical representatives sorted ascending.
inline std::vector<SelmerElement> selmer_group(const TwistTriple& t, const FactoredSquarefree& n) {
    BitMatrix M = build_Mn(t, n);
    std::vector<SelmerElement> out;
    for (const auto& v : span(kernel_basis(M), M.cols())) out.push_back(decode_kernel_vector(t, n, v));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t s2(const TwistTriple& t, const FactoredSquarefree& n) {
    BitMatrix M = build_Mn(t, n);
    return M.cols() - rank(M);
}

// ---------------------------------------------------------------- local solvability oracle

namespace detail {

// A binary linear form alpha*lambda + beta*mu.
struct LinForm {
    i128 alpha, beta;
    i128 at(i128 l, i128 m) const { return checked_mul128(alpha, l) + checked_mul128(beta, m); }
};

// Square class of a nonzero integer over Q_p: parity of valuation and unit class.
inline int padic_class(i128 v, i64 p) {
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    int unit = (p == 2) ? static_cast<int>(mod(v, 8)) : (jacobi(v, p) == 1 ? 1 : 2);
    return (e % 2) * 16 + unit;
}

// The forms whose values are t^2, u1^2, u2^2, u3^2 (up to a common factor) on the solution pencil.
inline std::vector<LinForm> torsor_pencil(i64 A, i64 B, i64 C, i64 n, const SelmerElement& L) {
    require(A + B == 2 * C, "curve parameters must satisfy A + B = 2C");
    const i128 d1 = L.d1, d2 = L.d2, d3 = L.d3;
    const i128 An = checked_mul128(A, n), Cn2 = checked_mul128(2 * static_cast<i128>(C), n);
    return {
        {checked_mul128(d2, d3), 0},
        {0, checked_mul128(d2, d3)},
        {checked_mul128(Cn2, d3), checked_mul128(d1, d3)},
        {checked_mul128(An, d2), checked_mul128(d1, d2)},
    };
}

// Do all nonzero values share one square class at p?
inline bool same_class(const std::vector<i128>& vals, i64 p) {
    int cls = -1;
    for (i128 v : vals) {
        if (v == 0) continue;
        int c = padic_class(v, p);
        if (cls == -1) cls = c;
        else if (c != cls) return false;
    }
    return true;
}

inline bool proportional(const LinForm& f, const LinForm& g) {
    return checked_mul128(f.alpha, g.beta) == checked_mul128(f.beta, g.alpha);
}

class PencilSearch {
public:
    PencilSearch(std::vector<LinForm> forms, i64 p, int max_depth) : f_(std::move(forms)), p_(p), max_depth_(max_depth) {}

    bool run() {
        for (const auto& g : f_) {
            i128 l = g.beta, m = -g.alpha;
            i128 c = gcd128(l, m);
            if (c == 0) continue;
            if (root_ok(l / c, m / c)) return true;
        }
        for (i64 m0 = 0; m0 < p_; ++m0)
            if (disc(true, m0, 1)) return true;
        return disc(false, 0, 1);
    }

private:
    bool root_ok(i128 l, i128 m) const {
        std::vector<i128> vals;
        for (const auto& g : f_) vals.push_back(g.at(l, m));
        return same_class(vals, p_);
    }

    // Chart A: (1, c + p^r Z_p). Chart B: (c + p^r Z_p, 1) with c divisible by p.
    bool disc(bool chartA, i128 c, int r) {
        if (r > max_depth_) throw resource_exhausted("local solvability search exceeded its depth bound");
        enum Kind { Constant, Varying, Unknown };
        std::vector<Kind> kind(f_.size());
        std::vector<std::size_t> varying;
        int cls = -1;
        bool unknown = false;
        for (std::size_t j = 0; j < f_.size(); ++j) {
            const auto& g = f_[j];
            i128 val = chartA ? g.alpha + checked_mul128(g.beta, c) : checked_mul128(g.alpha, c) + g.beta;
            i128 slope = chartA ? g.beta : g.alpha;
            int R = slope == 0 ? (1 << 20) : r + valuation(slope, p_);
            int v = valuation(val, p_);
            if (v >= R) {
                kind[j] = Varying;
                varying.push_back(j);
            } else if (p_ != 2 || R - v >= 3) {
                kind[j] = Constant;
                int c2 = padic_class(val, p_);
                if (cls == -1) cls = c2;
                else if (c2 != cls) return false;
            } else {
                kind[j] = Unknown;
                unknown = true;
            }
        }
        if (!unknown) {
            if (varying.empty()) return true;
            bool one_line = true;
            bool square_ratios = true;
            for (std::size_t j : varying) {
                if (!proportional(f_[j], f_[varying[0]])) one_line = false;
                else {
                    // Ratio of proportional forms: compare classes of a common nonzero coefficient.
                    const auto& g = f_[j];
                    const auto& h = f_[varying[0]];
                    i128 x = g.alpha != 0 ? g.alpha : g.beta;
                    i128 y = h.alpha != 0 ? h.alpha : h.beta;
                    if (padic_class(x, p_) != padic_class(y, p_)) square_ratios = false;
                }
            }
            if (one_line) return square_ratios;
        }
        i128 step = 1;
        for (int i = 0; i < r; ++i) step = checked_mul128(step, p_);
        for (i64 d = 0; d < p_; ++d)
            if (disc(chartA, c + checked_mul128(step, d), r + 1)) return true;
        return false;
    }

    std::vector<LinForm> f_;
    i64 p_;
    int max_depth_;
};

inline bool real_solvable(const std::vector<LinForm>& forms) {
    using boost::multiprecision::cpp_rational;
    // Points (1, x) for rational x, plus (0, 1).
    std::vector<cpp_rational> roots;
    auto to_cpp = [](i128 v) {
        boost::multiprecision::cpp_int r = 0;
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        r = static_cast<unsigned long long>(u >> 64);
        r <<= 64;
        r += static_cast<unsigned long long>(u & ~0ULL);
        return neg ? boost::multiprecision::cpp_int(-r) : r;
    };
    for (const auto& g : forms)
        if (g.beta != 0) roots.push_back(cpp_rational(to_cpp(-g.alpha)) / cpp_rational(to_cpp(g.beta)));
    std::sort(roots.begin(), roots.end());
    std::vector<cpp_rational> pts;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        pts.push_back(roots[i]);
        if (i + 1 < roots.size()) pts.push_back((roots[i] + roots[i + 1]) / 2);
    }
    pts.push_back(roots.empty() ? cpp_rational(0) : roots.front() - 1);
    pts.push_back(roots.empty() ? cpp_rational(0) : roots.back() + 1);
    auto check = [&](const cpp_rational& x, bool at_infinity) {
        int s = 0;
        for (const auto& g : forms) {
            cpp_rational v = at_infinity ? cpp_rational(to_cpp(g.beta)) : cpp_rational(to_cpp(g.alpha)) + cpp_rational(to_cpp(g.beta)) * x;
            int sg = v.sign();
            if (sg == 0) continue;
            if (s == 0) s = sg;
            else if (sg != s) return false;
        }
        return true;
    };
    for (const auto& x : pts)
        if (check(x, false)) return true;
    return check(0, true);
}

}  // namespace detail

// Decides D_Lambda(Q_place) != empty for the torsor of (A, B, C, n) by an exact search on the
// pencil of square values; `precision` raises the refinement depth bound.
inline bool torsor_local_solvable(i64 A, i64 B, i64 C, i64 n, const SelmerElement& L, i64 place, int precision = 3) {
    require(L.d1 != 0 && L.d2 != 0 && L.d3 != 0, "torsor label entries must be nonzero");
    auto forms = detail::torsor_pencil(A, B, C, n, L);
    if (place == kInfinity) return detail::real_solvable(forms);
    require(place >= 2 && is_prime(place), "place must be a prime or infinity");
    int depth = 64 + 2 * valuation(checked_mul128(checked_mul128(2 * static_cast<i128>(n), A * static_cast<i128>(B)),
                                                     checked_mul128(L.d1, checked_mul128(L.d2, L.d3))), place) +
                precision;
    return detail::PencilSearch(std::move(forms), place, depth).run();
}

inline bool local_solvable_bruteforce(const SelmerElement& L, const TwistTriple& t, i64 n, i64 place, int precision = 3) {
    return torsor_local_solvable(t.A(), t.B(), t.C(), n, L, place, precision);
}

// ---------------------------------------------------------------- lemma-based local tests

namespace detail {
inline bool is_canonical(const SelmerElement& L, i64 n, const TwistTriple& t) {
    if (L.d1 <= 0 || L.d2 <= 0 || L.d3 <= 0) return false;
    if (!is_squarefree(L.d1) || !is_squarefree(L.d2) || !is_squarefree(L.d3)) return false;
    if (squarefree_of_product(L.d1, L.d2) != L.d3) return false;
    i64 m = checked_mul(n, t.rad_abc());
    return m % L.d1 == 0 && m % L.d2 == 0;
}

// Legendre symbol of a product, evaluated factorwise.
inline int sym(std::initializer_list<i64> xs, i64 p) {
    int s = 1;
    for (i64 x : xs) s *= jacobi(x, p);
    return s;
}

// X = x1 * x2^2 with x1 square-free.
inline std::pair<i64, i64> split_square(i64 X) {
    i64 x1 = squarefree_part(X);
    return {x1, isqrt(X / x1)};
}
}  // namespace detail

inline bool local_solvable_lemma(const SelmerElement& L, const TwistTriple& t, i64 n, i64 place) {
    using detail::sym;
    const i64 A = t.A(), B = t.B(), C = t.C();
    require(n > 0 && n % 2 == 1 && gcd(n, t.rad_abc()) == 1, "n must be odd, positive and coprime to abc");
    if (place == kInfinity) return L.d2 > 0;
    require(place >= 2 && is_prime(place), "place must be a prime or infinity");
    const i64 p = place;
    if (p == 2) {
        bool e1 = L.d1 % 2 == 0, e2 = L.d2 % 2 == 0;
        if (e1 != e2) return false;
        if (e1 || !detail::is_canonical(L, n, t)) return local_solvable_bruteforce(L, t, n, p);
        const i64 d1 = L.d1, d2 = L.d2, d3 = L.d3;
        i128 An = checked_mul128(A, n), Cn2 = checked_mul128(2 * static_cast<i128>(C), n);
        return (mod(d1 - d3, 4) == 0 && mod(d1 - d2, 8) == 0) ||
               (mod(d1 + An, 4) == 0 && mod(static_cast<i128>(d1) - d2 + Cn2, 8) == 0);
    }
    if (!detail::is_canonical(L, n, t)) return local_solvable_bruteforce(L, t, n, p);
    const bool p1 = L.d1 % p == 0, p2 = L.d2 % p == 0, p3 = L.d3 % p == 0;
    if (n % p == 0) {
        // ((n/d)/p) for p | d, as ((n/p)(d/p) / p).
        auto quot = [&](i64 d) { return jacobi(static_cast<i128>(n / p) * (d / p), p); };
        if (!p1 && !p2) return sym({L.d1}, p) == 1 && sym({L.d2}, p) == 1;
        if (!p1 && p2) return sym({L.d1}, p) == sym({2, A, C}, p) && quot(L.d2) == sym({2, A, B}, p);
        if (p1 && !p2) return quot(L.d1) == sym({-2, A, B}, p) && sym({L.d2}, p) == sym({2, B, C}, p);
        return quot(L.d1) == sym({-1, B, C}, p) && quot(L.d2) == sym({A, C}, p);
    }
    // At p | x2 (x = x1 x2^2) two of the u's may both be divisible by p, which adds a second
    // admissible residue class in the case where p divides none of the d's.
    const i64 nmod = mod(n, p);
    if (A % p == 0) {
        if (p2) return false;
        auto [a1, a2] = detail::split_square(A);
        if (!p1) return sym({L.d2}, p) == 1 || (a2 % p == 0 && sym({B, nmod, L.d2}, p) == 1);
        if (a2 % p == 0) return sym({L.d2}, p) == 1 && sym({B, nmod}, p) == 1;
        return sym({B, nmod, L.d2}, p) == 1;
    }
    if (B % p == 0) {
        if (p1) return false;
        auto [b1, b2] = detail::split_square(B);
        if (!p2) return sym({L.d1}, p) == 1 || (b2 % p == 0 && sym({-A, nmod, L.d1}, p) == 1);
        if (b2 % p == 0) return sym({-A, nmod}, p) == 1 && sym({L.d1}, p) == 1;
        return sym({-A, nmod, L.d1}, p) == 1;
    }
    if (C % p == 0) {
        if (p3) return false;
        auto [c1, c2] = detail::split_square(C);
        if (!p1 && !p2) return sym({L.d3}, p) == 1 || (c2 % p == 0 && sym({-B, nmod, L.d3}, p) == 1);
        if (c2 % p == 0) return sym({A, nmod}, p) == 1 && sym({L.d3}, p) == 1;
        return sym({A, nmod, L.d3}, p) == 1;
    }
    return !p1 && !p2 && !p3;
}

// The places at which local conditions can fail.
inline std::vector<i64> bad_places(const TwistTriple& t, i64 n) {
    std::vector<i64> places{kInfinity, 2};
    for (i64 p : prime_divisors(n)) places.push_back(p);
    for (i64 q : t.qprimes) places.push_back(q);
    return places;
}

// Pure 2-Selmer group by testing every canonical label at every bad place with the oracle.
inline std::vector<SelmerElement> selmer_bruteforce(const TwistTriple& t, i64 n) {
    require(n > 0 && n % 2 == 1 && is_squarefree(n), "n must be odd, positive and square-free");
    require(gcd(n, t.rad_abc()) == 1, "n must be coprime to abc");
    std::vector<i64> primes = prime_divisors(n);
    primes.insert(primes.end(), t.qprimes.begin(), t.qprimes.end());
    require(primes.size() <= 12, "too many primes for the exhaustive Selmer search");
    auto divs = squarefree_divisors(primes);
    auto places = bad_places(t, n);
    std::vector<SelmerElement> out;
    for (i64 d1 : divs)
        for (i64 d2 : divs) {
            SelmerElement L{d1, d2, squarefree_of_product(d1, d2)};
            bool ok = true;
            for (i64 v : places)
                if (!local_solvable_bruteforce(L, t, n, v)) {
                    ok = false;
                    break;
                }
            if (ok) out.push_back(L);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Full 2-Selmer dimension of the untwisted curve, torsion included.
inline std::size_t base_selmer_dim(const TwistTriple& t) {
    BitMatrix M1 = build_M1(t);
    return 2 + (M1.cols() - rank(M1));
}

}  // namespace shatwist
