#pragma once
// Rational torsion of y^2 = x(x - a)(x + b): Ono's criteria and a division-polynomial oracle.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "family.hpp"

namespace shatwist {

using boost::multiprecision::cpp_int;

namespace detail {
inline bool is_square_big(const cpp_int& v) {
    if (v < 0) return false;
    cpp_int r = boost::multiprecision::sqrt(v);
    return r * r == v;
}
}  // namespace detail

// Some pair among [-a, b], [a, a + b], [-b, -a - b] consists of two integer squares.
inline bool ono_order4(i64 a, i64 b) {
    const cpp_int A = a, B = b;
    const std::pair<cpp_int, cpp_int> pairs[3] = {{-A, B}, {A, A + B}, {-B, -A - B}};
    for (const auto& [x, y] : pairs)
        if (detail::is_square_big(x) && detail::is_square_big(y)) return true;
    return false;
}

// Some pair equals [d^2 u^4, d^2 v^4] with u^2 + v^2 = w^2, u, v, w pairwise coprime.
inline bool ono_order8(i64 a, i64 b) {
    const cpp_int A = a, B = b;
    const std::pair<cpp_int, cpp_int> pairs[3] = {{-A, B}, {A, A + B}, {-B, -A - B}};
    for (const auto& [x, y] : pairs) {
        if (x <= 0 || y <= 0 || !detail::is_square_big(x) || !detail::is_square_big(y)) continue;
        cpp_int X = boost::multiprecision::sqrt(x), Y = boost::multiprecision::sqrt(y);
        cpp_int d = boost::multiprecision::gcd(X, Y);
        cpp_int u2 = X / d, v2 = Y / d;
        if (detail::is_square_big(u2) && detail::is_square_big(v2) && detail::is_square_big(u2 + v2)) return true;
    }
    return false;
}

// a = -(u^4 + 2u^3 v) d^2, b = (v^4 + 2v^3 u) d^2 with gcd(u, v) = 1 and u/v outside {-2, -1/2, -1, 1, 0}.
// u^3 divides a/d^2, so |u| is bounded by a cube root.
inline bool ono_order3(i64 a, i64 b) {
    if (a == 0 || b == 0) return false;
    const i64 g = gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    for (i64 d = 1; d * d <= g; ++d) {
        if (g % (d * d)) continue;
        const i64 Ap = -a / (d * d), Bp = b / (d * d);
        const i64 umax = icbrt(Ap < 0 ? -Ap : Ap);
        for (i64 au = 1; au <= umax; ++au)
            for (i64 u : {au, -au}) {
                const i64 u3 = u * u * u;
                if (Ap % u3) continue;
                const i64 s = Ap / u3 - u;  // 2v
                if (s % 2) continue;
                const i64 v = s / 2;
                if (v == 0 || gcd(au, v < 0 ? -v : v) != 1) continue;
                if (u == -2 * v || 2 * u == -v || u == -v || u == v) continue;
                const i128 rhs = static_cast<i128>(v) * v * v * (v + 2 * u);
                if (rhs == Bp) return true;
            }
    }
    return false;
}

// ---------------------------------------------------------------- division-polynomial oracle

namespace detail {
using Poly = std::vector<cpp_int>;  // ascending coefficients

inline cpp_int eval(const Poly& p, const cpp_int& x) {
    cpp_int r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline long double evalf(const std::vector<long double>& p, long double x) {
    long double r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

// Approximate real roots and critical points of p, by recursion on the derivative.
inline std::vector<long double> real_root_candidates(const std::vector<long double>& p, long double bound) {
    std::size_t deg = p.size() - 1;
    if (deg == 0) return {};
    if (deg == 1) return {-p[0] / p[1]};
    std::vector<long double> dp(deg);
    for (std::size_t i = 1; i <= deg; ++i) dp[i - 1] = p[i] * static_cast<long double>(i);
    std::vector<long double> crit = real_root_candidates(dp, bound);
    std::vector<long double> pts{-bound};
    for (long double c : crit)
        if (c > -bound && c < bound) pts.push_back(c);
    pts.push_back(bound);
    std::sort(pts.begin(), pts.end());
    std::vector<long double> out = crit;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        long double lo = pts[i], hi = pts[i + 1];
        long double flo = evalf(p, lo), fhi = evalf(p, hi);
        if ((flo < 0) == (fhi < 0)) continue;
        for (int it = 0; it < 300 && lo < hi; ++it) {
            long double mid = lo + (hi - lo) / 2;
            if (mid == lo || mid == hi) break;
            if ((evalf(p, mid) < 0) == (flo < 0)) lo = mid;
            else hi = mid;
        }
        out.push_back(lo);
    }
    return out;
}

// Integer roots of an integer polynomial (leading coefficient nonzero).
inline std::set<cpp_int> integer_roots(const Poly& p) {
    std::vector<long double> pf;
    for (const auto& c : p) pf.push_back(static_cast<long double>(c));
    long double bound = 1;
    for (std::size_t i = 0; i + 1 < pf.size(); ++i) bound = std::max(bound, std::fabs(pf[i] / pf.back()));
    bound += 2;
    std::set<cpp_int> roots;
    if (p[0] == 0) roots.insert(0);
    for (long double r : real_root_candidates(pf, bound)) {
        cpp_int c(std::llround(r));
        if (std::fabs(r) > 9e18L) c = cpp_int(std::floor(r));
        for (int delta = -1; delta <= 1; ++delta)
            if (eval(p, c + delta) == 0) roots.insert(c + delta);
    }
    return roots;
}
}  // namespace detail

struct TorsionShape {
    int m = 1;  // E(Q)_tors = Z/2 x Z/2m
    bool has_order3 = false, has_order4 = false;
    std::string to_string() const {
        return m == 1 ? "Z/2 x Z/2" : "Z/2 x Z/" + std::to_string(2 * m);
    }
};

// y^2 = x(x - a)(x + b). Torsion points have integer coordinates on this integral model,
// so it suffices to find integer roots of psi_3 and psi_4/psi_2 with f(x) a square.
inline TorsionShape torsion_oracle_curve(i64 a, i64 b) {
    require(a != 0 && b != 0 && a != -b, "curve is singular");
    const cpp_int a2 = cpp_int(b) - a, a4 = -cpp_int(a) * b;
    const cpp_int b2 = 4 * a2, b4 = 2 * a4, b6 = 0, b8 = -a4 * a4;
    const detail::Poly psi3{b8, 3 * b6, 3 * b4, b2, 3};
    const detail::Poly psi4_over_2y{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2};
    auto f = [&](const cpp_int& x) { return x * (x - a) * (x + b); };
    TorsionShape s;
    for (const auto& x : detail::integer_roots(psi3))
        if (detail::is_square_big(f(x))) s.has_order3 = true;
    for (const auto& x : detail::integer_roots(psi4_over_2y)) {
        cpp_int y2 = f(x);
        if (y2 > 0 && detail::is_square_big(y2)) s.has_order4 = true;
    }
    require(!(s.has_order3 && s.has_order4), "torsion would exceed the Mazur bound");
    if (s.has_order3) s.m = 3;
    else if (s.has_order4) s.m = ono_order8(a, b) ? 4 : 2;
    return s;
}

inline TorsionShape torsion_oracle(const TwistTriple& t, i64 n) {
    return torsion_oracle_curve(checked_mul(t.A(), n), checked_mul(t.B(), n));
}

}  // namespace shatwist
