#pragma once
// Generating triples a^2 + b^2 = 2c^2 and admissibility of twist parameters.

#include <string>
#include <vector>

#include "arith.hpp"

namespace shatwist {

struct TwistTriple {
    i64 a = 1, b = 1, c = 1;
    // Primes of a, of b and of c, each ascending; the block order used by the Selmer matrices.
    std::vector<i64> a_primes, b_primes, c_primes;
    std::vector<i64> qprimes;  // all primes of abc, ascending
    std::size_t kprime = 0;

    TwistTriple() : TwistTriple(1, 1, 1) {}
    TwistTriple(i64 a_, i64 b_, i64 c_) : a(a_), b(b_), c(c_) {
        require(a > 0 && b > 0 && c > 0, "triple entries must be positive");
        require(a % 2 == 1 && b % 2 == 1 && c % 2 == 1, "triple entries must be odd");
        require(gcd(a, b) == 1, "triple must be primitive");
        i128 lhs = static_cast<i128>(a) * a + static_cast<i128>(b) * b;
        require(lhs == 2 * static_cast<i128>(c) * c, "triple must satisfy a^2 + b^2 = 2c^2");
        a_primes = prime_divisors(a);
        b_primes = prime_divisors(b);
        c_primes = prime_divisors(c);
        qprimes = a_primes;
        qprimes.insert(qprimes.end(), b_primes.begin(), b_primes.end());
        qprimes.insert(qprimes.end(), c_primes.begin(), c_primes.end());
        std::sort(qprimes.begin(), qprimes.end());
        kprime = qprimes.size();
    }

    // Curve parameters (A, B, C) = (a^2, b^2, c^2) with A + B = 2C.
    i64 A() const { return checked_mul(a, a); }
    i64 B() const { return checked_mul(b, b); }
    i64 C() const { return checked_mul(c, c); }
    i64 rad_abc() const {
        i64 r = 1;
        for (i64 q : qprimes) r = checked_mul(r, q);
        return r;
    }
    std::string to_string() const {
        return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
    }
    friend bool operator==(const TwistTriple& x, const TwistTriple& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

inline TwistTriple triple_from_k(i64 k) {
    require(k > -1000000 && k < 1000000, "k out of range");
    i64 k2 = 4 * k * k;
    auto abs = [](i64 v) { return v < 0 ? -v : v; };
    return TwistTriple(abs(k2 - 4 * k - 1), abs(k2 + 4 * k - 1), abs(k2 + 1));
}

namespace detail {
inline void require_twist_prime(i64 p, const TwistTriple& t) {
    require(p > 2 && is_prime(p), "p must be an odd prime");
    for (i64 q : t.qprimes) require(q != p, "p must not divide abc");
}
inline bool residue_mod_all(i64 p, const TwistTriple& t) {
    for (i64 q : t.qprimes)
        if (jacobi(p, q) != 1) return false;
    return true;
}
}  // namespace detail

inline bool admissible_t1(i64 p, const TwistTriple& t) {
    detail::require_twist_prime(p, t);
    return (p % 8 == 1 || p % 8 == 7) && detail::residue_mod_all(p, t);
}

inline bool admissible_t2(i64 p, const TwistTriple& t) {
    detail::require_twist_prime(p, t);
    return p % 4 == 1 && detail::residue_mod_all(p, t);
}

// Every p | n is a square modulo every q | abc.
inline bool satisfies_residue_condition(const FactoredSquarefree& n, const TwistTriple& t) {
    for (i64 p : n.primes)
        for (i64 q : t.qprimes)
            if (p == q || jacobi(p, q) != 1) return false;
    return true;
}

inline bool admissible_n(const FactoredSquarefree& n, const TwistTriple& t, int theorem) {
    require(theorem == 1 || theorem == 2, "theorem must be 1 or 2");
    if (n.value % 8 != 1) return false;
    if (gcd(n.value, 2 * t.rad_abc()) != 1) return false;
    for (i64 p : n.primes)
        if (!(theorem == 1 ? admissible_t1(p, t) : admissible_t2(p, t))) return false;
    return true;
}

}  // namespace shatwist
