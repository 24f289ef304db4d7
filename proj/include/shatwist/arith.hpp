#pragma once
// Residue symbols over Z and Z[i], Hilbert symbols.

#include <array>
#include <optional>
#include <ostream>
#include <vector>

#include "core.hpp"

namespace shatwist {

// ---------------------------------------------------------------- factored n

struct FactoredSquarefree {
    i64 value = 1;
    std::vector<i64> primes;

    FactoredSquarefree() = default;
    explicit FactoredSquarefree(i64 n) : value(n) {
        require(n >= 1, "square-free parameter must be positive");
        for (auto& [p, e] : factorize(n)) {
            require(e == 1, "parameter is not square-free");
            primes.push_back(p);
        }
    }
    std::size_t k() const { return primes.size(); }
};

// ---------------------------------------------------------------- Jacobi

inline int jacobi(i128 m, i64 d) {
    if (d <= 0 || d % 2 == 0) throw contract_violation("jacobi: modulus must be odd and positive");
    i64 a = mod(m, d);
    i64 n = d;
    int s = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

// [m/d]: 1 when the Jacobi symbol is -1, else 0.
inline int additive_jacobi(i128 m, i64 d) {
    int j = jacobi(m, d);
    if (j == 0) throw undefined_symbol("additive Jacobi symbol needs gcd(m, d) = 1");
    return j == -1 ? 1 : 0;
}

// ---------------------------------------------------------------- Hilbert

struct Rational {
    i64 num = 1, den = 1;
    Rational(i64 n = 1, i64 d = 1) : num(n), den(d) {
        require(d != 0, "zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
    }
};

// Place: 0 stands for the real place.
inline constexpr i64 kInfinity = 0;

namespace detail {
inline int hilbert_int(i64 a, i64 b, i64 p) {
    require(a != 0 && b != 0, "hilbert symbol of zero");
    if (p == kInfinity) return (a < 0 && b < 0) ? -1 : 1;
    int alpha = 0, beta = 0;
    while (a % p == 0) { a /= p; ++alpha; }
    while (b % p == 0) { b /= p; ++beta; }
    if (p == 2) {
        auto eps = [](i64 u) { return static_cast<int>(mod(u, 4) == 3); };
        auto omega = [](i64 u) {
            i64 r = mod(u, 8);
            return static_cast<int>(r == 3 || r == 5);
        };
        int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
        return (e % 2) ? -1 : 1;
    }
    int s = ((alpha * beta) % 2 && mod(p, 4) == 3) ? -1 : 1;
    if (beta % 2) s *= jacobi(a, p);
    if (alpha % 2) s *= jacobi(b, p);
    return s;
}
}  // namespace detail

// (a, b)_place; a rational is replaced by num*den, which has the same square class.
inline int hilbert(Rational a, Rational b, i64 place) {
    require(place == kInfinity || (place >= 2 && is_prime(place)), "place must be a prime or infinity");
    i64 aa = squarefree_part(checked_mul(squarefree_part(a.num), squarefree_part(a.den)));
    i64 bb = squarefree_part(checked_mul(squarefree_part(b.num), squarefree_part(b.den)));
    return detail::hilbert_int(aa, bb, place);
}

// ---------------------------------------------------------------- Z[i]

struct GaussInt {
    i64 re = 0, im = 0;
    constexpr GaussInt() = default;
    constexpr GaussInt(i64 r, i64 i = 0) : re(r), im(i) {}

    i128 norm() const { return static_cast<i128>(re) * re + static_cast<i128>(im) * im; }
    bool is_zero() const { return re == 0 && im == 0; }
    GaussInt conj() const { return {re, -im}; }

    friend GaussInt operator+(GaussInt a, GaussInt b) { return {checked_add(a.re, b.re), checked_add(a.im, b.im)}; }
    friend GaussInt operator-(GaussInt a, GaussInt b) { return {checked_add(a.re, -b.re), checked_add(a.im, -b.im)}; }
    friend GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(GaussInt a, GaussInt b) {
        i128 r = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
        i128 i = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
        return {narrow(r), narrow(i)};
    }
    friend bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(GaussInt a, GaussInt b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, GaussInt g) {
        return os << g.re << (g.im < 0 ? "-" : "+") << (g.im < 0 ? -g.im : g.im) << "i";
    }
};

namespace detail {
// Nearest integer to num/den for den > 0.
inline i128 round_div(i128 num, i128 den) {
    i128 q = num / den;
    i128 r = num % den;
    if (r < 0) { r += den; --q; }
    if (2 * r >= den) ++q;
    return q;
}
}  // namespace detail

// Euclidean remainder a mod b with N(remainder) < N(b).
inline GaussInt gauss_mod(GaussInt a, GaussInt b) {
    require(!b.is_zero(), "Gaussian division by zero");
    i128 n = b.norm();
    i128 xr = static_cast<i128>(a.re) * b.re + static_cast<i128>(a.im) * b.im;
    i128 xi = static_cast<i128>(a.im) * b.re - static_cast<i128>(a.re) * b.im;
    GaussInt q{narrow(detail::round_div(xr, n)), narrow(detail::round_div(xi, n))};
    return a - q * b;
}

// Exact quotient; throws if b does not divide a.
inline GaussInt gauss_div_exact(GaussInt a, GaussInt b) {
    require(!b.is_zero(), "Gaussian division by zero");
    i128 n = b.norm();
    i128 xr = static_cast<i128>(a.re) * b.re + static_cast<i128>(a.im) * b.im;
    i128 xi = static_cast<i128>(a.im) * b.re - static_cast<i128>(a.re) * b.im;
    require(xr % n == 0 && xi % n == 0, "inexact Gaussian division");
    return {narrow(xr / n), narrow(xi / n)};
}

inline bool gauss_divides(GaussInt b, GaussInt a) { return gauss_mod(a, b).is_zero(); }

inline constexpr std::array<GaussInt, 4> kUnits{GaussInt{1, 0}, GaussInt{0, 1}, GaussInt{-1, 0}, GaussInt{0, -1}};

// Primary: congruent to 1 modulo 2+2i.
inline bool is_primary(GaussInt a) { return gauss_divides(GaussInt{2, 2}, a - GaussInt{1}); }

inline bool coprime_to_1_plus_i(GaussInt a) { return (mod(a.re, 2) + mod(a.im, 2)) % 2 == 1; }

// The unique associate u*a that is primary.
inline GaussInt primary_associate(GaussInt a) {
    require(coprime_to_1_plus_i(a), "element is not coprime to 1+i");
    for (auto u : kUnits)
        if (is_primary(u * a)) return u * a;
    throw contract_violation("no primary associate");
}

struct GaussFactorization {
    GaussInt unit{1};
    std::vector<GaussInt> primes;  // primary primes with multiplicity
};

namespace detail {
// A Gaussian prime above a split prime p = 1 mod 4.
inline GaussInt split_prime(i64 p) {
    i64 c = 2;
    while (powmod(c, static_cast<u64>((p - 1) / 2), p) != p - 1) ++c;
    i64 x = powmod(c, static_cast<u64>((p - 1) / 4), p);  // x^2 = -1 mod p
    GaussInt a{p}, b{x, 1};
    while (!b.is_zero()) {
        GaussInt r = gauss_mod(a, b);
        a = b;
        b = r;
    }
    require(a.norm() == p, "failed to split prime");
    return a;
}
}  // namespace detail

inline GaussFactorization primary_factorization(GaussInt theta) {
    require(!theta.is_zero(), "cannot factor zero");
    require(coprime_to_1_plus_i(theta), "element is divisible by 1+i");
    GaussFactorization f;
    GaussInt rest = theta;
    i128 nrm = theta.norm();
    require(nrm <= INT64_MAX, "norm too large to factor");
    for (auto& [p, e] : factorize(static_cast<i64>(nrm))) {
        if (p % 4 == 3) {
            GaussInt q = primary_associate(GaussInt{p});
            for (int j = 0; j < e / 2; ++j) {
                rest = gauss_div_exact(rest, q);
                f.primes.push_back(q);
            }
        } else {
            GaussInt pi = primary_associate(detail::split_prime(p));
            GaussInt pib = primary_associate(pi.conj());
            for (int j = 0; j < e; ++j) {
                GaussInt use = gauss_divides(pi, rest) ? pi : pib;
                rest = gauss_div_exact(rest, use);
                f.primes.push_back(use);
            }
        }
    }
    require(rest.norm() == 1, "factorization left a non-unit");
    f.unit = rest;
    return f;
}

// ---------------------------------------------------------------- quartic values

// An element of {0, 1, i, -1, -i}; k is the exponent of i.
struct QuarticValue {
    bool zero = false;
    int k = 0;

    static QuarticValue zero_value() { return {true, 0}; }
    static QuarticValue power_of_i(int k) { return {false, ((k % 4) + 4) % 4}; }
    static QuarticValue from_unit(GaussInt u) {
        for (int k = 0; k < 4; ++k)
            if (kUnits[k] == u) return power_of_i(k);
        throw contract_violation("not a unit");
    }
    GaussInt as_gauss() const { return zero ? GaussInt{0} : kUnits[k]; }
    // +1/-1 for real values; throws for +-i or 0.
    int as_sign() const {
        if (zero || k % 2) throw undefined_symbol("quartic value is not real");
        return k == 0 ? 1 : -1;
    }
    friend QuarticValue operator*(QuarticValue a, QuarticValue b) {
        if (a.zero || b.zero) return zero_value();
        return power_of_i(a.k + b.k);
    }
    friend bool operator==(QuarticValue a, QuarticValue b) { return a.zero == b.zero && (a.zero || a.k == b.k); }
};

namespace detail {
inline GaussInt gauss_powmod(GaussInt base, i128 e, GaussInt m) {
    GaussInt r{1};
    GaussInt b = gauss_mod(base, m);
    r = gauss_mod(r, m);
    while (e > 0) {
        if (e & 1) r = gauss_mod(r * b, m);
        b = gauss_mod(b * b, m);
        e >>= 1;
    }
    return r;
}

// alpha^((N pi - 1)/div) mod pi, matched against units; pi a primary prime.
inline QuarticValue power_residue_at_prime(GaussInt alpha, GaussInt pi, int div) {
    if (gauss_divides(pi, alpha)) return QuarticValue::zero_value();
    GaussInt r = gauss_powmod(alpha, (pi.norm() - 1) / div, pi);
    for (int k = 0; k < 4; ++k)
        if (gauss_divides(pi, r - kUnits[k])) return QuarticValue::power_of_i(k);
    throw contract_violation("power residue is not a unit modulo the prime");
}

inline GaussFactorization primary_modulus(GaussInt lambda) {
    auto f = primary_factorization(lambda);
    require(f.unit == GaussInt{1}, "modulus must be primary");
    return f;
}
}  // namespace detail

inline QuarticValue quartic_symbol(GaussInt alpha, GaussInt lambda) {
    QuarticValue v = QuarticValue::power_of_i(0);
    for (auto pi : detail::primary_modulus(lambda).primes) v = v * detail::power_residue_at_prime(alpha, pi, 4);
    return v;
}

inline int legendre_gauss(GaussInt alpha, GaussInt lambda) {
    int s = 1;
    for (auto pi : detail::primary_modulus(lambda).primes) {
        QuarticValue v = detail::power_residue_at_prime(alpha, pi, 2);
        if (v.zero) return 0;
        s *= v.as_sign();
    }
    return s;
}

// Primary prime above p = 1 mod 4, choosing the one with positive imaginary part.
inline GaussInt primary_prime_above(i64 p) {
    require(p % 4 == 1 && is_prime(p), "prime must be 1 mod 4");
    GaussInt pi = primary_associate(detail::split_prime(p));
    if (pi.im < 0) pi = primary_associate(pi.conj());
    return pi;
}

// (q/d)_4 for rational q: product over p | d of (q/pi_p)_4.
inline int rational_quartic(i64 q, i64 d) {
    require(d >= 1, "rational_quartic: d must be positive");
    int s = 1;
    for (auto& [p, e] : factorize(d)) {
        if (p % 4 != 1) throw undefined_symbol("rational quartic symbol needs primes 1 mod 4");
        if (jacobi(q, p) != 1) throw undefined_symbol("rational quartic symbol needs q to be a square mod p");
        int v = quartic_symbol(GaussInt{q}, primary_prime_above(p)).as_sign();
        if (e % 2) s *= v;
    }
    return s;
}

}  // namespace shatwist
