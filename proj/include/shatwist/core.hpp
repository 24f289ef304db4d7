#pragma once
// Integer helpers and error types shared by every module.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shatwist {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Input outside the documented domain of a function.
struct contract_violation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A search bound or recursion guard was hit before an answer was found.
struct resource_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A symbol was requested whose value is not defined for the inputs.
struct undefined_symbol : std::domain_error {
    using std::domain_error::domain_error;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw contract_violation(msg);
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw resource_exhausted("int64 overflow in multiplication");
    return r;
}

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw resource_exhausted("int64 overflow in addition");
    return r;
}

inline i128 checked_mul128(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw resource_exhausted("int128 overflow in multiplication");
    return r;
}

inline i64 narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw resource_exhausted("value does not fit in int64");
    return static_cast<i64>(v);
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Non-negative residue.
inline i64 mod(i128 a, i64 m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

inline i64 powmod(i64 base, u64 e, i64 m) {
    i128 result = 1 % m;
    i128 b = mod(base, m);
    while (e > 0) {
        if (e & 1) result = result * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<i64>(result);
}

inline i64 isqrt(i64 n) {
    require(n >= 0, "isqrt of negative number");
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

inline i64 icbrt(i64 n) {
    require(n >= 0, "icbrt of negative number");
    i64 r = static_cast<i64>(__builtin_cbrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

// p-adic valuation; v(0) is reported as a large sentinel.
inline int valuation(i128 a, i64 p) {
    if (a == 0) return 1 << 20;
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

// Prime factorization of |n| by trial division, ascending.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    require(n != 0, "factorize(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline bool is_squarefree(i64 n) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// Product of the distinct primes dividing |n|.
inline i64 radical(i64 n) {
    i64 r = 1;
    for (auto& [p, e] : factorize(n)) r *= p;
    return r;
}

// Signed squarefree kernel: n = sqfree(n) * m^2.
inline i64 squarefree_part(i64 n) {
    require(n != 0, "squarefree_part(0)");
    i64 s = n < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(n))
        if (e % 2) s *= p;
    return s;
}

// Squarefree kernel of a product computed from factors, avoiding overflow of a*b.
inline i64 squarefree_of_product(i64 a, i64 b) {
    i64 g = gcd(a, b);
    i64 s = (a / g) * (b / g);
    return squarefree_part(s);
}

// All positive divisors of a squarefree number given its primes, in ascending order.
inline std::vector<i64> squarefree_divisors(const std::vector<i64>& primes) {
    std::vector<i64> out{1};
    for (i64 p : primes) {
        std::size_t sz = out.size();
        for (std::size_t i = 0; i < sz; ++i) out.push_back(checked_mul(out[i], p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    while (v != 0) {
        int d = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace shatwist
