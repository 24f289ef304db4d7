#pragma once
// Predicted densities, symmetric-matrix rank counts, and empirical sweeps over square-free n.

#include <boost/multiprecision/cpp_int.hpp>
#include <exception>
#include <mutex>
#include <thread>

#include "cassels.hpp"

namespace shatwist {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_rational pow2(long e) {
    cpp_int p = cpp_int(1) << static_cast<unsigned>(e < 0 ? -e : e);
    return e < 0 ? cpp_rational(1, p) : cpp_rational(p);
}

// u_k = prod_{i=1}^{floor(k/2)} (1 - 2^{1-2i}); u_0 = 1.
inline cpp_rational u_k(int k) {
    require(k >= 0, "u_k needs k >= 0");
    cpp_rational u = 1;
    for (int i = 1; i <= k / 2; ++i) u *= 1 - pow2(1 - 2 * i);
    return u;
}

inline long binom2(long k) { return k * (k - 1) / 2; }

// Number of k x k symmetric matrices over F_2 of rank r.
inline cpp_int count_symmetric_rank(int k, int r) {
    require(k >= 0 && r >= 0 && r <= k, "need 0 <= r <= k");
    require(k <= 60, "k too large");
    cpp_rational v = u_k(r + 1) * pow2(binom2(r + 1));
    for (int l = 0; l <= k - r - 1; ++l)
        v *= cpp_rational(pow2(k) - pow2(l)) / (pow2(k - r) - pow2(l));
    require(denominator(v) == 1, "symmetric-matrix count is not an integer");
    return numerator(v);
}

inline cpp_int count_symmetric_rank_bruteforce(int k, int r) {
    require(k >= 0 && k <= 5, "brute force needs k <= 5");
    require(r >= 0 && r <= k, "need 0 <= r <= k");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) slots.emplace_back(i, j);
    cpp_int count = 0;
    for (u64 mask = 0; mask < (u64{1} << slots.size()); ++mask) {
        BitMatrix m(k, k);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((mask >> s) & 1) {
                m.set(slots[s].first, slots[s].second, true);
                m.set(slots[s].second, slots[s].first, true);
            }
        if (static_cast<int>(rank(m)) == r) ++count;
    }
    return count;
}

// 2^{-kk'-k-2} (u_k + (1/2 - 2^{-k}) u_{k-1}).
inline cpp_rational predicted_density(int k, int kprime) {
    require(k >= 1 && kprime >= 0, "need k >= 1 and k' >= 0");
    return pow2(-static_cast<long>(k) * kprime - k - 2) * (u_k(k) + (cpp_rational(1, 2) - pow2(-k)) * u_k(k - 1));
}

// ---------------------------------------------------------------- sieve

class SmallestPrimeSieve {
public:
    explicit SmallestPrimeSieve(i64 limit) : limit_(limit), spf_(static_cast<std::size_t>(limit) + 1, 0) {
        require(limit >= 1 && limit <= 200'000'000, "sieve limit out of range");
        for (i64 i = 2; i <= limit; ++i) {
            if (spf_[i]) continue;
            for (i64 j = i; j <= limit; j += i)
                if (!spf_[j]) spf_[j] = static_cast<std::uint32_t>(i);
        }
    }
    i64 limit() const { return limit_; }
    // Primes of n when n is square-free, else empty optional.
    std::optional<std::vector<i64>> squarefree_primes(i64 n) const {
        std::vector<i64> ps;
        while (n > 1) {
            i64 p = spf_[n];
            n /= p;
            if (n % p == 0) return std::nullopt;
            ps.push_back(p);
        }
        return ps;
    }

private:
    i64 limit_;
    std::vector<std::uint32_t> spf_;
};

namespace detail {
inline FactoredSquarefree from_primes(i64 n, std::vector<i64> primes) {
    FactoredSquarefree f;
    f.value = n;
    f.primes = std::move(primes);
    return f;
}

// Run body(lo, hi, slot) on `jobs` contiguous blocks of [1, x]; rethrows the first failure.
template <class Body>
void parallel_blocks(i64 x, int jobs, Body body) {
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex mu;
    const i64 step = x / jobs + 1;
    for (int j = 0; j < jobs; ++j) {
        i64 lo = 1 + j * step, hi = std::min(x, (j + 1) * step);
        pool.emplace_back([&, lo, hi, j] {
            try {
                if (lo <= hi) body(lo, hi, j);
            } catch (...) {
                std::lock_guard<std::mutex> g(mu);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}
}  // namespace detail

// ---------------------------------------------------------------- sweeps

struct SweepRow {
    i64 n = 0;
    int k = 0;
    bool admissible = false;
    std::size_t s2 = 0, h4 = 0;
    std::optional<int> h8;
    std::optional<i64> d;
    std::optional<int> pairing;
    bool sha_predicate = false;
};

struct SweepRecord {
    i64 C_count = 0, Q_count = 0, P_count = 0;
    double ratio = 0;  // P / C
    cpp_rational predicted;
    std::vector<SweepRow> rows;  // admissible n only, ascending; filled on request
};

struct SweepOptions {
    int jobs = 1;
    bool collect_rows = false;
    std::uint64_t seed = 0;
};

inline SweepRow evaluate_row(const TwistTriple& t, const FactoredSquarefree& f, int theorem, const NormSearchOptions& opt) {
    SweepRow row;
    row.n = f.value;
    row.k = static_cast<int>(f.k());
    row.admissible = true;
    row.s2 = s2(t, f);
    ShaReport rep = sha_report(t, f, theorem, opt);
    row.h4 = rep.h4;
    row.h8 = rep.h8;
    row.d = rep.d;
    row.sha_predicate = rep.predicate;
    if (rep.h4 == 1) row.pairing = (theorem == 1 ? pairing_t1(t, f, opt) : pairing_t2(t, f, opt)).value;
    return row;
}

inline SweepRecord sweep(const TwistTriple& t, i64 x, int k, int theorem, const SweepOptions& opt = {}) {
    require(k >= 1, "k must be positive");
    require(theorem == 1 || theorem == 2, "theorem must be 1 or 2");
    require(x >= 1 && x <= 100'000'000, "x out of range (at most 1e8)");
    require(base_selmer_dim(t) == 2, "base curve must have 2-Selmer dimension 2");
    SmallestPrimeSieve sieve(x);
    const int jobs = std::max(1, opt.jobs);
    std::vector<SweepRecord> parts(jobs);
    NormSearchOptions nopt;
    nopt.seed = opt.seed;
    detail::parallel_blocks(x, jobs, [&](i64 lo, i64 hi, int slot) {
        SweepRecord& rec = parts[slot];
        for (i64 n = lo; n <= hi; ++n) {
            auto ps = sieve.squarefree_primes(n);
            if (!ps || static_cast<int>(ps->size()) != k) continue;
            ++rec.C_count;
            if (n % 8 != 1) continue;
            FactoredSquarefree f = detail::from_primes(n, std::move(*ps));
            if (!admissible_n(f, t, theorem)) continue;
            ++rec.Q_count;
            if (opt.collect_rows) {
                SweepRow row = evaluate_row(t, f, theorem, nopt);
                if (row.sha_predicate) ++rec.P_count;
                rec.rows.push_back(std::move(row));
            } else if (sha_report(t, f, theorem, nopt).predicate) {
                ++rec.P_count;
            }
        }
    });
    SweepRecord out;
    for (auto& p : parts) {
        out.C_count += p.C_count;
        out.Q_count += p.Q_count;
        out.P_count += p.P_count;
        std::move(p.rows.begin(), p.rows.end(), std::back_inserter(out.rows));
    }
    out.ratio = out.C_count ? static_cast<double>(out.P_count) / static_cast<double>(out.C_count) : 0.0;
    out.predicted = predicted_density(k, static_cast<int>(t.kprime));
    return out;
}

// ---------------------------------------------------------------- C_k(x, alpha, B)

struct CkResult {
    i64 count = 0, C_count = 0;
    double ratio = 0;
    // Two candidate asymptotic constants: exponent 3k+k'+1+C(k,2) and k'k+3k+1+C(k,2).
    cpp_rational predicted_statement, predicted_proof;
};

inline BitVector kernel_vector_z(const BitMatrix& B) {
    const std::size_t k = B.rows();
    for (const auto& v : span(kernel_basis(B), k))
        if (v[0] == 1 && !detail::is_trivial_vector(v, 1)) return v;
    throw contract_violation("no kernel vector with z_1 = 1 besides z0");
}

inline CkResult enumerate_Ck_alpha_B(const TwistTriple& t, i64 x, const std::vector<int>& alpha, const BitMatrix& B,
                                     int jobs = 1) {
    const std::size_t k = alpha.size();
    require(k >= 2, "need k >= 2");
    require(B.rows() == k && B.cols() == k && B.is_symmetric(), "B must be a symmetric k x k matrix");
    require(rank(B) + 2 == k, "B must have rank k - 2");
    const BitVector Bz0 = B.apply(BitVector(k, 1));
    require(std::all_of(Bz0.begin(), Bz0.end(), [](auto b) { return b == 0; }), "B must annihilate the all-ones vector");
    i64 prod = 1;
    for (int a : alpha) {
        require(a == 1 || a == 5 || a == 9 || a == 13, "alpha entries must lie in {1, 5, 9, 13}");
        prod = prod * a % 16;
    }
    require(prod % 8 == 1, "product of alpha must be 1 mod 8");
    require(x >= 1 && x <= 100'000'000, "x out of range (at most 1e8)");
    const BitVector z = kernel_vector_z(B);
    SmallestPrimeSieve sieve(x);
    std::vector<CkResult> parts(std::max(1, jobs));
    detail::parallel_blocks(x, jobs, [&](i64 lo, i64 hi, int slot) {
        CkResult& r = parts[slot];
        for (i64 n = lo; n <= hi; ++n) {
            auto ps = sieve.squarefree_primes(n);
            if (!ps || ps->size() != k) continue;
            ++r.C_count;
            const auto& p = *ps;  // ascending
            bool ok = true;
            for (std::size_t l = 0; ok && l < k; ++l) ok = p[l] % 16 == alpha[l];
            for (std::size_t l = 0; ok && l < k; ++l)
                for (std::size_t j = l + 1; ok && j < k; ++j) ok = additive_jacobi(p[j], p[l]) == static_cast<int>(B.get(l, j));
            for (std::size_t l = 0; ok && l < k; ++l)
                for (i64 q : t.qprimes) ok = ok && p[l] != q && jacobi(p[l], q) == 1;
            if (!ok) continue;
            i64 d = 1, dp = 1;
            for (std::size_t l = 0; l < k; ++l) (z[l] ? d : dp) *= p[l];
            if (rational_quartic(dp, d) * rational_quartic(d, dp) == -1) ++r.count;
        }
    });
    CkResult out;
    for (auto& p : parts) {
        out.count += p.count;
        out.C_count += p.C_count;
    }
    out.ratio = out.C_count ? static_cast<double>(out.count) / static_cast<double>(out.C_count) : 0.0;
    const long kk = static_cast<long>(k), kp = static_cast<long>(t.kprime);
    out.predicted_statement = pow2(-(3 * kk + kp + 1 + binom2(kk)));
    out.predicted_proof = pow2(-(kp * kk + 3 * kk + 1 + binom2(kk)));
    return out;
}

}  // namespace shatwist
