// bounds.hpp - evaluators for the probability bounds behind the
// constant-density result
//
//   f(n)   = 2n * sum_{i=0}^{n} C(n,i) 2^{-n-C(i,2)}
//   g(n,M) = exp(-n/2 + 2M - 2M^2/n)                      for M <= n/2
//   h(n)   = 2^{-n} sum_{i=0}^{5} C(n,i) 2^{-C(i,2)} + 2^{-15} g(n, floor(n^{2/3}))
//   pi9    = 1 - t(9) / 2^36
//   pi_2n  <= pi_n^2 + 2 pi_n (1-pi_n) n c(n) / (2^n t(n)) + (1-pi_n)^2
//   pi_{n+1} <= pi_n + f(n)
//
// f and the pi recursion are evaluated in exact rational arithmetic (the
// denominators are powers of two); g and h involve exponentials and use
// 256-bit floats, with the working precision recorded in the result.
#ifndef COXTK_BOUNDS_HPP
#define COXTK_BOUNDS_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>

#include "coxtk/census.hpp"
#include "coxtk/errors.hpp"

namespace coxtk {

inline constexpr int bounds_default_precision = 256;  // bits

// A rendered high-precision value: decimal digits plus a double shadow.
struct BoundValue {
    std::string digits;
    double value = 0.0;
    int precision_bits = 0;
};

namespace bounds_detail {

inline mpz_class pow2(unsigned long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
    return p;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

struct MpfrGuard {
    mpfr_t v;
    explicit MpfrGuard(int prec) { mpfr_init2(v, prec); }
    ~MpfrGuard() { mpfr_clear(v); }
    MpfrGuard(const MpfrGuard&) = delete;
    MpfrGuard& operator=(const MpfrGuard&) = delete;
};

inline BoundValue render(mpfr_t v, int prec, int digits = 15) {
    BoundValue out;
    out.precision_bits = prec;
    out.value = mpfr_get_d(v, MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v);
    out.digits = s;
    mpfr_free_str(s);
    return out;
}

}  // namespace bounds_detail

// Exact rational value of f(n).  The denominator has about C(n,2) bits, so
// this is meant for moderate n (the summability checks reach a few hundred).
inline mpq_class f_exact(int n) {
    if (n < 1) throw InputError("f(n) requires n >= 1");
    using bounds_detail::binomial;
    using bounds_detail::pow2;
    mpq_class total = 0;
    for (int i = 0; i <= n; ++i) {
        unsigned long exponent =
            static_cast<unsigned long>(n) +
            static_cast<unsigned long>(i) * static_cast<unsigned long>(i - 1) / 2;
        mpq_class term(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i)),
                       pow2(exponent));
        term.canonicalize();
        total += term;
    }
    return 2 * n * total;
}

// f(n) as a 256-bit float; usable far beyond double range (f(10^4) has an
// exponent near -10^4).  Terms past i = 300 are dropped: they are bounded by
// 2^{n - n - C(301,2)} = 2^{-45150} in total, which is negligible against
// the leading term 2n 2^{-n} for every n within reach.
inline BoundValue f_value(int n, int prec = bounds_default_precision) {
    if (n < 1) throw InputError("f(n) requires n >= 1");
    using bounds_detail::MpfrGuard;
    MpfrGuard sum(prec), term(prec);
    mpfr_set_zero(sum.v, 1);
    int cap = std::min(n, 300);
    for (int i = 0; i <= cap; ++i) {
        mpz_class b = bounds_detail::binomial(static_cast<unsigned long>(n),
                                              static_cast<unsigned long>(i));
        mpfr_set_z(term.v, b.get_mpz_t(), MPFR_RNDN);
        long exponent = static_cast<long>(n) + static_cast<long>(i) * (i - 1) / 2;
        mpfr_mul_2si(term.v, term.v, -exponent, MPFR_RNDN);
        mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
    }
    mpfr_mul_si(sum.v, sum.v, 2 * static_cast<long>(n), MPFR_RNDN);
    return bounds_detail::render(sum.v, prec);
}

// Largest f(n) over lo <= n <= hi by direct evaluation at every n.
inline BoundValue f_range_max(int lo, int hi, int prec = bounds_default_precision) {
    if (lo < 1 || hi < lo) throw InputError("bad range for f scan");
    using bounds_detail::MpfrGuard;
    MpfrGuard best(prec), sum(prec), term(prec);
    mpfr_set_si(best.v, -1, MPFR_RNDN);
    for (int n = lo; n <= hi; ++n) {
        mpfr_set_zero(sum.v, 1);
        int cap = std::min(n, 300);
        for (int i = 0; i <= cap; ++i) {
            mpz_class b = bounds_detail::binomial(static_cast<unsigned long>(n),
                                                  static_cast<unsigned long>(i));
            mpfr_set_z(term.v, b.get_mpz_t(), MPFR_RNDN);
            long exponent = static_cast<long>(n) + static_cast<long>(i) * (i - 1) / 2;
            mpfr_mul_2si(term.v, term.v, -exponent, MPFR_RNDN);
            mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
        }
        mpfr_mul_si(sum.v, sum.v, 2 * static_cast<long>(n), MPFR_RNDN);
        if (mpfr_cmp(sum.v, best.v) > 0) mpfr_set(best.v, sum.v, MPFR_RNDN);
    }
    return bounds_detail::render(best.v, prec);
}

inline long floor_pow_2_3(int n) {
    // largest M with M^3 <= n^2
    long target = static_cast<long>(n) * n;
    long m = 0;
    while ((m + 1) * (m + 1) * (m + 1) <= target) ++m;
    return m;
}

// g(n, M) = exp(-n/2 + 2M - 2M^2/n), the binomial lower-tail bound.
inline BoundValue g_bound(int n, long m_cut, int prec = bounds_default_precision) {
    if (n < 1) throw InputError("g(n,M) requires n >= 1");
    if (2 * m_cut > n) throw InputError("g(n,M) requires M <= n/2");
    using bounds_detail::MpfrGuard;
    MpfrGuard e(prec), tmp(prec);
    // exponent = -n/2 + 2M - 2M^2/n, as an exact rational
    mpq_class exponent(-static_cast<long>(n), 2);
    exponent += 2 * m_cut;
    exponent -= mpq_class(2 * m_cut * m_cut, n);
    exponent.canonicalize();
    mpfr_set_q(tmp.v, exponent.get_mpq_t(), MPFR_RNDN);
    mpfr_exp(e.v, tmp.v, MPFR_RNDN);
    return bounds_detail::render(e.v, prec);
}

// h(n) = 2^{-n} sum_{i<=5} C(n,i) 2^{-C(i,2)} + 2^{-15} g(n, floor(n^{2/3})).
inline BoundValue h_bound(int n, int prec = bounds_default_precision) {
    if (n < 2) throw InputError("h(n) requires n >= 2");
    long m_cut = floor_pow_2_3(n);
    if (2 * m_cut > n)
        throw InputError("h(n) uses g(n, floor(n^{2/3})), which requires n^{2/3} <= n/2 (n >= 18)");
    using bounds_detail::MpfrGuard;
    MpfrGuard sum(prec), term(prec);
    mpfr_set_zero(sum.v, 1);
    for (int i = 0; i <= 5 && i <= n; ++i) {
        mpz_class b = bounds_detail::binomial(static_cast<unsigned long>(n),
                                              static_cast<unsigned long>(i));
        mpfr_set_z(term.v, b.get_mpz_t(), MPFR_RNDN);
        mpfr_mul_2si(term.v, term.v, -static_cast<long>(i) * (i - 1) / 2, MPFR_RNDN);
        mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
    }
    mpfr_mul_2si(sum.v, sum.v, -static_cast<long>(n), MPFR_RNDN);

    MpfrGuard gv(prec), tmp(prec);
    mpq_class exponent(-static_cast<long>(n), 2);
    exponent += 2 * m_cut;
    exponent -= mpq_class(2 * m_cut * m_cut, n);
    exponent.canonicalize();
    mpfr_set_q(tmp.v, exponent.get_mpq_t(), MPFR_RNDN);
    mpfr_exp(gv.v, tmp.v, MPFR_RNDN);
    mpfr_mul_2si(gv.v, gv.v, -15, MPFR_RNDN);  // the 2^{-C(6,2)} factor
    mpfr_add(sum.v, sum.v, gv.v, MPFR_RNDN);
    return bounds_detail::render(sum.v, prec);
}

struct TailBounds {
    BoundValue g;
    BoundValue h;
};

inline TailBounds tail_bounds(int n, long m_cut, int prec = bounds_default_precision) {
    return {g_bound(n, m_cut, prec), h_bound(n, prec)};
}

// pi_9 = 1 - t(9)/2^36, exactly.
inline mpq_class pi9_exact(std::uint64_t t9 = census_t9) {
    mpq_class q(mpz_class(static_cast<unsigned long>(t9)), bounds_detail::pow2(36));
    q.canonicalize();
    return 1 - q;
}

// The doubling bound evaluated exactly:
//   pi_n^2 + 2 pi_n (1 - pi_n) n c / (2^n t) + (1 - pi_n)^2.
inline mpq_class pi_2n_bound_exact(int n, std::uint64_t t, std::uint64_t c, const mpq_class& pi_n) {
    if (t == 0) throw InputError("pi_2n bound needs t > 0");
    mpq_class one_minus = 1 - pi_n;
    mpq_class ratio(mpz_class(static_cast<unsigned long>(n)) *
                        mpz_class(static_cast<unsigned long>(c)),
                    bounds_detail::pow2(static_cast<unsigned long>(n)) *
                        mpz_class(static_cast<unsigned long>(t)));
    ratio.canonicalize();
    return pi_n * pi_n + 2 * pi_n * one_minus * ratio + one_minus * one_minus;
}

// pi_{n+1} <= pi_n + f(n).
inline mpq_class pi_next_bound(const mpq_class& pi_n, int n) { return pi_n + f_exact(n); }

// sum_{i=n}^{n+k-1} f(i), exactly.
inline mpq_class additive_tail_exact(int n, int k) {
    mpq_class total = 0;
    for (int i = n; i < n + k; ++i) total += f_exact(i);
    return total;
}

// Decimal rendering of a rational in [0, 10) with the given number of
// fractional digits, truncated toward zero.
inline std::string to_decimal(const mpq_class& q, int frac_digits) {
    mpq_class v = q;
    bool negative = v < 0;
    if (negative) v = -v;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
    mpz_class scaled = (v.get_num() * scale) / v.get_den();
    mpz_class ip = scaled / scale, fp = scaled % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<std::size_t>(frac_digits) - frac.size(), '0');
    return (negative ? "-" : "") + ip.get_str() + "." + frac;
}

}  // namespace coxtk

#endif
