#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdlib>
#include <string>

#include "tilescope/errors.hpp"
#include "tilescope/exact.hpp"

namespace tilescope {

using HighReal = boost::multiprecision::mpfr_float;

constexpr unsigned kDefaultDigits = 64;
constexpr unsigned kMinDigits = 16;

inline unsigned env_precision() {
    if (const char* s = std::getenv("TILESCOPE_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v > 0) return unsigned(v);
    }
    return kDefaultDigits;
}

// Sets the working precision (decimal digits) for HighReal values created on this thread.
inline void set_precision(unsigned digits) {
    if (digits < kMinDigits)
        throw PrecisionError("precision " + std::to_string(digits) + " is below the minimum of " +
                             std::to_string(kMinDigits) + " digits");
    HighReal::default_precision(digits);
}

namespace detail {
// Start every program at TILESCOPE_PRECISION (or 64 digits) instead of the backend's 20.
inline const bool precision_initialized = [] {
    unsigned d = env_precision();
    HighReal::default_precision(d < kMinDigits ? kDefaultDigits : d);
    return true;
}();
}  // namespace detail

// Scoped precision change; restores the previous default on exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits) : saved_(HighReal::default_precision()) { set_precision(digits); }
    ~PrecisionGuard() { HighReal::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline HighReal to_real(const Rational& q) {
    HighReal n(q.get_num().get_mpz_t());
    HighReal d(q.get_den().get_mpz_t());
    return n / d;
}

inline HighReal to_real(const BigInt& z) { return HighReal(z.get_mpz_t()); }

inline HighReal real_pi() {
    HighReal r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline HighReal gamma(const HighReal& x) {
    if (x <= 0 && x == floor(x)) throw PoleError("gamma evaluated at a non-positive integer");
    HighReal r;
    mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

inline HighReal gamma(const Rational& q) {
    if (q <= 0 && is_integer(q)) throw PoleError("gamma evaluated at a non-positive integer");
    return gamma(to_real(q));
}

// Gamma(alpha + k) / Gamma(alpha); exact branch for integer k.
inline HighReal pochhammer_real(const Rational& alpha, const Rational& k) {
    if (is_integer(k)) return to_real(pochhammer(alpha, k.get_num().get_si()));
    return gamma(alpha + k) / gamma(alpha);
}

// 100-digit Glaisher-Kinkelin constant.
inline const char* kGlaisherLiteral =
    "1.282427129100622636875342568869791727767688927325001192063740021740406308858826461129736491958202374";

inline HighReal glaisher() { return HighReal(kGlaisherLiteral); }

// log of 0!1!...(n-1)! / (n^{n^2/2-1/12} (2pi)^{n/2} e^{-3n^2/4}), whose limit is 1/12 - log A.
inline HighReal glaisher_limit_term(long n) {
    HighReal logh = 0;
    for (long i = 2; i < n; ++i) logh += lgamma(HighReal(i + 1));
    HighReal nn(n);
    HighReal e = nn * nn / 2 - HighReal(1) / 12;
    HighReal denom = e * log(nn) + nn / 2 * log(2 * real_pi()) - 3 * nn * nn / 4;
    return logh - denom;
}

// Estimates of A from the superfactorial limit at n: raw, and Richardson-extrapolated with 2n.
struct GlaisherCheck {
    HighReal raw;
    HighReal extrapolated;
    HighReal stored;
};

inline GlaisherCheck glaisher_self_check(long n = 200) {
    HighReal t1 = glaisher_limit_term(n);
    HighReal t2 = glaisher_limit_term(2 * n);
    HighReal twelfth = HighReal(1) / 12;
    HighReal raw = exp(twelfth - t1);
    HighReal rich = exp(twelfth - (4 * t2 - t1) / 3);
    return {raw, rich, glaisher()};
}

inline HighReal barnes_g_half() {
    HighReal A = glaisher();
    HighReal pi = real_pi();
    return exp(HighReal(1) / 8) * pow(HighReal(2), HighReal(1) / 24) / (pow(A, HighReal(3) / 2) * pow(pi, HighReal(1) / 4));
}

// Barnes G at an integer: prod_{i=0}^{n-2} i!, with G(0)=0, G(1)=1.
inline BigInt barnes_int(long n) {
    if (n <= 0) return 0;
    BigInt r = 1, f = 1;
    for (long i = 1; i <= n - 2; ++i) {
        f *= i;
        r *= f;
    }
    return r;
}

// Barnes G at a non-negative integer or half-integer.
inline HighReal barnes_g(const Rational& z) {
    if (z < 0) throw PoleError("barnes_g: negative argument " + z.get_str());
    if (is_integer(z)) return to_real(barnes_int(z.get_num().get_si()));
    Rational twice = 2 * z;
    if (!is_integer(twice)) throw VariantParameterError("barnes_g: argument must be an integer or half-integer");
    long m = (twice.get_num().get_si() - 1) / 2;  // z = m + 1/2
    HighReal g = barnes_g_half();
    for (long j = 0; j < m; ++j) g *= gamma(Rational(2 * j + 1, 2));
    return g;
}

}  // namespace tilescope
