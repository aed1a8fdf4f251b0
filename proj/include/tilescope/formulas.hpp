#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "tilescope/errors.hpp"
#include "tilescope/exact.hpp"
#include "tilescope/highreal.hpp"

namespace tilescope {

enum class FormulaStatus { proved, conjectured };

inline const char* status_name(FormulaStatus s) { return s == FormulaStatus::proved ? "proved" : "conjectured"; }

struct FormulaResult {
    Rational value;
    FormulaStatus status = FormulaStatus::proved;
    std::string formula_id;

    BigInt count() const { return to_integer(value, formula_id.c_str()); }
};

// A value that is exact when the formula allows it, and a high precision real otherwise.
struct MixedValue {
    bool exact = true;
    Rational q;
    HighReal r;

    static MixedValue of(Rational v) {
        MixedValue m;
        m.q = std::move(v);
        m.r = to_real(m.q);
        return m;
    }
    static MixedValue of(HighReal v) {
        MixedValue m;
        m.exact = false;
        m.r = std::move(v);
        return m;
    }
    std::string str(int digits = 30) const { return exact ? q.get_str() : r.str(digits); }
};

// H(n) = 0! 1! ... (n-1)!
inline BigInt superfactorial(long n) {
    if (n < 0) throw PoleError("superfactorial of a negative integer");
    return barnes_int(n + 1);
}

inline BigInt macmahon(long n1, long n2, long n3) {
    if (n1 < 0 || n2 < 0 || n3 < 0) throw GeometryViolation("macmahon: negative side");
    BigInt num = superfactorial(n1) * superfactorial(n2) * superfactorial(n3) * superfactorial(n1 + n2 + n3);
    BigInt den = superfactorial(n1 + n2) * superfactorial(n1 + n3) * superfactorial(n2 + n3);
    return exact_div(num, den);
}

namespace detail {

inline Rational half(long x) { return make_rational(x, 2); }

inline Rational ipow(const Rational& base, long e) {
    if (e == 0) return 1;
    if (base == 0) {
        if (e < 0) throw PoleError("zero raised to a negative power");
        return 0;
    }
    Rational r = 1;
    for (long t = 0; t < (e < 0 ? -e : e); ++t) r *= base;
    return e < 0 ? Rational(1 / r) : r;
}

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

inline Rational pow2(long e) { return ipow(Rational(2), e); }

}  // namespace detail

// M_r(S_{2n,2a,b,k}) by the rewritten Lai-Rohatgi product, both parities of n.
inline FormulaResult mr_closed_form(long n, long a, long b, long k) {
    using detail::half;
    if (n < 0 || a < 0 || b < 0 || k < 0) throw VariantParameterError("mr_closed_form: negative parameter");
    if (k > n) throw GeometryViolation("mr_closed_form requires k <= n (region S_{2n,2a,b,k})");
    const Rational A(a), B(b), K(k), N(n);
    auto P = [](const Rational& x, long m) -> Rational { return pochhammer(x, m); };
    auto prod = [](long lo, long hi, auto f) { return range_product(lo, hi, f); };

    Rational pre = P(half(a) + half(k) + half(1), k) * P(A + 2 * N + Rational(3 * b, 2) + half(1), n);
    pre /= detail::pow2(n * n - n - k * k - k) * P(half(b) + N - K + half(1), k) * P(half(1), n - k);
    pre *= P(half(a) + half(b) + half(k) + half(1), k) * P(half(a) + B + N - half(k) + half(1), k) *
           P(half(a) + half(b) + N - half(k) + half(1), k);

    const Rational c3b = Rational(3 * b, 2);
    Rational br = 1;
    if (n % 2 == 0) {
        br *= prod(1, n / 2 - k, [&](long i) -> Rational {
            return P(A + c3b + 3 * K + 2 * i, i) * P(A + c3b + 3 * K + 2 * i - 1, i - 1);
        });
        br *= prod(1, n / 2 - 1, [&](long i) -> Rational { return P(A + c3b + Rational(3 * n, 2) + i + half(1), 2 * i); });
    } else {
        br *= prod(1, (n - 1) / 2 - k, [&](long i) -> Rational {
            return P(A + c3b + 3 * K + 2 * i, i) * P(A + c3b + 3 * K + 2 * i + 1, i);
        });
        br *= prod(0, (n - 1) / 2 - 1, [&](long i) -> Rational { return P(A + c3b + Rational(3 * n, 2) + i + 1, 2 * i + 1); });
    }
    br *= prod(1, k, [&](long i) -> Rational { return P(half(a) + half(i), i - 1); });
    br *= prod(1, n - k - 1, [&](long i) -> Rational { return Rational(1 / P(half(1), i)); });
    br *= prod(1, k, [&](long i) -> Rational {
        Rational num = P(A + B + 2 * i + K, n - i - k) * P(A + B + 2 * N + K - 2 * i + 2, b - 2 * k + 4 * i - 3);
        Rational den = P(half(1), i) * P(Rational(2 * i), b - 1) * P(Rational(i) + half(b - 1), n - k);
        return Rational(num / den);
    });
    FormulaResult r{pre * br * br, FormulaStatus::proved, "mr"};
    r.count();
    return r;
}

// Conjecturally M(S_{n,a,b,k}) / M(S_{n,a,b,0}) = this squared product times (M_r(k) / M_r(0))^3.
inline Rational conjecture1_ratio(long a, long b, long k) {
    if (a % 2 != 0) throw ParityError("conjecture1_ratio requires even a (a = " + std::to_string(a) + ")");
    Rational p = range_product(1, k, [&](long i) -> Rational {
        return make_rational((a + 6 * i - 4) * (a + 3 * b + 6 * i - 2), (a + 6 * i - 2) * (a + 3 * b + 6 * i - 4));
    });
    return p * p;
}

// m^k (alpha/m)_k, with k an integer or half-integer.
inline HighReal pochhammer_step(const Rational& alpha, const Rational& k, long m) {
    HighReal scale = pow(HighReal(m), to_real(k));
    return scale * pochhammer_real(alpha / m, k);
}

// M(S_{n,a,b,k}) / M_r(S_{n,a,b,k})^3 in the two-branch form (n of either parity), in high precision.
inline HighReal conjecture2_ratio_general(long n, long a, long b, long k) {
    if (a % 2 != 0) throw ParityError("conjecture 2 requires even a (a = " + std::to_string(a) + ")");
    const long s = a + 3 * b;
    HighReal base = to_real(conjecture1_ratio(a, b, k));
    auto block = [&](const Rational& idx, const Rational& shift) {
        HighReal num = pochhammer_step(Rational(s + 2), idx, 6) * pochhammer_step(Rational(s) + shift + 1, idx, 6);
        HighReal den = pochhammer_step(Rational(s + 4), idx, 6) * pochhammer_step(Rational(s) + shift + 5, idx, 6);
        HighReal v = num / den;
        return HighReal(v * v);
    };
    if (n % 2 == 0) return base * block(make_rational(n, 4), make_rational(3 * n, 2));
    HighReal lead = HighReal(s + 3 * n + 2) / (2 * to_real(Rational(s) + make_rational(3 * (n + 1), 2) - 1));
    return base * lead * lead * block(make_rational(n + 1, 4), make_rational(3 * (n + 1), 2));
}

// The even form for S_{2n,2a,b,k}: exact when n is even, otherwise through Gamma.
inline MixedValue conjecture2_ratio_even(long n, long a, long b, long k) {
    const Rational A3 = make_rational(a, 3), hb = make_rational(b, 2);
    auto term = [&](const Rational& c1, const Rational& c2, const Rational& c3) {
        return std::array<Rational, 3>{A3 + c1, A3 + hb + k + c2, A3 + hb + make_rational(n, 2) + c3};
    };
    auto num = term(make_rational(1, 3), make_rational(1, 3), make_rational(1, 6));
    auto den = term(make_rational(2, 3), make_rational(2, 3), make_rational(5, 6));
    if (n % 2 == 0) {
        long h = n / 2;
        Rational v = pochhammer(num[0], k) * pochhammer(num[1], h - k) * pochhammer(num[2], h) /
                     (pochhammer(den[0], k) * pochhammer(den[1], h - k) * pochhammer(den[2], h));
        return MixedValue::of(Rational(v * v));
    }
    const Rational h = make_rational(n, 2), hk = h - k;
    HighReal v = to_real(pochhammer(num[0], k)) * pochhammer_real(num[1], hk) * pochhammer_real(num[2], h) /
                 (to_real(pochhammer(den[0], k)) * pochhammer_real(den[1], hk) * pochhammer_real(den[2], h));
    return MixedValue::of(HighReal(v * v));
}

// Conjectured M(S_{n,a,b,k}) / M_r^3: the even form when n and a are even, the general form otherwise.
inline MixedValue conjecture2_ratio(long n, long a, long b, long k) {
    if (a % 2 != 0) throw ParityError("conjecture 2 requires even a (a = " + std::to_string(a) + ")");
    if (n % 2 == 0) return conjecture2_ratio_even(n / 2, a / 2, b, k);
    return MixedValue::of(conjecture2_ratio_general(n, a, b, k));
}

// Q_{n1,n2,n3}(a) with the sixteen product blocks; empty ranges give 1.
inline Rational newtheo_q(long n1, long n2, long n3, const Rational& a) {
    using detail::ceil_div;
    using detail::floor_div;
    using detail::ipow;
    const long s = n1 + n2 + n3;
    Rational q = 1;
    auto odd = [&](long lo, long hi, auto expo) {
        for (long i = lo; i <= hi; ++i) q *= ipow(a + 2 * i + 1, expo(i));
    };
    auto even = [&](long lo, long hi, auto expo) {
        for (long i = lo; i <= hi; ++i) q *= ipow(a + 2 * i, expo(i));
    };
    odd(ceil_div(n1 + n2 - 1, 2), floor_div(n1 + n3 - 1, 2), [&](long i) { return 2 * i + 1 - n3; });
    odd(floor_div(n1 + n3 - 1, 2) + 1, floor_div(n2 + n3 - 1, 2), [&](long) { return n1; });
    odd(floor_div(n2 + n3 - 1, 2) + 1, floor_div(s - 1, 2), [&](long i) { return s - 2 * i - 1; });
    odd(ceil_div(s - 2, 4), floor_div(n1 + n2 - 2, 2), [&](long i) { return 4 * i + 2 - s; });
    even(ceil_div(n1 + n2, 2), std::min(floor_div(n2 + n3 - n1 - 1, 2), floor_div(n1 + n3, 2)),
         [&](long i) { return 2 * i - n3; });
    even(std::max(ceil_div(n1 + n2, 2), ceil_div(n2 + n3 - n1, 2)), floor_div(n1 + n3, 2),
         [&](long) { return n2 - n1; });
    even(std::max(ceil_div(n2 + n3 - n1, 2), ceil_div(n1 + n3 + 1, 2)), floor_div(n2 + n3, 2),
         [&](long i) { return n2 + n3 - 2 * i; });
    even(ceil_div(n1 + n3 + 1, 2), floor_div(n2 + n3 - n1 - 1, 2), [&](long) { return n1; });
    even(ceil_div(s, 4), std::min(floor_div(n1 + n2 - 1, 2), floor_div(n2 + n3 - n1 - 1, 2)),
         [&](long i) { return 4 * i - s; });
    even(std::max(ceil_div(n2 + n3 - n1, 2), n1), floor_div(n1 + n2 - 1, 2), [&](long i) { return 2 * i - 2 * n1; });
    even(n2, floor_div(n2 + n3 - 1, 2), [&](long i) { return 2 * i - 2 * n2; });
    even(ceil_div(n2 + n3, 2), n3, [&](long i) { return 2 * n3 - 2 * i; });
    even(1, floor_div(n1 + n2 - n3, 2), [&](long i) { return 2 * i; });
    even(floor_div(n1 + n2 - n3, 2) + 1, floor_div(n1 + n3 - n2, 2), [&](long) { return n1 + n2 - n3; });
    even(floor_div(n1 + n3 - n2, 2) + 1, std::min(floor_div(n2 + n3 - n1, 2), n1), [&](long i) { return 2 * n1 - 2 * i; });
    even(floor_div(n2 + n3 - n1, 2) + 1, floor_div(s, 4), [&](long i) { return s - 4 * i; });
    return q;
}

// Tilings of the hexagon with a triangular hole of side a at distances n1, n2, n3 from three sides.
inline FormulaResult newtheo_count(long n1, long n2, long n3, long a) {
    if (n1 < 0 || n2 < 0 || n3 < 0 || a < 0) throw VariantParameterError("newtheo_count: negative parameter");
    std::array<long, 3> v{n1, n2, n3};
    std::sort(v.begin(), v.end());
    if (v[2] > v[0] + v[1])
        throw GeometryViolation("newtheo_count requires the largest of n1,n2,n3 to be at most the sum of the others");
    Rational q0 = newtheo_q(v[0], v[1], v[2], Rational(0));
    if (q0 == 0) throw PoleError("newtheo_count: Q(0) vanishes");
    Rational val = Rational(macmahon(v[0], v[1], v[2])) * newtheo_q(v[0], v[1], v[2], Rational(a)) / q0;
    FormulaResult r{val, FormulaStatus::proved, "newtheo"};
    r.count();
    return r;
}

// M(hexagon with a shamrock removed) / M(cored hexagon with core a+b+c+m).
inline Rational shamrock_ratio(long n1, long n2, long n3, long a, long b, long c, long m) {
    for (long x : {n1, n2, n3, a, b, c, m})
        if (x < 0) throw GeometryViolation("shamrock_ratio: negative parameter");
    const long d1 = n2 + n3 - n1 + b + c, d2 = n1 + n3 - n2 + a + c, d3 = n1 + n2 - n3 + a + b;
    if (d1 < 0 || d2 < 0 || d3 < 0) throw GeometryViolation("shamrock_ratio: shamrock does not fit the hexagon");
    auto H = [](long x) { return Rational(superfactorial(x)); };
    Rational r = H(m) * H(m) * H(m) * H(a) * H(b) * H(c) / (H(m + a) * H(m + b) * H(m + c));
    r *= H(n1 + a) * H(d1 + m) / (H(n1 + a + m) * H(d1));
    r *= H(n2 + b) * H(d2 + m) / (H(n2 + b + m) * H(d2));
    r *= H(n3 + c) * H(d3 + m) / (H(n3 + c + m) * H(d3));
    return r;
}

// M(T_{n,k,B,a,b,c}) / M(S_{n,0,B,k}).
inline Rational triad_ratio(long n, long k, long B, long a, long b, long c) {
    for (long x : {n, k, B, a, b, c})
        if (x < 0) throw GeometryViolation("triad_ratio: negative parameter");
    if (a > B || b > B || c > B) throw GeometryViolation("triad_ratio requires a,b,c <= B");
    if (n < 2 * k) throw GeometryViolation("triad_ratio requires n >= 2k");
    auto G = [](long x) {
        if (x < 0) throw GeometryViolation("triad_ratio: negative Barnes argument");
        return Rational(barnes_int(x + 1));
    };
    const long s = a + b + c;
    Rational r = G(3 * k + B) * G(3 * k + B) * G(3 * k + B) / (G(3 * k) * G(B) * G(B) * G(B));
    Rational t = G(n + k + B) * G(n - k + 2 * B) / (G(n - 2 * k + B) * G(n + 2 * k + 2 * B));
    r *= t * t * t;
    Rational u = G(3 * k + 3 * B - s);
    r *= u * u * u * u * G(a) * G(b) * G(c) /
         (G(3 * k + 3 * B - a - b) * G(3 * k + 3 * B - a - c) * G(3 * k + 3 * B - b - c));
    r *= G(B - a) * G(B - b) * G(B - c) /
         (G(3 * k + 2 * B - a - b) * G(3 * k + 2 * B - a - c) * G(3 * k + 2 * B - b - c));
    auto lobe = [&](long x, long y, long z) {
        return Rational(G(n - 2 * k + x) * G(n + 2 * k + 3 * B - x) / (G(n + k + 3 * B - y - z) * G(n - k + y + z)));
    };
    r *= lobe(a, b, c) * lobe(b, a, c) * lobe(c, a, b);
    return r;
}

// Conjectured M(S_{n,a,b,k}): ratio * (M_r(k)/M_r(0))^3 * M(S_{n,a,b,0}).
inline FormulaResult conjectured_count(long n, long a, long b, long k) {
    if (a % 2 != 0) throw ParityError("conjectured_count requires even a (a = " + std::to_string(a) + ")");
    if (n % 2 != 0) throw ParityError("conjectured_count requires even n (M_r closed form is for S_{2n,2a,b,k})");
    if (2 * k > n) throw GeometryViolation("conjectured_count requires k <= n/2");
    Rational base = newtheo_count(n, n, n, a + 3 * b).value;
    Rational mk = mr_closed_form(n / 2, a / 2, b, k).value;
    Rational m0 = mr_closed_form(n / 2, a / 2, b, 0).value;
    Rational q = mk / m0;
    FormulaResult r{conjecture1_ratio(a, b, k) * q * q * q * base, FormulaStatus::conjectured, "conjectured"};
    r.count();
    return r;
}

// Degree in a of M(S_{2n,2a,b,k}) for even b.
inline long leading_degree(long n, long b, long k) { return 3 * (n * n + 2 * b * k); }

// Leading coefficient in a of M(S_{2n,2a,b,k}) for even b.
inline Rational leading_coefficient(long n, long b, long k) {
    if (b % 2 != 0) throw ParityError("leading_coefficient requires even b");
    if (k > n) throw GeometryViolation("leading_coefficient requires k <= n");
    const Rational h = make_rational(1, 2);
    Rational inner = 1;
    for (long i = 1; i <= n - k - 1; ++i) inner /= pochhammer(h, i);
    for (long i = 1; i <= k; ++i)
        inner /= pochhammer(h, i) * pochhammer(Rational(2 * i), b - 1) * pochhammer(i + make_rational(b - 1, 2), n - k);
    Rational v = inner * inner / (detail::pow2(n * n - n + 2 * k) *
                                  pochhammer(make_rational(b, 2) + n - k + h, k) * pochhammer(h, n - k));
    return v * v * v;
}

}  // namespace tilescope
