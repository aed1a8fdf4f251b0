#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tilescope/errors.hpp"

namespace tilescope {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return mpz_divisible_p(q.get_num_mpz_t(), q.get_den_mpz_t()) != 0; }

inline BigInt to_integer(const Rational& q, const char* what = "value") {
    if (!is_integer(q))
        throw InternalDivisionError(std::string(what) + " is not an integer: " + q.get_str());
    return BigInt(q.get_num() / q.get_den());
}

// Binomial with the falling factorial definition, valid for negative n; 0 for k < 0.
inline BigInt binom(long n, long k) {
    BigInt r;
    if (k < 0) return r;
    BigInt nn(n);
    mpz_bin_ui(r.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

inline BigInt binom(const BigInt& n, long k) {
    BigInt r;
    if (k < 0) return r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

inline BigInt factorial(long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return r;
}

// (alpha)_k for integer k; k < 0 is 1/((alpha-1)(alpha-2)...(alpha+k)).
inline Rational pochhammer(const Rational& alpha, long k) {
    Rational r = 1;
    if (k >= 0) {
        for (long i = 0; i < k; ++i) r *= alpha + i;
        return r;
    }
    for (long j = 1; j <= -k; ++j) {
        Rational f = alpha - j;
        if (f == 0) throw PoleError("pochhammer: zero factor at alpha-" + std::to_string(j));
        r *= f;
    }
    return 1 / r;
}

enum class ProductConvention { reciprocal, clamped };

// Product of f(k) for k = lo..hi inclusive.
// reciprocal: hi < lo gives 1/prod_{k=hi+1}^{lo-1} f(k); clamped: hi < lo gives 1.
template <class T = Rational, class F>
T range_product(long lo, long hi, F&& f, ProductConvention conv = ProductConvention::reciprocal) {
    T r = 1;
    if (hi >= lo) {
        for (long k = lo; k <= hi; ++k) r *= f(k);
        return r;
    }
    if (conv == ProductConvention::clamped) return r;
    for (long k = hi + 1; k <= lo - 1; ++k) {
        T v = f(k);
        if (v == 0) throw DivisionByZero("range_product: zero term at k=" + std::to_string(k));
        r *= v;
    }
    return T(1) / r;
}

// x + y*xi with xi^2 = -1 - xi.
struct Eisenstein {
    BigInt x, y;

    Eisenstein() : x(0), y(0) {}
    Eisenstein(long v) : x(v), y(0) {}
    Eisenstein(BigInt v) : x(std::move(v)), y(0) {}
    Eisenstein(BigInt a, BigInt b) : x(std::move(a)), y(std::move(b)) {}

    static Eisenstein xi() { return {BigInt(0), BigInt(1)}; }

    bool operator==(const Eisenstein& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Eisenstein& o) const { return !(*this == o); }
    bool is_zero() const { return x == 0 && y == 0; }
    bool is_rational_integer() const { return y == 0; }

    Eisenstein conj() const { return {x - y, -y}; }
    BigInt norm() const { return x * x - x * y + y * y; }

    Eisenstein operator-() const { return {-x, -y}; }
    Eisenstein& operator+=(const Eisenstein& o) { x += o.x; y += o.y; return *this; }
    Eisenstein& operator-=(const Eisenstein& o) { x -= o.x; y -= o.y; return *this; }
    Eisenstein& operator*=(const Eisenstein& o) {
        BigInt nx = x * o.x - y * o.y;
        BigInt ny = x * o.y + y * o.x - y * o.y;
        x = std::move(nx);
        y = std::move(ny);
        return *this;
    }
    friend Eisenstein operator+(Eisenstein a, const Eisenstein& b) { return a += b; }
    friend Eisenstein operator-(Eisenstein a, const Eisenstein& b) { return a -= b; }
    friend Eisenstein operator*(Eisenstein a, const Eisenstein& b) { return a *= b; }

    // Euclidean division: quotient rounds a*conj(b)/N(b) componentwise to nearest.
    static std::pair<Eisenstein, Eisenstein> divmod(const Eisenstein& a, const Eisenstein& b) {
        if (b.is_zero()) throw DivisionByZero("Eisenstein division by zero");
        BigInt n = b.norm();
        Eisenstein t = a * b.conj();
        auto round_div = [&](const BigInt& v) {
            BigInt twice = 2 * v + n;
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * n).get_mpz_t());
            return q;
        };
        Eisenstein q{round_div(t.x), round_div(t.y)};
        Eisenstein r = a - q * b;
        return {q, r};
    }

    std::string str() const {
        if (y == 0) return x.get_str();
        std::string s = x.get_str();
        s += (y < 0 ? "-" : "+");
        BigInt ay = abs(y);
        s += ay.get_str() + "*xi";
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const Eisenstein& e) { return os << e.str(); }
};

inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    if (b == 0) throw InternalDivisionError("exact division by zero");
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw InternalDivisionError("inexact integer division");
    return q;
}

inline Rational exact_div(const Rational& a, const Rational& b) {
    if (b == 0) throw InternalDivisionError("exact division by zero");
    return a / b;
}

inline Eisenstein exact_div(const Eisenstein& a, const Eisenstein& b) {
    if (b.is_zero()) throw InternalDivisionError("exact division by zero");
    BigInt n = b.norm();
    Eisenstein t = a * b.conj();
    BigInt qx, rx, qy, ry;
    mpz_tdiv_qr(qx.get_mpz_t(), rx.get_mpz_t(), t.x.get_mpz_t(), n.get_mpz_t());
    mpz_tdiv_qr(qy.get_mpz_t(), ry.get_mpz_t(), t.y.get_mpz_t(), n.get_mpz_t());
    if (rx != 0 || ry != 0) throw InternalDivisionError("inexact Eisenstein division");
    return {qx, qy};
}

inline bool is_zero(const BigInt& v) { return v == 0; }
inline bool is_zero(const Rational& v) { return v == 0; }
inline bool is_zero(const Eisenstein& v) { return v.is_zero(); }

template <class T> struct RingName;
template <> struct RingName<BigInt> { static constexpr const char* value = "Int"; };
template <> struct RingName<Rational> { static constexpr const char* value = "Rat"; };
template <> struct RingName<Eisenstein> { static constexpr const char* value = "Eisenstein"; };

template <class T>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<T> data;
    std::string tag;

    Matrix() = default;
    Matrix(int r, int c, std::string t = {}) : rows(r), cols(c), data(size_t(r) * size_t(c)), tag(std::move(t)) {}

    T& operator()(int i, int j) { return data[size_t(i) * cols + j]; }
    const T& operator()(int i, int j) const { return data[size_t(i) * cols + j]; }
    static constexpr const char* ring() { return RingName<T>::value; }
};

// Fraction-free (Bareiss) determinant with row pivoting.
template <class T>
T det_exact(Matrix<T> m) {
    if (m.rows != m.cols) throw VariantParameterError("det_exact: matrix is not square");
    const int n = m.rows;
    if (n == 0) return T(1);
    bool negate = false;
    T prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (is_zero(m(k, k))) {
            int p = k + 1;
            while (p < n && is_zero(m(p, k))) ++p;
            if (p == n) return T(0);
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                T v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = exact_div(v, prev);
            }
        }
        prev = m(k, k);
    }
    T d = m(n - 1, n - 1);
    return negate ? T(-d) : d;
}

template <class T, class F>
Matrix<T> make_matrix(int rows, int cols, F&& f, std::string tag = {}) {
    Matrix<T> m(rows, cols, std::move(tag));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = f(i + 1, j + 1);
    return m;
}

template <class To, class From>
Matrix<To> convert(const Matrix<From>& m) {
    Matrix<To> r(m.rows, m.cols, m.tag);
    for (size_t i = 0; i < m.data.size(); ++i) r.data[i] = To(m.data[i]);
    return r;
}

struct RationalPoly {
    std::vector<Rational> coeffs;  // lowest degree first

    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> c) : coeffs(std::move(c)) { trim(); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    // -1 for the zero polynomial.
    int degree() const { return int(coeffs.size()) - 1; }
    Rational leading_coefficient() const { return coeffs.empty() ? Rational(0) : coeffs.back(); }

    Rational operator()(const Rational& x) const {
        Rational r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
        return r;
    }
    bool operator==(const RationalPoly& o) const { return coeffs == o.coeffs; }

    std::string str() const {
        if (coeffs.empty()) return "0";
        std::string s;
        for (int d = degree(); d >= 0; --d) {
            const Rational& c = coeffs[d];
            if (c == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c.get_str() + ")";
            if (d > 0) s += "*x^" + std::to_string(d);
        }
        return s;
    }
};

// Exact interpolation through the given points (Newton form, expanded).
inline RationalPoly interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (pts[i].first == pts[j].first) throw DuplicateNode("interpolate: duplicate abscissa " + pts[i].first.get_str());
    std::vector<Rational> dd(n);
    for (size_t i = 0; i < n; ++i) dd[i] = pts[i].second;
    for (size_t level = 1; level < n; ++level)
        for (size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (pts[i].first - pts[i - level].first);
            if (i == level) break;
        }
    // Horner on the Newton basis.
    std::vector<Rational> c;
    for (size_t step = n; step-- > 0;) {
        // c = c * (x - x_step) + dd[step]
        std::vector<Rational> next(c.size() + 1);
        for (size_t d = 0; d < c.size(); ++d) {
            next[d + 1] += c[d];
            next[d] -= c[d] * pts[step].first;
        }
        next[0] += dd[step];
        c = std::move(next);
    }
    return RationalPoly(std::move(c));
}

}  // namespace tilescope
