#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tilescope/errors.hpp"
#include "tilescope/exact.hpp"
#include "tilescope/region.hpp"

namespace tilescope {

enum class MatrixKind { Gelfand, GeneralEvenB, OddB, EvenOddAB, Reduced, Cored, SymmetricIB };

inline const char* matrix_kind_name(MatrixKind k) {
    switch (k) {
        case MatrixKind::Gelfand: return "gelfand";
        case MatrixKind::GeneralEvenB: return "evenb";
        case MatrixKind::OddB: return "oddb";
        case MatrixKind::EvenOddAB: return "evenodd";
        case MatrixKind::Reduced: return "reduced";
        case MatrixKind::Cored: return "cored";
        case MatrixKind::SymmetricIB: return "symmetric";
    }
    return "?";
}

// SGeneral parameters, also filled in from an S spec.
struct SGParams {
    long n1 = 0, n2 = 0, n3 = 0, a = 0, b1 = 0, b2 = 0, b3 = 0, k1 = 0, k2 = 0, k3 = 0;

    long bsum() const { return b1 + b2 + b3; }
    long size() const { return n1 + n2 + a + b1 + b2 + b3; }
    RegionSpec spec() const { return RegionSpec::sgeneral(n1, n2, n3, a, b1, b2, b3, k1, k2, k3); }
};

inline SGParams sg_params(const RegionSpec& s) {
    SGParams p;
    if (s.variant == Variant::S) {
        p.n1 = p.n2 = p.n3 = s.get("n");
        p.a = s.get("a");
        p.b1 = p.b2 = p.b3 = s.get("b");
        p.k1 = p.k2 = p.k3 = s.get("k");
    } else if (s.variant == Variant::SGeneral) {
        p.n1 = s.get("n1"), p.n2 = s.get("n2"), p.n3 = s.get("n3"), p.a = s.get("a");
        p.b1 = s.get("b1"), p.b2 = s.get("b2"), p.b3 = s.get("b3");
        p.k1 = s.get("k1"), p.k2 = s.get("k2"), p.k3 = s.get("k3");
    } else {
        throw VariantParameterError(std::string("determinant builders need an S or SGeneral spec, got ") +
                                    variant_name(s.variant));
    }
    return p;
}

struct MatrixVariant {
    MatrixKind kind = MatrixKind::EvenOddAB;
    RegionSpec region;
    long d = 1;

    static MatrixVariant of(MatrixKind k, RegionSpec r, long d = 1) { return {k, std::move(r), d}; }
};

namespace detail {

inline long sgn_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

// Sum over q = lo..hi, with the signed convention sum_{lo}^{hi} = -sum_{hi+1}^{lo-1} for hi < lo.
template <class F>
BigInt signed_sum(long lo, long hi, F&& f) {
    BigInt s = 0;
    if (hi >= lo) {
        for (long q = lo; q <= hi; ++q) s += f(q);
        return s;
    }
    for (long q = hi + 1; q <= lo - 1; ++q) s -= f(q);
    return s;
}

inline void need(bool ok, const std::string& what) {
    if (!ok) throw VariantParameterError(what);
}

// Removed triangles numbered bottom to top, left to right.
inline std::vector<std::pair<long, long>> ordered_removed(const RegionSpec& t) {
    auto v = t.removed;
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace detail

// Every removed triangle above the bottom row lies in a horizontal chain of even length.
inline bool removed_set_is_even(const RegionSpec& t) {
    auto v = detail::ordered_removed(t);
    size_t i = 0;
    while (i < v.size()) {
        size_t j = i + 1;
        while (j < v.size() && v[j].first == v[i].first && v[j].second == v[j - 1].second + 1) ++j;
        if (v[i].first > 1 && (j - i) % 2 != 0) return false;
        i = j;
    }
    return true;
}

// Gelfand-Tsetlin style matrix of a dented trapezoid: binom(c_i - d, j - r_i).
inline Matrix<BigInt> gelfand_matrix(const RegionSpec& t, long d = 1) {
    detail::need(t.variant == Variant::DentedTrapezoid, "gelfand matrix needs a dented trapezoid");
    const long n = t.get("n");
    auto v = detail::ordered_removed(t);
    detail::need(long(v.size()) == n, "gelfand matrix needs exactly n removed triangles (n = " + std::to_string(n) +
                                          ", removed " + std::to_string(v.size()) + ")");
    return make_matrix<BigInt>(
        int(n), int(n), [&](int i, int j) { return binom(v[i - 1].second - d, j - v[i - 1].first); },
        "Gelfand(d=" + std::to_string(d) + ")");
}

// Determinant for even b1, b2, b3 (n x n).
inline Matrix<BigInt> general_even_b_matrix(const SGParams& p, long d = 1) {
    detail::need(p.a % 2 == 0, "GeneralEvenB requires even a");
    detail::need(p.b1 % 2 == 0 && p.b2 % 2 == 0 && p.b3 % 2 == 0, "GeneralEvenB requires even b1, b2, b3");
    build_region(p.spec());
    const long h = p.a / 2, n = p.size();
    struct Block {
        long len, base, shift;
    };
    const Block blocks[] = {
        {p.n2, 0, 0},
        {p.n1, p.n2 + p.n3 + p.a + p.bsum(), 0},
        {p.b3, p.n1 + h + p.b1 + p.k3, p.n3 - 2 * p.k3},
        {p.a, p.n1 + p.b1, p.n3 + p.b3},
        {p.b1, p.n1 - 2 * p.k1, p.n3 + h + p.b3 + p.k1},
        {p.b2, p.n1 + h + p.b1 + p.k2, p.n3 + h + p.b3 + p.k2},
    };
    Matrix<BigInt> m(static_cast<int>(n), static_cast<int>(n), "GeneralEvenB(d=" + std::to_string(d) + ")");
    int row = 0;
    for (const auto& b : blocks)
        for (long i = 1; i <= b.len; ++i, ++row)
            for (long j = 1; j <= n; ++j) m(row, int(j - 1)) = binom(b.base + i - d, j - 1 - b.shift);
    return m;
}

// Determinant for arbitrary b1, b2, b3 with k2 = k3 (n x n).
inline Matrix<BigInt> odd_b_matrix(const SGParams& p) {
    detail::need(p.a % 2 == 0, "OddB requires even a");
    detail::need(p.k2 == p.k3, "OddB requires k2 = k3");
    build_region(p.spec());
    using detail::sgn_pow;
    const long h = p.a / 2, n = p.size(), k = p.k2;
    const long n1 = p.n1, n2 = p.n2, n3 = p.n3, b1 = p.b1, b2 = p.b2, b3 = p.b3, k1 = p.k1;
    Matrix<BigInt> m(static_cast<int>(n), static_cast<int>(n), "OddB");
    int row = 0;
    for (long i = 1; i <= n2; ++i, ++row)
        for (long j = 1; j <= n; ++j) {
            BigInt v = binom(i - n1 - h - b1 - k - 1, j - 1);
            if (b1 % 2 != 0)
                v -= 2 * detail::signed_sum(n3 + h + b3 + k1 + 1, j, [&](long q) {
                         return BigInt(binom(i - n1 + 2 * k1 - 1, q - 1) * binom(-2 * k1 - h - b1 - k, j - q));
                     });
            if (j >= n3 - 2 * k + 1 && b3 % 2 != 0) v = -v;
            m(row, int(j - 1)) = v;
        }
    for (long i = 1; i <= n1; ++i, ++row)
        for (long j = 1; j <= n; ++j) {
            BigInt v = binom(-n1 + n2 + n3 + h + b2 + b3 - k + i - 1, j - 1);
            if (j >= n3 + h + b3 + k + 1 && b2 % 2 != 0) v = -v;
            m(row, int(j - 1)) = v;
        }
    for (long i = 1; i <= b3; ++i, ++row)
        for (long j = 1; j <= n; ++j) m(row, int(j - 1)) = binom(i - 1, j - 1 - n3 + 2 * k);
    for (long i = 1; i <= p.a; ++i, ++row)
        for (long j = 1; j <= n; ++j) m(row, int(j - 1)) = binom(i - h - k - 1, j - 1 - n3 - b3);
    for (long i = 1; i <= b1; ++i, ++row)
        for (long j = 1; j <= n; ++j) m(row, int(j - 1)) = binom(-h - b1 - 2 * k1 - k + i - 1, j - 1 - n3 - h - b3 - k1);
    for (long i = 1; i <= b2; ++i, ++row)
        for (long j = 1; j <= n; ++j) m(row, int(j - 1)) = binom(i - 1, j - 1 - n3 - h - b3 - k);
    (void)sgn_pow;
    return m;
}

// The (A | B') matrix whose entries are polynomials in a; size n1+n2+b1+b2+b3.
inline Matrix<BigInt> even_odd_ab_matrix(const SGParams& p) {
    detail::need(p.a % 2 == 0, "EvenOddAB requires even a");
    detail::need(p.k2 == p.k3, "EvenOddAB requires k2 = k3");
    build_region(p.spec());
    using detail::sgn_pow;
    const long h = p.a / 2, a = p.a, k = p.k2;
    const long n1 = p.n1, n2 = p.n2, n3 = p.n3, b1 = p.b1, b2 = p.b2, b3 = p.b3, k1 = p.k1;
    const long ca = n3 + b3, cb = n1 + n2 - n3 + b1 + b2;
    const long N = n1 + n2 + b1 + b2 + b3;
    detail::need(ca + cb == N, "EvenOddAB: column blocks do not add up");
    Matrix<BigInt> m(static_cast<int>(N), static_cast<int>(N), "EvenOddAB");
    int row = 0;
    // rows 1..n2
    for (long i = 1; i <= n2; ++i, ++row) {
        for (long j = 1; j <= ca; ++j) {
            BigInt v = binom(i - n1 - b1 - 1, j - 1);
            if (b3 % 2 != 0)
                v -= 2 * detail::signed_sum(1 + n3 - 2 * k, j, [&](long q) {
                         return BigInt(binom(i - n1 - h - b1 - k - 1, q - 1) * binom(h + k, j - q));
                     });
            m(row, int(j - 1)) = v;
        }
        for (long j = 1; j <= cb; ++j) {
            const long s = sgn_pow(j + n3 - 1);
            BigInt v = s * binom(n1 + n3 + a + b1 + b3 - i + j - 1, n1 + b1 - i);
            if (b1 % 2 != 0)
                v -= 2 * s * detail::signed_sum(n3 + h + b3 + k1 + 1, j + n3 + a + b3, [&](long q) {
                         return BigInt(binom(n1 - 2 * k1 - i + q - 1, n1 - 2 * k1 - i) *
                                       binom(j + n3 + a + b1 + b3 + 2 * k1 - q - 1, b1 + 2 * k1 - 1));
                     });
            m(row, int(ca + j - 1)) = v;
        }
    }
    // rows n1 block
    for (long i = 1; i <= n1; ++i, ++row) {
        const long top = -n1 + n2 + n3 + a + b2 + b3 + i - 1;
        for (long j = 1; j <= ca; ++j) m(row, int(j - 1)) = binom(top, j - 1);
        for (long j = 1; j <= cb; ++j) {
            BigInt v = binom(top, -n1 + n2 + b2 + i - j);
            if (b2 % 2 != 0)
                v -= 2 * detail::signed_sum(1, -n1 + n2 + b2 - 2 * k + i, [&](long q) {
                         return BigInt(binom(-n1 + n2 + n3 + h + b2 + b3 - k + i - 1, -n1 + n2 + b2 - 2 * k + i - q) *
                                       binom(h + k, 2 * k - j + q));
                     });
            m(row, int(ca + j - 1)) = v;
        }
    }
    for (long i = 1; i <= b3; ++i, ++row) {
        for (long j = 1; j <= ca; ++j) m(row, int(j - 1)) = binom(h + k + i - 1, j - 1 - n3 + 2 * k);
        for (long j = 1; j <= cb; ++j) m(row, int(ca + j - 1)) = 0;
    }
    for (long i = 1; i <= b1; ++i, ++row) {
        for (long j = 1; j <= ca; ++j) m(row, int(j - 1)) = 0;
        for (long j = 1; j <= cb; ++j)
            m(row, int(ca + j - 1)) = sgn_pow(j) * binom(h + b1 + k1 - i + j - 1, b1 + 2 * k1 - i);
    }
    for (long i = 1; i <= b2; ++i, ++row) {
        for (long j = 1; j <= ca; ++j) m(row, int(j - 1)) = 0;
        for (long j = 1; j <= cb; ++j) m(row, int(ca + j - 1)) = binom(h + k + i - 1, 2 * k + i - j);
    }
    return m;
}

// Matrix of the hexagon with one triangular hole (no satellites); a may be any integer.
inline Matrix<BigInt> cored_matrix(long n1, long n2, long n3, const BigInt& a) {
    detail::need(n1 >= 0 && n2 >= 0 && n3 >= 0, "Cored requires non-negative n1, n2, n3");
    detail::need(n1 + n2 >= n3, "Cored requires n3 <= n1+n2");
    const long N = n1 + n2, ca = n3, cb = n1 + n2 - n3;
    Matrix<BigInt> m(static_cast<int>(N), static_cast<int>(N), "Cored");
    for (long i = 1; i <= n2; ++i) {
        for (long j = 1; j <= ca; ++j) m(int(i - 1), int(j - 1)) = binom(i - n1 - 1, j - 1);
        for (long j = 1; j <= cb; ++j)
            m(int(i - 1), int(ca + j - 1)) = detail::sgn_pow(j + n3 - 1) * binom(BigInt(n1 + n3 - i + j - 1) + a, n1 - i);
    }
    for (long i = 1; i <= n1; ++i) {
        BigInt top = BigInt(-n1 + n2 + n3 + i - 1) + a;
        for (long j = 1; j <= ca; ++j) m(int(n2 + i - 1), int(j - 1)) = binom(top, j - 1);
        for (long j = 1; j <= cb; ++j) m(int(n2 + i - 1), int(ca + j - 1)) = binom(top, -n1 + n2 + i - j);
    }
    return m;
}

// Size a+b1+b2+b3 determinant for even a, b_i, and its rational prefactor.
struct ReducedForm {
    Matrix<BigInt> matrix;
    Rational prefactor;
};

inline ReducedForm reduced_form(const SGParams& p) {
    detail::need(p.a % 2 == 0, "Reduced requires even a");
    detail::need(p.b1 % 2 == 0 && p.b2 % 2 == 0 && p.b3 % 2 == 0, "Reduced requires even b1, b2, b3");
    build_region(p.spec());
    const long h = p.a / 2, S = p.bsum();
    const long n1 = p.n1, n2 = p.n2, n3 = p.n3, a = p.a;
    const long m = a + S;
    Rational pre = 1;
    for (long i = 1; i <= n1; ++i) pre *= Rational(binom(n2 + n3 + a + S + i - 1, n2));
    for (long j = 1; j <= m + n1; ++j) pre /= Rational(binom(j + n2 - 1, j - 1));

    struct Block {
        long len, top, shift;
    };
    const Block blocks[] = {
        {p.b3, n1 + h + p.b1 + p.k3, n2 - n3 + 2 * p.k3 - 1},
        {a, n1 + p.b1, n2 - n3 - p.b3 - 1},
        {p.b1, n1 - 2 * p.k1, n2 - n3 - h - p.b3 - p.k1 - 1},
        {p.b2, n1 + h + p.b1 + p.k2, n2 - n3 - h - p.b3 - p.k2 - 1},
    };
    const long neg = -n3 - a - S;
    Matrix<BigInt> mat(static_cast<int>(m), static_cast<int>(m), "Reduced");
    int row = 0;
    for (const auto& b : blocks)
        for (long i = 1; i <= b.len; ++i, ++row)
            for (long j = 1; j <= m; ++j) {
                BigInt v = 0;
                for (long l = 1; l <= j + n1; ++l)
                    v += binom(b.top + i - 1, l + b.shift) * binom(l + n2 - 1, l - 1) * binom(neg, j + n1 - l);
                mat(row, int(j - 1)) = v;
            }
    return {std::move(mat), pre};
}

// The pair (I-bar, B-bar) for S_{n,a,b,k}, each (n+2b)-square.
inline std::pair<Matrix<BigInt>, Matrix<BigInt>> symmetric_ib(long n, long a, long b, long k) {
    if (a % 2 != 0 || b % 2 != 0) throw ParityError("SymmetricIB requires even a and b");
    build_region(RegionSpec::s(n, a, b, k));
    const long N = n + 2 * b, h = a / 2;
    Matrix<BigInt> I(static_cast<int>(N), static_cast<int>(N), "SymmetricIB:I");
    Matrix<BigInt> B(static_cast<int>(N), static_cast<int>(N), "SymmetricIB:B");
    for (long i = 1; i <= N; ++i)
        for (long j = 1; j <= N; ++j) {
            I(int(i - 1), int(j - 1)) = (i == j && i <= n + b) ? 1 : 0;
            BigInt v;
            if (i <= n + b && j <= n + b)
                v = binom(a + i + j - 2, j - 1);
            else if (i <= n + b)
                v = binom(h + k + i - 1, 2 * k + (j - n - b) - 1);
            else if (j <= n + b)
                v = binom(n + a + b + j - 1, j - (i - n - b));
            else
                v = binom(n + h + b + k, 2 * k + (j - n - b) - (i - n - b));
            B(int(i - 1), int(j - 1)) = v;
        }
    return {std::move(I), std::move(B)};
}

// d-th forward difference over rows r0..r0+len-1 (0-based r0): (len-d) x cols.
inline Matrix<BigInt> row_difference(const Matrix<BigInt>& m, int r0, int len, int d) {
    Matrix<BigInt> out(std::max(0, len - d), m.cols, m.tag + ":rowdiff");
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            BigInt v = 0;
            for (int t = 0; t <= d; ++t) v += detail::sgn_pow(d - t) * binom(d, t) * m(r0 + i + t, j);
            out(i, j) = v;
        }
    return out;
}

// d-th anti-difference (sigma p(x) = p(x+1) + p(x)) over columns c0..c0+len-1.
inline Matrix<BigInt> column_antidifference(const Matrix<BigInt>& m, int c0, int len, int d) {
    Matrix<BigInt> out(m.rows, std::max(0, len - d), m.tag + ":colanti");
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < out.cols; ++j) {
            BigInt v = 0;
            for (int t = 0; t <= d; ++t) v += binom(d, t) * m(i, c0 + j + t);
            out(i, j) = v;
        }
    return out;
}

// Upper bound on deg_a det(Cored(n1,n2,n3,a)).
inline long cored_degree_bound(long n1, long n2, long n3) {
    long v = 2 * n1 * n2 + 2 * n1 * n3 + 2 * n2 * n3 - n1 * n1 - n2 * n2 - n3 * n3;
    return v >= 0 ? v / 4 : -((-v + 3) / 4);
}

// B(n) = binom(a+i+j-2, j-1), the top-left block of B-bar.
inline Matrix<BigInt> pascal_block(long n, const BigInt& a) {
    return make_matrix<BigInt>(static_cast<int>(n), static_cast<int>(n),
                               [&](int i, int j) { return binom(a + i + j - 2, j - 1); }, "B(n)");
}

// sum_t (j_t - t) for a sorted 1-based column set.
inline long minor_degree_bound(const std::vector<int>& cols) {
    long s = 0;
    for (size_t t = 0; t < cols.size(); ++t) s += cols[t] - long(t + 1);
    return s;
}

inline Matrix<BigInt> submatrix(const Matrix<BigInt>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix<BigInt> out(static_cast<int>(rows.size()), static_cast<int>(cols.size()), m.tag + ":minor");
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) out(int(i), int(j)) = m(rows[i] - 1, cols[j] - 1);
    return out;
}

inline Matrix<BigInt> build_matrix(const MatrixVariant& v) {
    switch (v.kind) {
        case MatrixKind::Gelfand: return gelfand_matrix(v.region, v.d);
        case MatrixKind::GeneralEvenB: return general_even_b_matrix(sg_params(v.region), v.d);
        case MatrixKind::OddB: return odd_b_matrix(sg_params(v.region));
        case MatrixKind::EvenOddAB: return even_odd_ab_matrix(sg_params(v.region));
        case MatrixKind::Reduced: return reduced_form(sg_params(v.region)).matrix;
        case MatrixKind::Cored: {
            SGParams p = sg_params(v.region);
            detail::need(p.bsum() == 0, "Cored requires b1 = b2 = b3 = 0");
            return cored_matrix(p.n1, p.n2, p.n3, BigInt(p.a));
        }
        case MatrixKind::SymmetricIB:
            throw VariantParameterError("SymmetricIB builds a pair of matrices; use symmetric_ib");
    }
    throw VariantParameterError("unknown matrix kind");
}

struct FactorizedCount {
    BigInt count;
    BigInt mr_part;
    Eisenstein xi_part, xi2_part;
};

// M(S_{n,a,b,k}) as det(I+B) det(xi I+B) det(xi^2 I+B) over the Eisenstein integers.
inline FactorizedCount factorized_count(long n, long a, long b, long k) {
    auto [I, B] = symmetric_ib(n, a, b, k);
    const int N = I.rows;
    Matrix<BigInt> plain(N, N, "I+B");
    Matrix<Eisenstein> e1(N, N, "xiI+B"), e2(N, N, "xi2I+B");
    const Eisenstein xi = Eisenstein::xi(), xi2 = xi * xi;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            plain(i, j) = I(i, j) + B(i, j);
            e1(i, j) = Eisenstein(B(i, j)) + xi * Eisenstein(I(i, j));
            e2(i, j) = Eisenstein(B(i, j)) + xi2 * Eisenstein(I(i, j));
        }
    FactorizedCount r;
    r.mr_part = det_exact(plain);
    r.xi_part = det_exact(e1);
    r.xi2_part = det_exact(e2);
    Eisenstein total = Eisenstein(r.mr_part) * r.xi_part * r.xi2_part;
    if (!total.is_rational_integer())
        throw InternalDivisionError("factorized_count: product is not a rational integer: " + total.str());
    r.count = total.x;
    return r;
}

inline BigInt count_via_determinant(const MatrixVariant& v) {
    if (v.kind == MatrixKind::SymmetricIB) {
        SGParams p = sg_params(v.region);
        if (v.region.variant != Variant::S)
            throw VariantParameterError("SymmetricIB requires a symmetric S spec");
        return factorized_count(p.n1, p.a, p.b1, p.k1).count;
    }
    if (v.kind == MatrixKind::Gelfand && !removed_set_is_even(v.region))
        throw VariantParameterError("removed set is not even, so the Gelfand determinant is only a signed count");
    if (v.kind == MatrixKind::Reduced) {
        ReducedForm f = reduced_form(sg_params(v.region));
        Rational val = f.prefactor * Rational(abs(det_exact(f.matrix)));
        return to_integer(val, "reduced determinant count");
    }
    return abs(det_exact(build_matrix(v)));
}

// Trapezoid with unit dents on its base at positions x: Vandermonde quotient.
inline Rational trapezoid_dent_count(const std::vector<long>& x) {
    Rational r = 1;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) r *= make_rational(x[j] - x[i], long(j - i));
    return r;
}

}  // namespace tilescope
