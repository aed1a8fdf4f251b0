#include "doctest.h"

#include "tilescope/exact.hpp"
#include "tilescope/highreal.hpp"

using namespace tilescope;

TEST_CASE("binomials with negative arguments") {
    CHECK(binom(5, 2) == 10);
    CHECK(binom(4, -1) == 0);
    CHECK(binom(-3, 2) == 6);
    CHECK(binom(0, 0) == 1);
    CHECK(binom(BigInt(-1), 3) == -1);
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(make_rational(7, 2), 0) == 1);
    CHECK(pochhammer(Rational(2), -1) == 1);
    CHECK(pochhammer(Rational(1), 4) == 24);
    CHECK(pochhammer(make_rational(1, 2), 2) == make_rational(3, 4));
    CHECK(pochhammer(make_rational(1, 2), -1) == -2);
    CHECK_THROWS_AS(pochhammer(Rational(1), -1), PoleError);

    PrecisionGuard g(30);
    HighReal v = pochhammer_real(Rational(1), make_rational(1, 2));
    HighReal want = sqrt(real_pi()) / 2;
    CHECK(abs(v - want) < HighReal("1e-28"));
}

TEST_CASE("range products") {
    auto id = [](long k) { return Rational(k); };
    CHECK(range_product(2, 4, id) == 24);
    CHECK(range_product(2, 4, id, ProductConvention::clamped) == 24);
    CHECK(range_product(3, 0, id) == make_rational(1, 2));
    CHECK(range_product(3, 0, id, ProductConvention::clamped) == 1);
    CHECK(range_product(3, 2, id) == 1);
}

TEST_CASE("determinants over Int, Rat and Eisenstein") {
    CHECK(det_exact(make_matrix<BigInt>(3, 3, [](int i, int j) { return BigInt(i == j); })) == 1);
    Matrix<BigInt> m(2, 2);
    m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 3; m(1, 1) = 4;
    CHECK(det_exact(m) == -2);
    CHECK(det_exact(convert<Rational>(m)) == -2);
    CHECK(det_exact(Matrix<BigInt>(0, 0)) == 1);

    Eisenstein xi = Eisenstein::xi();
    CHECK(xi * xi * xi == Eisenstein(1));
    CHECK(xi * xi == Eisenstein(BigInt(-1), BigInt(-1)));
    Matrix<Eisenstein> e(2, 2);
    e(0, 0) = xi; e(1, 1) = xi * xi;
    CHECK(det_exact(e) == Eisenstein(1));

    // needs a pivot swap and exact Eisenstein division
    Matrix<Eisenstein> f(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f(i, j) = Eisenstein(BigInt(i + j), BigInt(i * j + 1));
    f(0, 0) = Eisenstein(0);
    Eisenstein expand = f(0, 0) * (f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1)) - f(0, 1) * (f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0)) +
                        f(0, 2) * (f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0));
    CHECK(det_exact(f) == expand);
    CHECK_THROWS_AS(det_exact(Matrix<BigInt>(2, 3)), VariantParameterError);
}

TEST_CASE("Eisenstein division") {
    Eisenstein a(BigInt(7), BigInt(-3)), b(BigInt(2), BigInt(5));
    CHECK(exact_div(a * b, b) == a);
    CHECK_THROWS(exact_div(Eisenstein(1), Eisenstein(BigInt(2))));
    CHECK(Eisenstein(BigInt(2), BigInt(1)).norm() == 3);
}

TEST_CASE("interpolation") {
    RationalPoly p = interpolate({{0, 1}, {1, 2}, {2, 5}});
    CHECK(p.degree() == 2);
    CHECK(p.coeffs == std::vector<Rational>{1, 0, 1});
    RationalPoly c = interpolate({{3, 7}});
    CHECK(c.degree() == 0);
    CHECK(c.leading_coefficient() == 7);
    CHECK_THROWS_AS(interpolate({{1, 1}, {1, 2}}), DuplicateNode);

    // degree 5 with rational coefficients
    RationalPoly q(std::vector<Rational>{make_rational(1, 3), -2, 0, 5, 0, make_rational(-7, 11)});
    std::vector<std::pair<Rational, Rational>> pts;
    for (long x = -2; x <= 4; ++x) pts.push_back({Rational(x), q(Rational(x))});
    CHECK(interpolate(pts) == q);
}

TEST_CASE("to_integer") {
    CHECK(to_integer(Rational(12, 4)) == 3);
    CHECK_THROWS_AS(to_integer(make_rational(1, 2)), InternalDivisionError);
}

TEST_CASE("Barnes G and precision") {
    CHECK(barnes_int(5) == 12);
    CHECK(barnes_int(4) == 2);
    CHECK(barnes_int(0) == 0);
    CHECK(barnes_int(1) == 1);
    PrecisionGuard g(64);
    CHECK(abs(barnes_g(make_rational(1, 2)) - HighReal("0.603244281209446")) < HighReal("1e-14"));
    for (long t = 1; t <= 20; ++t) {
        Rational z = make_rational(t, 2);
        CHECK(abs(barnes_g(z + 1) - gamma(z) * barnes_g(z)) < HighReal("1e-50"));
    }
    GlaisherCheck gc = glaisher_self_check();
    CHECK(abs(gc.extrapolated - gc.stored) < abs(gc.raw - gc.stored));
    CHECK(abs(gc.extrapolated - gc.stored) < HighReal("1e-10"));
    CHECK_THROWS_AS(set_precision(5), PrecisionError);
}
