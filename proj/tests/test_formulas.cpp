#include "doctest.h"

#include "tilescope/formulas.hpp"
#include "tilescope/oracle.hpp"
#include "tilescope/region.hpp"

using namespace tilescope;

namespace {

BigInt oracle(const RegionSpec& s) { return count_tilings(build_region(s), 1000); }
BigInt oracle_r(const RegionSpec& s) { return count_invariant_tilings(build_region(s), 1000); }

Rational ratio(const BigInt& a, const BigInt& b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("box formula and superfactorials") {
    CHECK(macmahon(1, 1, 1) == 2);
    CHECK(macmahon(2, 2, 2) == 20);
    CHECK(macmahon(0, 5, 7) == 1);
    CHECK(macmahon(2, 3, 4) == macmahon(4, 2, 3));
    CHECK(superfactorial(4) == 12);
    CHECK(barnes_int(5) == 12);
    for (long n = 1; n <= 6; ++n) CHECK(superfactorial(n) == barnes_int(n + 1));
}

TEST_CASE("rotation-invariant closed form") {
    CHECK(mr_closed_form(1, 0, 0, 0).count() == 5);
    CHECK(mr_closed_form(1, 1, 0, 0).count() == oracle_r(RegionSpec::s(2, 2, 0, 0)));
    CHECK(mr_closed_form(1, 0, 1, 1).count() == oracle_r(RegionSpec::s(2, 0, 1, 1)));
    CHECK(mr_closed_form(2, 0, 1, 1).count() == oracle_r(RegionSpec::s(4, 0, 1, 1)));
    CHECK(mr_closed_form(1, 0, 2, 1).count() == oracle_r(RegionSpec::s(2, 0, 2, 1)));
    CHECK_THROWS(mr_closed_form(1, 0, 1, 2));
}

TEST_CASE("conjecture 1 ratio") {
    CHECK(conjecture1_ratio(0, 1, 0) == 1);
    CHECK(conjecture1_ratio(2, 3, 0) == 1);
    for (long a : {0, 2, 4})
        for (long k : {1, 2, 5}) CHECK(conjecture1_ratio(a, 0, k) == 1);
    CHECK(conjecture1_ratio(0, 1, 1) == make_rational(49, 100));
    CHECK_THROWS_AS(conjecture1_ratio(1, 1, 1), ParityError);
}

TEST_CASE("conjecture 2 ratio") {
    MixedValue h2 = conjecture2_ratio(2, 0, 0, 0);
    CHECK(abs(h2.r - to_real(make_rational(4, 25))) < HighReal("1e-40"));
    MixedValue h4 = conjecture2_ratio(4, 0, 0, 0);
    BigInt mr4 = mr_closed_form(2, 0, 0, 0).count();
    CHECK(h4.exact);
    CHECK(h4.q == ratio(macmahon(4, 4, 4), BigInt(mr4 * mr4 * mr4)));
    CHECK(ratio(oracle(RegionSpec::hexagon(2, 2, 2)), BigInt(125)) == make_rational(4, 25));
    MixedValue one = conjecture2_ratio(1, 0, 0, 0);
    CHECK(!one.exact);
    CHECK(abs(one.r - HighReal("0.25")) < HighReal("1e-40"));

    PrecisionGuard g(64);
    for (long n = 1; n <= 4; ++n) {
        HighReal even = conjecture2_ratio_even(n, 2, 1, 1).r;
        HighReal general = conjecture2_ratio_general(2 * n, 4, 1, 1);
        CHECK(abs(even - general) < HighReal("1e-30") * general);
    }

    // M / M_r^3 against the oracle, exact and real forms
    for (auto [n, a, b, k] : std::vector<std::array<long, 4>>{{2, 0, 1, 1}, {2, 2, 0, 0}, {3, 0, 0, 0}, {3, 0, 1, 1}}) {
        RegionSpec s = RegionSpec::s(n, a, b, k);
        BigInt mr = oracle_r(s);
        Rational want = ratio(oracle(s), BigInt(mr * mr * mr));
        MixedValue got = conjecture2_ratio(n, a, b, k);
        if (got.exact) CHECK(got.q == want);
        else CHECK(abs(got.r - to_real(want)) < HighReal("1e-30"));
    }
}

TEST_CASE("cored hexagon product formula") {
    for (long n1 = 0; n1 <= 3; ++n1)
        for (long n2 = n1; n2 <= 3; ++n2)
            for (long n3 = n2; n3 <= std::min(3L, n1 + n2); ++n3) CHECK(newtheo_count(n1, n2, n3, 0).count() == macmahon(n1, n2, n3));
    CHECK(newtheo_count(1, 1, 1, 2).count() == oracle(RegionSpec::sgeneral(1, 1, 1, 2, 0, 0, 0, 0, 0, 0)));
    CHECK(newtheo_count(2, 1, 1, 1).count() == newtheo_count(1, 1, 2, 1).count());
    CHECK(newtheo_count(1, 2, 3, 3).count() == oracle(RegionSpec::sgeneral(1, 2, 3, 3, 0, 0, 0, 0, 0, 0)));
}

TEST_CASE("shamrock and triad ratios") {
    CHECK(shamrock_ratio(2, 2, 2, 0, 0, 0, 0) == 1);
    CHECK(shamrock_ratio(1, 2, 3, 2, 1, 0, 0) == 1);
    CHECK(triad_ratio(4, 1, 0, 0, 0, 0) == 1);
    CHECK(triad_ratio(2, 1, 1, 0, 1, 1) ==
          ratio(oracle(RegionSpec::triad(2, 1, 1, 0, 1, 1)), oracle(RegionSpec::s(2, 0, 1, 1))));
    CHECK(triad_ratio(3, 1, 1, 1, 0, 1) ==
          ratio(oracle(RegionSpec::triad(3, 1, 1, 1, 0, 1)), oracle(RegionSpec::s(3, 0, 1, 1))));
    CHECK(shamrock_ratio(1, 1, 1, 1, 1, 1, 1) ==
          ratio(oracle(RegionSpec::shamrock(1, 1, 1, 1, 1, 1, 1)), oracle(RegionSpec::sgeneral(1, 1, 1, 4, 0, 0, 0, 0, 0, 0))));
    CHECK(shamrock_ratio(2, 2, 2, 0, 1, 1, 1) ==
          ratio(oracle(RegionSpec::shamrock(2, 2, 2, 0, 1, 1, 1)), oracle(RegionSpec::sgeneral(2, 2, 2, 3, 0, 0, 0, 0, 0, 0))));
}

TEST_CASE("conjectured count") {
    CHECK(conjectured_count(2, 0, 0, 0).count() == 20);
    CHECK(conjectured_count(2, 0, 0, 0).status == FormulaStatus::conjectured);
    CHECK(conjectured_count(2, 0, 1, 1).count() == oracle(RegionSpec::s(2, 0, 1, 1)));
    CHECK(conjectured_count(4, 2, 1, 0).count() == newtheo_count(4, 4, 4, 5).count());
    CHECK(conjectured_count(4, 0, 2, 2).count() == oracle(RegionSpec::s(4, 0, 2, 2)));
}

TEST_CASE("leading term of the polynomial in a") {
    CHECK(leading_degree(1, 0, 0) == 3);
    CHECK(leading_degree(2, 2, 1) == 24);
    // S_{2n,2a,0,0} is the cored hexagon (2n,2n,2n) with core 2a: interpolate its product formula in a.
    for (long n = 1; n <= 2; ++n) {
        long D = leading_degree(n, 0, 0);
        std::vector<std::pair<Rational, Rational>> pts;
        for (long a = 0; a <= D + 2; ++a) pts.push_back({Rational(a), Rational(newtheo_count(2 * n, 2 * n, 2 * n, 2 * a).count())});
        RationalPoly p = interpolate(pts);
        CHECK(p.degree() == D);
        CHECK(p.leading_coefficient() == leading_coefficient(n, 0, 0));
    }
    CHECK_THROWS_AS(leading_coefficient(1, 1, 0), ParityError);
    CHECK_THROWS_AS(leading_coefficient(1, 0, 2), GeometryViolation);
}
