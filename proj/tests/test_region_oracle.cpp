#include "doctest.h"

#include <functional>
#include <map>
#include <set>

#include "tilescope/formulas.hpp"
#include "tilescope/oracle.hpp"
#include "tilescope/region.hpp"

using namespace tilescope;

namespace {

// Independent count: brute-force backtracking over the dual graph.
long brute_matchings(const DualGraph& g) {
    std::vector<std::vector<int>> adj = g.adj;
    std::vector<bool> used(g.downs.size(), false);
    std::function<long(size_t)> go = [&](size_t u) -> long {
        if (u == adj.size()) return 1;
        long s = 0;
        for (int d : adj[u])
            if (!used[d]) {
                used[d] = true;
                s += go(u + 1);
                used[d] = false;
            }
        return s;
    };
    if (g.ups.size() != g.downs.size()) return 0;
    return go(0);
}

}  // namespace

TEST_CASE("cell counts and balance") {
    Region h = build_region(RegionSpec::hexagon(1, 1, 1));
    CHECK(h.size() == 6);
    CHECK(balance(h) == std::pair<long, long>{3, 3});

    Region s = build_region(RegionSpec::s(2, 0, 0, 0));
    Region h2 = build_region(RegionSpec::hexagon(2, 2, 2));
    CHECK(s.cells == h2.cells);
    CHECK(balance(s) == std::pair<long, long>{12, 12});

    auto t = balance(build_region(RegionSpec::dented_trapezoid(2, 4, {})));
    CHECK(t.first - t.second == 2);

    auto s2011 = balance(build_region(RegionSpec::s(2, 0, 1, 1)));
    CHECK(s2011.first == s2011.second);

    CHECK_THROWS_AS(build_region(RegionSpec::sgeneral(9, 1, 1, 0, 0, 0, 0, 0, 0, 0)), GeometryViolation);
    CHECK_THROWS_AS(build_region(RegionSpec::s(2, 0, 1, 3)), GeometryViolation);
}

TEST_CASE("rotation map") {
    auto cycles = [](const std::vector<int>& p) {
        std::vector<bool> seen(p.size(), false);
        std::map<int, int> lens;
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (size_t j = i; !seen[j]; j = size_t(p[j])) {
                seen[j] = true;
                ++len;
            }
            lens[len]++;
        }
        return lens;
    };
    auto p1 = rotation_map(build_region(RegionSpec::hexagon(1, 1, 1)));
    CHECK(cycles(p1) == std::map<int, int>{{3, 2}});
    auto p2 = rotation_map(build_region(RegionSpec::hexagon(2, 2, 2)));
    CHECK(cycles(p2) == std::map<int, int>{{3, 8}});
    CHECK_THROWS_AS(rotation_map(build_region(RegionSpec::sgeneral(2, 3, 2, 0, 0, 0, 0, 0, 0, 0))), NotSymmetric);
}

TEST_CASE("dual graph") {
    DualGraph g = dual_graph(build_region(RegionSpec::hexagon(1, 1, 1)));
    CHECK(g.ups.size() == 3);
    CHECK(g.downs.size() == 3);
    for (const auto& a : g.adj) CHECK(a.size() <= 3);
    Region one;
    one.cells = {Cell{0, 0, true}};
    one.finalize();
    DualGraph g1 = dual_graph(one);
    CHECK(g1.ups.size() == 1);
    CHECK(g1.downs.empty());
}

TEST_CASE("oracle counts") {
    CHECK(count_tilings(build_region(RegionSpec::hexagon(1, 1, 1))) == 2);
    CHECK(count_tilings(build_region(RegionSpec::hexagon(2, 2, 2))) == 20);
    CHECK(count_tilings(build_region(RegionSpec::dented_trapezoid(2, 4, {}))) == 0);
    CHECK(count_invariant_tilings(build_region(RegionSpec::hexagon(1, 1, 1))) == 2);
    CHECK(count_invariant_tilings(build_region(RegionSpec::hexagon(2, 2, 2))) == 5);
    CHECK_THROWS_AS(count_invariant_tilings(build_region(RegionSpec::sgeneral(1, 2, 2, 0, 0, 0, 0, 0, 0, 0))), NotSymmetric);

    Region r = build_region(RegionSpec::hexagon(5, 5, 5));
    CHECK(r.size() == 150);
    CHECK_THROWS_AS(count_tilings(r), RegionTooLarge);
    CHECK(count_tilings(r, 1000) == 267227532);
}

TEST_CASE("oracle against brute force and the box formula") {
    for (long p = 0; p <= 3; ++p)
        for (long q = 0; q <= 3; ++q)
            for (long r = 0; r <= 3; ++r) {
                Region h = build_region(RegionSpec::hexagon(p, q, r));
                CHECK(count_tilings(h, 1000) == macmahon(p, q, r));
            }
    for (const auto& spec : {RegionSpec::s(2, 0, 1, 1), RegionSpec::s(2, 2, 0, 0), RegionSpec::sgeneral(2, 1, 2, 0, 1, 0, 1, 0, 0, 0),
                             RegionSpec::triad(2, 1, 1, 0, 1, 1), RegionSpec::shamrock(1, 1, 1, 1, 1, 1, 1)}) {
        Region r = build_region(spec);
        CHECK(count_tilings(r, 1000) == brute_matchings(dual_graph(r)));
    }
    CHECK(count_tilings(build_region(RegionSpec::s(2, 0, 1, 1))) == 6272);
}

TEST_CASE("spec parsing and JSON") {
    RegionSpec s = parse_spec("s:2,0,1,1");
    CHECK(s.variant == Variant::S);
    CHECK(s.get("k") == 1);
    CHECK(spec_from_json(to_json(s)).str() == s.str());
    RegionSpec j = parse_spec(R"({"variant":"sgeneral","params":{"n1":1,"n2":2,"n3":2,"a":0,"b1":0,"b2":0,"b3":0,"k1":0,"k2":0,"k3":0}})");
    CHECK(j.variant == Variant::SGeneral);
    CHECK(j.get("n2") == 2);
    RegionSpec t = parse_spec("trapezoid:2,4;1,1;1,3");
    CHECK(t.variant == Variant::DentedTrapezoid);
    CHECK(count_tilings(build_region(t)) == 2);
    CHECK_THROWS_AS(parse_spec("s:2,0,1"), GeometryViolation);
    CHECK_THROWS(parse_spec("s:2,-1,1,1"));
    CHECK_THROWS(parse_spec("octagon:1"));
}
