#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tilescope/verify.hpp"

using namespace tilescope;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path((fs::temp_directory_path() / ("tilescope_" + name)).string()) {
        fs::remove(path);
    }
    ~TempFile() { fs::remove(path); }
};

SweepSpec one_tuple(const std::string& suite, std::vector<std::pair<std::string, long>> fixed) {
    SweepSpec s;
    s.suite = suite;
    for (auto& [n, v] : fixed) s.set(n, Range{v, v, 1});
    return s;
}

}  // namespace

TEST_CASE("ranges") {
    CHECK(parse_range("3").values() == std::vector<long>{3});
    CHECK(parse_range("0:4").values() == std::vector<long>{0, 1, 2, 3, 4});
    CHECK(parse_range("0:6:2").values() == std::vector<long>{0, 2, 4, 6});
    CHECK(parse_range("3:2").values().empty());
    CHECK_THROWS(parse_range("0:4:0"));
    CHECK_THROWS(parse_range("x"));
}

TEST_CASE("empty range gives no records and exit 0") {
    SweepSpec s;
    s.suite = "mr";
    s.set("n", Range{3, 2, 1});
    auto recs = run_suite(s);
    CHECK(recs.empty());
    CHECK(suite_exit_code(recs) == 0);
    CHECK(emit_report(recs, ReportFormat::csv) == "suite,agree,status,ms\r\n");
    CHECK(emit_report(recs, ReportFormat::json) == "[]\n");
}

TEST_CASE("single agreeing tuple") {
    auto recs = run_suite(one_tuple("oracle-vs-evenodd", {{"n", 2}, {"a", 0}, {"b", 1}, {"k", 1}}));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].agree);
    CHECK(recs[0].status == "agree");
    CHECK(recs[0].values.size() == 2);
    CHECK(recs[0].values[0].value == "6272");
    CHECK(recs[0].values[1].value == "6272");
    CHECK(suite_exit_code(recs) == 0);
}

TEST_CASE("invalid geometry is skipped, not failed") {
    auto recs = run_suite(one_tuple("oracle-vs-evenodd", {{"n", 1}, {"a", 0}, {"b", 1}, {"k", 1}}));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].status == "skipped");
    CHECK(!recs[0].reason.empty());
    CHECK(suite_exit_code(recs) == 0);
}

TEST_CASE("resource limits and disagreements set the exit code") {
    SweepSpec s = one_tuple("newtheo", {{"n1", 3}, {"n2", 3}, {"n3", 3}, {"a", 4}});
    s.cell_cap = 10;
    auto recs = run_suite(s);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].status == "resource");
    CHECK(suite_exit_code(recs) == 3);

    VerificationRecord bad = recs[0];
    bad.status = "disagree";
    recs.push_back(bad);
    CHECK(suite_exit_code(recs) == 2);
    CHECK_THROWS(find_suite("no-such-suite"));
}

TEST_CASE("suite runs are deterministic across worker counts") {
    SweepSpec s;
    s.suite = "conjecture1";
    s.jobs = 1;
    std::string one = emit_report(run_suite(s), ReportFormat::csv, false);
    s.jobs = 3;
    std::string three = emit_report(run_suite(s), ReportFormat::csv, false);
    CHECK(one == three);
}

TEST_CASE("cache round trip") {
    TempFile a("cache_a.jsonl"), b("cache_b.jsonl");
    SweepSpec s;
    s.suite = "mr";
    s.set("n", Range{1, 2, 1}).set("a", Range{0, 1, 1}).set("b", Range{0, 2, 1}).set("k", Range{0, 1, 1});
    auto recs = run_suite(s);
    REQUIRE(!recs.empty());
    cache_store(a.path, recs);
    auto loaded = cache_load(a.path);
    CHECK(loaded.size() == recs.size());
    cache_store(b.path, loaded);
    CHECK(slurp(a.path) == slurp(b.path));

    // duplicate keys: the newest line wins
    VerificationRecord r = recs[0];
    r.reason = "second run";
    cache_store(a.path, {r});
    auto again = cache_load(a.path);
    CHECK(again.size() == recs.size());
    CHECK(again[0].reason == "second run");

    // corrupt lines are skipped with a warning
    {
        std::ofstream f(a.path, std::ios::app);
        f << "{not json\n";
    }
    std::ostringstream warn;
    CHECK(cache_load(a.path, &warn).size() == recs.size());
    CHECK(warn.str().find("corrupt") != std::string::npos);
    CHECK(cache_load("/nonexistent/dir/file.jsonl").empty());
}

TEST_CASE("thousand-digit counts survive the cache") {
    TempFile a("cache_big.jsonl");
    BigInt big = factorized_count(56, 2, 2, 3).count;
    REQUIRE(big.get_str().size() >= 1000);
    VerificationRecord r;
    r.suite = "factorized";
    r.params = {{"n", 56}, {"a", 2}, {"b", 2}, {"k", 3}};
    r.values = {{"factorized", big.get_str(), ValueKind::value}, {"conjectured", conjectured_count(56, 2, 2, 3).count().get_str(), ValueKind::value}};
    r.agree = r.values[0].value == r.values[1].value;
    r.status = r.agree ? "agree" : "disagree";
    CHECK(r.agree);
    cache_store(a.path, {r});
    auto back = cache_load(a.path);
    REQUIRE(back.size() == 1);
    CHECK(BigInt(back[0].values[0].value) == big);
}

TEST_CASE("reports") {
    auto recs = run_suite(one_tuple("oracle-vs-evenodd", {{"n", 2}, {"a", 0}, {"b", 1}, {"k", 1}}));
    std::string csv = emit_report(recs, ReportFormat::csv, false);
    CHECK(csv == "suite,n,a,b,k,oracle,evenodd,agree,status,ms\r\noracle-vs-evenodd,2,0,1,1,6272,6272,true,agree,0\r\n");

    auto json = nlohmann::ordered_json::parse(emit_report(recs, ReportFormat::json, false));
    REQUIRE(json.size() == 1);
    CHECK(json[0]["values"][0]["value"] == "6272");
    CHECK(json[0]["values"][1]["value"] == "6272");
    CHECK(json[0]["params"]["k"] == 1);

    VerificationRecord q;
    q.suite = "x";
    q.params = {{"n", 1}};
    q.values = {{"m", "needs, \"quotes\"", ValueKind::error}};
    q.status = "error";
    std::string qc = emit_report({q}, ReportFormat::csv, false);
    CHECK(qc.find("\"error: needs, \"\"quotes\"\"\"") != std::string::npos);
}

TEST_CASE("polynomial reconstruction") {
    PolyReconstruction r = poly_reconstruct(1, 2, 1);
    CHECK(r.degree == leading_degree(1, 2, 1));
    CHECK(r.leading == leading_coefficient(1, 2, 1));
    PolyReconstruction f = poly_reconstruct(1, 0, 1, PolyEvaluator::factorized);
    PolyReconstruction e = poly_reconstruct(1, 0, 1, PolyEvaluator::reduced);
    CHECK(f.poly == e.poly);
    CHECK(f.poly(Rational(3)) == Rational(factorized_count(2, 6, 0, 1).count));
    CHECK_THROWS_AS(poly_reconstruct(1, 1, 1), ParityError);
}
