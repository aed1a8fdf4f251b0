#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tilescope/asymptotics.hpp"
#include "tilescope/determinants.hpp"
#include "tilescope/formulas.hpp"
#include "tilescope/oracle.hpp"
#include "tilescope/region.hpp"
#include "tilescope/verify.hpp"

using namespace tilescope;
using ojson = nlohmann::ordered_json;

namespace {

struct Output {
    std::string path;
    std::string format = "json";

    ReportFormat report_format() const { return format == "csv" ? ReportFormat::csv : ReportFormat::json; }

    void write(const std::string& text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << text;
    }
};

void add_output_options(CLI::App* app, Output& out) {
    app->add_option("--out", out.path, "output file (default stdout)");
    app->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string s;
    for (size_t i = 0; i < cells.size(); ++i) {
        const std::string& c = cells[i];
        s += i ? "," : "";
        if (c.find_first_of(",\"\r\n") == std::string::npos) {
            s += c;
        } else {
            s += '"';
            for (char ch : c) s += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            s += '"';
        }
    }
    return s + "\r\n";
}

std::string real_str(const HighReal& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

// ------------------------------------------------------------------ count

const std::vector<std::string> kMethods = {"oracle", "invariant", "gelfand", "evenb", "oddb", "evenodd", "reduced",
                                           "cored",  "factorized", "closed", "newtheo", "conjectured", "ratio"};

struct CountResult {
    std::string method;
    std::string value;
    std::string status;  // proved | conjectured | skipped | error
    std::string note;
};

CountResult count_with(const RegionSpec& spec, const std::string& method, long d, int cap) {
    CountResult r{method, "", "proved", ""};
    auto need = [&](Variant v) {
        if (spec.variant != v)
            throw VariantParameterError("method " + method + " needs a " + variant_name(v) + " spec");
    };
    if (method == "oracle") {
        r.value = count_tilings(build_region(spec), cap).get_str();
    } else if (method == "invariant") {
        r.value = count_invariant_tilings(build_region(spec), cap).get_str();
    } else if (method == "gelfand") {
        RegionSpec t = spec.variant == Variant::DentedTrapezoid ? spec : six_chain_encoding(spec);
        r.value = count_via_determinant(MatrixVariant::of(MatrixKind::Gelfand, t, d)).get_str();
    } else if (method == "evenb") {
        r.value = count_via_determinant(MatrixVariant::of(MatrixKind::GeneralEvenB, spec, d)).get_str();
    } else if (method == "oddb") {
        r.value = count_via_determinant(MatrixVariant::of(MatrixKind::OddB, spec)).get_str();
    } else if (method == "evenodd") {
        r.value = count_via_determinant(MatrixVariant::of(MatrixKind::EvenOddAB, spec)).get_str();
    } else if (method == "reduced") {
        r.value = count_via_determinant(MatrixVariant::of(MatrixKind::Reduced, spec)).get_str();
    } else if (method == "cored") {
        r.value = count_via_determinant(MatrixVariant::of(MatrixKind::Cored, spec)).get_str();
    } else if (method == "factorized") {
        need(Variant::S);
        FactorizedCount f = factorized_count(spec.get("n"), spec.get("a"), spec.get("b"), spec.get("k"));
        r.value = f.count.get_str();
        r.note = "M_r=" + f.mr_part.get_str();
    } else if (method == "closed") {
        need(Variant::S);
        long n = spec.get("n"), a = spec.get("a");
        if (n % 2 != 0 || a % 2 != 0) throw ParityError("closed form for M_r needs even n and even a");
        r.value = mr_closed_form(n / 2, a / 2, spec.get("b"), spec.get("k")).count().get_str();
        r.note = "rotation-invariant tilings";
    } else if (method == "newtheo") {
        SGParams p = sg_params(spec);
        if (p.bsum() != 0) throw VariantParameterError("newtheo needs b1 = b2 = b3 = 0");
        r.value = newtheo_count(p.n1, p.n2, p.n3, p.a).count().get_str();
    } else if (method == "conjectured") {
        need(Variant::S);
        r.value = conjectured_count(spec.get("n"), spec.get("a"), spec.get("b"), spec.get("k")).count().get_str();
        r.status = "conjectured";
    } else if (method == "ratio") {
        if (spec.variant == Variant::Triad) {
            r.value = triad_ratio(spec.get("n"), spec.get("k"), spec.get("B"), spec.get("a"), spec.get("b"), spec.get("c")).get_str();
            r.note = "M(T)/M(S_{n,0,B,k})";
        } else if (spec.variant == Variant::Shamrock) {
            r.value = shamrock_ratio(spec.get("n1"), spec.get("n2"), spec.get("n3"), spec.get("a"), spec.get("b"),
                                     spec.get("c"), spec.get("m"))
                          .get_str();
            r.note = "M(shamrock)/M(cored, core a+b+c+m)";
        } else {
            throw VariantParameterError("ratio needs a triad or shamrock spec");
        }
    } else {
        throw VariantParameterError("unknown method '" + method + "'");
    }
    return r;
}

int run_count(const std::string& region, const std::string& method, long d, int cap, const Output& out) {
    RegionSpec spec = parse_spec(region);
    std::vector<std::string> methods = method == "all" ? kMethods : std::vector<std::string>{method};
    std::vector<CountResult> results;
    bool failed = false;
    for (const auto& m : methods) {
        try {
            results.push_back(count_with(spec, m, d, cap));
        } catch (const std::exception& e) {
            if (method != "all") throw;
            results.push_back({m, "", "skipped", e.what()});
        }
    }
    if (method == "all") {
        std::string ref;
        for (const auto& r : results)
            if (r.status != "skipped" && r.method != "ratio" && r.method != "invariant" && r.method != "closed") {
                if (ref.empty()) ref = r.value;
                else if (r.value != ref) failed = true;
            }
    }
    if (out.format == "csv") {
        std::string s = csv_line({"region", "method", "value", "status", "note"});
        for (const auto& r : results) s += csv_line({spec.str(), r.method, r.value, r.status, r.note});
        out.write(s);
    } else {
        ojson j;
        j["region"] = ojson::parse(to_json(spec).dump());
        ojson arr = ojson::array();
        for (const auto& r : results) {
            ojson e;
            e["method"] = r.method;
            e["value"] = r.value;
            e["status"] = r.status;
            if (!r.note.empty()) e["note"] = r.note;
            arr.push_back(e);
        }
        j["results"] = arr;
        if (method == "all") j["agree"] = !failed;
        out.write(j.dump(2) + "\n");
    }
    return failed ? 2 : 0;
}

// ------------------------------------------------------------------ verify

int run_verify(SweepSpec spec, const std::vector<std::string>& ranges, const std::string& cache, bool timings,
               const Output& out) {
    for (const auto& r : ranges) {
        auto eq = r.find('=');
        if (eq == std::string::npos) throw VariantParameterError("range '" + r + "' must look like name=lo:hi[:step]");
        spec.set(r.substr(0, eq), parse_range(r.substr(eq + 1)));
    }
    std::vector<VerificationRecord> recs = run_suite(spec);
    if (!cache.empty()) cache_store(cache, recs);
    out.write(emit_report(recs, out.report_format(), timings));
    int code = suite_exit_code(recs);
    long agree = 0, skipped = 0, bad = 0, resource = 0;
    for (const auto& r : recs) {
        if (r.status == "agree") ++agree;
        else if (r.status == "skipped") ++skipped;
        else if (r.status == "resource") ++resource;
        else ++bad;
    }
    std::cerr << spec.suite << ": " << recs.size() << " tuples, " << agree << " agree, " << bad
              << " disagree/error, " << resource << " resource-limited, " << skipped << " skipped\n";
    return code;
}

// ------------------------------------------------------------------ interp

int run_interp(long n, long b, long k, const std::string& evaluator, const Output& out) {
    PolyEvaluator ev = evaluator == "reduced"      ? PolyEvaluator::reduced
                       : evaluator == "factorized" ? PolyEvaluator::factorized
                                                   : PolyEvaluator::evenodd;
    PolyReconstruction r = poly_reconstruct(n, b, k, ev);
    long deg = leading_degree(n, b, k);
    Rational lead = leading_coefficient(n, b, k);
    bool ok = r.degree == deg && r.leading == lead;
    if (out.format == "csv") {
        std::string s = csv_line({"n", "b", "k", "degree", "expected_degree", "leading", "expected_leading", "match"});
        s += csv_line({std::to_string(n), std::to_string(b), std::to_string(k), std::to_string(r.degree),
                       std::to_string(deg), r.leading.get_str(), lead.get_str(), ok ? "true" : "false"});
        out.write(s);
    } else {
        ojson j;
        j["n"] = n;
        j["b"] = b;
        j["k"] = k;
        j["evaluator"] = evaluator;
        j["degree"] = r.degree;
        j["expected_degree"] = deg;
        j["leading"] = r.leading.get_str();
        j["expected_leading"] = lead.get_str();
        j["match"] = ok;
        ojson c = ojson::array();
        for (const auto& q : r.poly.coeffs) c.push_back(q.get_str());
        j["coefficients"] = c;
        out.write(j.dump(2) + "\n");
    }
    return ok ? 0 : 2;
}

// ------------------------------------------------------------------ asymptotics

int run_asymptotics(const std::string& what, long a, long b, std::vector<long> ks, const std::string& hole,
                    int digits, const Output& out) {
    if (ks.empty()) ks = {10, 100, 1000};
    const bool csv = out.format == "csv";
    if (what == "omega" || what == "omega-r") {
        OmegaWhich which = what == "omega" ? OmegaWhich::omega : OmegaWhich::omega_r;
        std::string s = csv ? csv_line({"k", "value", "asymptotic", "ratio"}) : "";
        ojson arr = ojson::array();
        for (long k : ks) {
            CorrelationValue v = which == OmegaWhich::omega ? omega_finite(a, b, k) : omega_r_finite(a, b, k);
            HighReal as = omega_asymptotic(a, b, k, which);
            HighReal ratio = v.real / as;
            if (csv) {
                s += csv_line({std::to_string(k), v.str(digits), real_str(as, digits), real_str(ratio, digits)});
            } else {
                ojson e;
                e["k"] = k;
                e["value"] = v.str(digits);
                e["exact"] = v.is_exact();
                e["status"] = status_name(v.status);
                e["asymptotic"] = real_str(as, digits);
                e["ratio"] = real_str(ratio, digits);
                arr.push_back(e);
            }
        }
        out.write(csv ? s : arr.dump(2) + "\n");
        return 0;
    }
    if (what == "convergence") {
        auto rows = convergence_table(a, b, ks);
        std::string s = csv ? csv_line({"k", "value", "ratio"}) : "";
        ojson arr = ojson::array();
        for (const auto& r : rows) {
            if (csv) {
                s += csv_line({std::to_string(r.k), real_str(r.finite, digits), real_str(r.ratio, digits)});
            } else {
                arr.push_back({{"k", r.k}, {"value", real_str(r.finite, digits)}, {"asymptotic", real_str(r.asymptotic, digits)},
                               {"ratio", real_str(r.ratio, digits)}});
            }
        }
        out.write(csv ? s : arr.dump(2) + "\n");
        return 0;
    }
    if (what == "hole") {
        HoleDescriptor h = parse_hole(hole);
        HighReal v = hole_correlations(h);
        if (csv) out.write(csv_line({"hole", "value"}) + csv_line({h.str(), real_str(v, digits)}));
        else out.write(ojson{{"hole", h.str()}, {"value", real_str(v, digits)}}.dump(2) + "\n");
        return 0;
    }
    if (what == "calibration") {
        CalibrationReport c = calibration_check();
        std::vector<std::pair<std::string, std::string>> rows = {
            {"lhs", real_str(c.lhs, digits)},           {"rhs", real_str(c.rhs, digits)},
            {"hartwig", real_str(c.hartwig, digits)},   {"g32_chain", real_str(c.g32_chain, digits)},
            {"g32_closed", real_str(c.g32_closed, digits)}, {"residue", real_str(c.residue, 6)},
            {"ok", c.ok ? "true" : "false"}};
        if (csv) {
            std::string s = csv_line({"quantity", "value"});
            for (auto& [k, v] : rows) s += csv_line({k, v});
            out.write(s);
        } else {
            ojson j;
            for (auto& [k, v] : rows) j[k] = v;
            out.write(j.dump(2) + "\n");
        }
        return c.ok ? 0 : 2;
    }
    if (what == "bootstrap") {
        GHalfBootstrap g = g_half_bootstrap();
        std::vector<std::pair<std::string, std::string>> rows = {{"leading", real_str(g.leading, digits)},
                                                                 {"g_half", real_str(g.g_half, digits)},
                                                                 {"g_half_closed", real_str(g.g_half_ref, digits)},
                                                                 {"rel_error", real_str(g.rel_error, 6)},
                                                                 {"method", g.method}};
        if (csv) {
            std::string s = csv_line({"quantity", "value"});
            for (auto& [k, v] : rows) s += csv_line({k, v});
            out.write(s);
        } else {
            ojson j;
            for (auto& [k, v] : rows) j[k] = v;
            out.write(j.dump(2) + "\n");
        }
        return 0;
    }
    throw VariantParameterError("unknown --what '" + what + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tilescope: exact lozenge tiling counts for hexagons with a core and satellites"};
    app.require_subcommand(1);
    app.fallthrough();
    int precision = 0;
    app.add_option("--precision", precision, "decimal digits for real arithmetic (default: TILESCOPE_PRECISION or 64)");

    // count
    auto* count = app.add_subcommand("count", "count tilings of one region");
    std::string region, method = "oracle";
    long d = 1;
    int cap = kDefaultCellCap;
    Output count_out;
    count->add_option("region", region, "region spec, e.g. s:2,0,1,1 or sgeneral:... or a JSON object")->required();
    std::vector<std::string> all_methods = kMethods;
    all_methods.push_back("all");
    count->add_option("--method", method, "counting method")->check(CLI::IsMember(all_methods));
    count->add_option("--d", d, "free shift in the Gelfand-type determinants");
    count->add_option("--cell-cap", cap, "largest region the oracle accepts");
    add_output_options(count, count_out);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    SweepSpec sweep;
    std::vector<std::string> ranges;
    std::string cache;
    bool no_timings = false, list = false;
    Output verify_out;
    verify->add_option("--suite", sweep.suite, "suite name");
    verify->add_option("--range", ranges, "override a parameter range: name=lo:hi[:step]");
    verify->add_option("--cell-cap", sweep.cell_cap, "oracle cell cap");
    verify->add_option("--time-budget-ms", sweep.time_budget_ms, "stop computing after this many ms (0 = none)");
    verify->add_option("--jobs", sweep.jobs, "worker threads");
    verify->add_option("--cache", cache, "append records to this JSON-lines file");
    verify->add_flag("--no-timings", no_timings, "write 0 in the ms column (byte-stable reports)");
    verify->add_flag("--list", list, "list suites and exit");
    add_output_options(verify, verify_out);
    verify_out.format = "csv";

    // interp
    auto* interp = app.add_subcommand("interp", "reconstruct M(S_{2n,2a,b,k}) as a polynomial in a");
    long in = 1, ib = 0, ik = 0;
    std::string evaluator = "evenodd";
    Output interp_out;
    interp->add_option("--n", in)->required();
    interp->add_option("--b", ib)->required();
    interp->add_option("--k", ik)->required();
    interp->add_option("--evaluator", evaluator)->check(CLI::IsMember({"evenodd", "reduced", "factorized"}));
    add_output_options(interp, interp_out);

    // asymptotics
    auto* asym = app.add_subcommand("asymptotics", "correlations and their asymptotics");
    std::string what = "omega", hole;
    long aa = 0, ab = 0;
    std::vector<long> ks;
    Output asym_out;
    asym->add_option("--what", what)->check(CLI::IsMember({"omega", "omega-r", "hole", "calibration", "convergence", "bootstrap"}));
    asym->add_option("--a", aa, "core size (even)");
    asym->add_option("--b", ab, "satellite size");
    asym->add_option("--k", ks, "gap parameters")->delimiter(',');
    asym->add_option("--hole", hole, "triangle:k | bowtie:a,a' | shamrock:a,b,c,m | fern:a1,... | triad:a,b,c,a',b',c',k");
    add_output_options(asym, asym_out);
    asym_out.format = "csv";

    CLI11_PARSE(app, argc, argv);

    try {
        unsigned digits = precision > 0 ? unsigned(precision) : env_precision();
        set_precision(digits);
        sweep.precision = digits;
        if (*count) return run_count(region, method, d, cap, count_out);
        if (*verify) {
            if (list || sweep.suite.empty()) {
                for (const auto& s : suite_registry()) {
                    std::cout << s.name << "  " << s.description << "\n    defaults:";
                    for (const auto& [n, r] : s.defaults) std::cout << " " << n << "=" << r.lo << ":" << r.hi << ":" << r.step;
                    std::cout << "\n";
                }
                return sweep.suite.empty() && !list ? 1 : 0;
            }
            return run_verify(sweep, ranges, cache, !no_timings, verify_out);
        }
        if (*interp) return run_interp(in, ib, ik, evaluator, interp_out);
        if (*asym) return run_asymptotics(what, aa, ab, ks, hole, int(std::min(digits, 40u)), asym_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
