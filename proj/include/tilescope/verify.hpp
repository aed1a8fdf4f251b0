#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tilescope/asymptotics.hpp"
#include "tilescope/determinants.hpp"
#include "tilescope/errors.hpp"
#include "tilescope/exact.hpp"
#include "tilescope/formulas.hpp"
#include "tilescope/oracle.hpp"
#include "tilescope/region.hpp"

namespace tilescope {

inline constexpr const char* kCodeVersion = "1.0.0";

struct Range {
    long lo = 0, hi = -1, step = 1;

    std::vector<long> values() const {
        std::vector<long> v;
        if (step <= 0) throw VariantParameterError("range step must be positive");
        for (long x = lo; x <= hi; x += step) v.push_back(x);
        return v;
    }
};

// "3", "0:4", "0:6:2"
inline Range parse_range(const std::string& s) {
    std::vector<long> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) {
        size_t used = 0;
        try {
            parts.push_back(std::stol(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw VariantParameterError("bad range '" + s + "'");
    }
    if (parts.size() == 1) return {parts[0], parts[0], 1};
    if (parts.size() == 2) return {parts[0], parts[1], 1};
    if (parts.size() == 3 && parts[2] > 0) return {parts[0], parts[1], parts[2]};
    throw VariantParameterError("bad range '" + s + "' (lo:hi[:step] with step > 0)");
}

struct SweepSpec {
    std::string suite;
    std::vector<std::pair<std::string, Range>> ranges;  // overrides of the suite defaults
    int cell_cap = kDefaultCellCap;
    long time_budget_ms = 0;  // 0: unlimited
    unsigned jobs = 1;
    unsigned precision = kDefaultDigits;

    SweepSpec& set(const std::string& name, Range r) {
        for (auto& [n, v] : ranges)
            if (n == name) {
                v = r;
                return *this;
            }
        ranges.emplace_back(name, r);
        return *this;
    }
};

enum class ValueKind { value, skip, resource, error };

struct MethodValue {
    std::string method;
    std::string value;
    ValueKind kind = ValueKind::value;
};

struct VerificationRecord {
    std::string suite;
    std::vector<std::pair<std::string, long>> params;
    std::vector<MethodValue> values;
    bool agree = false;
    std::string status;  // agree | disagree | skipped | resource | error
    std::string reason;
    std::string labels;  // proved / conjectured
    long ms = 0;

    long param(const std::string& name) const {
        for (auto& [n, v] : params)
            if (n == name) return v;
        throw VariantParameterError("record has no parameter " + name);
    }
    const MethodValue* value_of(const std::string& method) const {
        for (auto& v : values)
            if (v.method == method) return &v;
        return nullptr;
    }
};

// ---------------------------------------------------------------- suites

struct SuiteContext {
    int cell_cap;
};

using Params = std::vector<long>;

struct SuiteOutcome {
    std::vector<MethodValue> values;
    std::string labels = "proved";
    double rel_tol = 0;  // 0: exact string equality
    std::string skip;    // tuple is not a valid instance
};

struct SuiteDef {
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, Range>> defaults;
    std::function<SuiteOutcome(const Params&, const SuiteContext&)> run;
};

namespace detail {

template <class F>
MethodValue eval_method(const std::string& name, F&& f) {
    try {
        return {name, f(), ValueKind::value};
    } catch (const RegionTooLarge& e) {
        return {name, e.what(), ValueKind::resource};
    } catch (const GeometryViolation& e) {
        return {name, e.what(), ValueKind::skip};
    } catch (const ParityError& e) {
        return {name, e.what(), ValueKind::skip};
    } catch (const VariantParameterError& e) {
        return {name, e.what(), ValueKind::skip};
    } catch (const NotSymmetric& e) {
        return {name, e.what(), ValueKind::skip};
    } catch (const std::exception& e) {
        return {name, e.what(), ValueKind::error};
    }
}

// Validates the region first so invalid tuples are skipped rather than failed.
inline std::string region_skip(const RegionSpec& s) {
    try {
        build_region(s);
        return {};
    } catch (const std::exception& e) {
        return e.what();
    }
}

inline std::string oracle_value(const RegionSpec& s, int cap) { return count_tilings(build_region(s), cap).get_str(); }

inline std::string real_str(const HighReal& x) {
    std::ostringstream os;
    os.precision(40);
    os << x;
    return os.str();
}

inline bool all_even(long x, long y = 0, long z = 0) { return x % 2 == 0 && y % 2 == 0 && z % 2 == 0; }

}  // namespace detail

inline std::vector<SuiteDef> suite_registry();

struct PolyReconstruction {
    long degree = -1;
    Rational leading;
    RationalPoly poly;
};

enum class PolyEvaluator { evenodd, reduced, factorized };

// Samples M(S_{2n,2a,b,k}) at a = 0..D+2 and interpolates exactly.
inline PolyReconstruction poly_reconstruct(long n, long b, long k, PolyEvaluator ev = PolyEvaluator::evenodd) {
    if (b % 2 != 0) throw ParityError("poly_reconstruct requires even b");
    const long D = leading_degree(n, b, k);
    std::vector<std::pair<Rational, Rational>> pts;
    for (long a = 0; a <= D + 2; ++a) {
        RegionSpec s = RegionSpec::s(2 * n, 2 * a, b, k);
        BigInt m;
        switch (ev) {
            case PolyEvaluator::evenodd: m = count_via_determinant(MatrixVariant::of(MatrixKind::EvenOddAB, s)); break;
            case PolyEvaluator::reduced: m = count_via_determinant(MatrixVariant::of(MatrixKind::Reduced, s)); break;
            case PolyEvaluator::factorized: m = factorized_count(2 * n, 2 * a, b, k).count; break;
        }
        pts.emplace_back(Rational(a), Rational(m));
    }
    PolyReconstruction r;
    r.poly = interpolate(pts);
    r.degree = r.poly.degree();
    r.leading = r.degree >= 0 ? r.poly.coeffs[size_t(r.degree)] : Rational(0);
    return r;
}

inline std::vector<SuiteDef> suite_registry() {
    using detail::eval_method;
    std::vector<SuiteDef> v;

    v.push_back({"oracle-vs-evenodd",
                 "S(n,a,b,k): oracle count against the (A|B') determinant",
                 {{"n", {1, 2, 1}}, {"a", {0, 2, 2}}, {"b", {0, 2, 1}}, {"k", {0, 1, 1}}},
                 [](const Params& p, const SuiteContext& c) {
                     SuiteOutcome o;
                     RegionSpec s = RegionSpec::s(p[0], p[1], p[2], p[3]);
                     o.skip = detail::region_skip(s);
                     if (!o.skip.empty()) return o;
                     o.values.push_back(eval_method("oracle", [&] { return detail::oracle_value(s, c.cell_cap); }));
                     o.values.push_back(eval_method("evenodd", [&] {
                         return count_via_determinant(MatrixVariant::of(MatrixKind::EvenOddAB, s)).get_str();
                     }));
                     return o;
                 }});

    v.push_back({"oracle-vs-determinant",
                 "SGeneral: oracle against GeneralEvenB and Reduced (even b) and EvenOddAB (k2 = k3)",
                 {{"n1", {0, 3, 1}},
                  {"n2", {0, 3, 1}},
                  {"n3", {0, 3, 1}},
                  {"a", {0, 2, 2}},
                  {"b1", {0, 2, 1}},
                  {"b2", {0, 2, 1}},
                  {"b3", {0, 2, 1}},
                  {"k1", {0, 2, 1}},
                  {"k2", {0, 2, 1}},
                  {"k3", {0, 2, 1}}},
                 [](const Params& p, const SuiteContext& c) {
                     SuiteOutcome o;
                     RegionSpec s = RegionSpec::sgeneral(p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[8], p[9]);
                     o.skip = detail::region_skip(s);
                     if (!o.skip.empty()) return o;
                     bool even_b = detail::all_even(p[4], p[5], p[6]);
                     bool k23 = p[8] == p[9];
                     if (!even_b && !k23) {
                         o.skip = "no determinant applies (odd b with k2 != k3)";
                         return o;
                     }
                     if (long(build_region(s).cells.size()) > c.cell_cap) {
                         o.skip = "region exceeds the cell cap";
                         return o;
                     }
                     o.values.push_back(eval_method("oracle", [&] { return detail::oracle_value(s, c.cell_cap); }));
                     if (even_b) {
                         o.values.push_back(eval_method("evenb", [&] {
                             return count_via_determinant(MatrixVariant::of(MatrixKind::GeneralEvenB, s)).get_str();
                         }));
                         o.values.push_back(eval_method("reduced", [&] {
                             return count_via_determinant(MatrixVariant::of(MatrixKind::Reduced, s)).get_str();
                         }));
                     }
                     if (k23)
                         o.values.push_back(eval_method("evenodd", [&] {
                             return count_via_determinant(MatrixVariant::of(MatrixKind::EvenOddAB, s)).get_str();
                         }));
                     return o;
                 }});

    v.push_back({"newtheo",
                 "cored hexagon: product formula against the Cored determinant and the oracle",
                 {{"n1", {0, 4, 1}}, {"n2", {0, 4, 1}}, {"n3", {0, 4, 1}}, {"a", {0, 6, 1}}},
                 [](const Params& p, const SuiteContext& c) {
                     SuiteOutcome o;
                     if (!(p[0] <= p[1] && p[1] <= p[2])) {
                         o.skip = "suite covers n1 <= n2 <= n3 only";
                         return o;
                     }
                     if (p[2] > p[0] + p[1]) {
                         o.skip = "n3 > n1 + n2";
                         return o;
                     }
                     RegionSpec s = RegionSpec::sgeneral(p[0], p[1], p[2], p[3], 0, 0, 0, 0, 0, 0);
                     o.skip = detail::region_skip(s);
                     if (!o.skip.empty()) return o;
                     o.values.push_back(eval_method("newtheo", [&] { return newtheo_count(p[0], p[1], p[2], p[3]).count().get_str(); }));
                     o.values.push_back(eval_method("cored", [&] {
                         return BigInt(abs(det_exact(cored_matrix(p[0], p[1], p[2], BigInt(p[3]))))).get_str();
                     }));
                     o.values.push_back(eval_method("oracle", [&] { return detail::oracle_value(s, c.cell_cap); }));
                     return o;
                 }});

    v.push_back({"mr",
                 "M_r(S_{2n,2a,b,k}): closed form against the invariant-tiling oracle",
                 {{"n", {1, 4, 1}}, {"a", {0, 3, 1}}, {"b", {0, 4, 1}}, {"k", {0, 4, 1}}},
                 [](const Params& p, const SuiteContext& c) {
                     SuiteOutcome o;
                     RegionSpec s = RegionSpec::s(2 * p[0], 2 * p[1], p[2], p[3]);
                     o.skip = detail::region_skip(s);
                     if (!o.skip.empty()) return o;
                     if (long(build_region(s).cells.size()) > c.cell_cap) {
                         o.skip = "region exceeds the cell cap";
                         return o;
                     }
                     o.values.push_back(eval_method("closed", [&] { return mr_closed_form(p[0], p[1], p[2], p[3]).count().get_str(); }));
                     o.values.push_back(eval_method("oracle", [&] {
                         return count_invariant_tilings(build_region(s), c.cell_cap).get_str();
                     }));
                     return o;
                 }});

    v.push_back({"conjecture1",
                 "S(n,a,b,k), even n: conjectured product against the (A|B') determinant",
                 {{"n", {2, 6, 2}}, {"a", {0, 2, 2}}, {"b", {0, 2, 1}}, {"k", {0, 3, 1}}},
                 [](const Params& p, const SuiteContext&) {
                     SuiteOutcome o;
                     o.labels = "conjectured";
                     if (2 * p[3] > p[0]) {
                         o.skip = "k > n/2";
                         return o;
                     }
                     RegionSpec s = RegionSpec::s(p[0], p[1], p[2], p[3]);
                     o.skip = detail::region_skip(s);
                     if (!o.skip.empty()) return o;
                     o.values.push_back(eval_method("conjectured", [&] { return conjectured_count(p[0], p[1], p[2], p[3]).count().get_str(); }));
                     o.values.push_back(eval_method("evenodd", [&] {
                         return count_via_determinant(MatrixVariant::of(MatrixKind::EvenOddAB, s)).get_str();
                     }));
                     return o;
                 }});

    v.push_back({"factorized",
                 "S(n,a,b,k), even a and b: Eisenstein factorization against (A|B') and the oracle",
                 {{"n", {1, 6, 1}}, {"a", {0, 2, 2}}, {"b", {0, 2, 2}}, {"k", {0, 3, 1}}},
                 [](const Params& p, const SuiteContext& c) {
                     SuiteOutcome o;
                     RegionSpec s = RegionSpec::s(p[0], p[1], p[2], p[3]);
                     o.skip = detail::region_skip(s);
                     if (!o.skip.empty()) return o;
                     o.values.push_back(eval_method("factorized", [&] { return factorized_count(p[0], p[1], p[2], p[3]).count.get_str(); }));
                     o.values.push_back(eval_method("evenodd", [&] {
                         return count_via_determinant(MatrixVariant::of(MatrixKind::EvenOddAB, s)).get_str();
                     }));
                     o.values.push_back(eval_method("oracle", [&] { return detail::oracle_value(s, c.cell_cap); }));
                     return o;
                 }});

    v.push_back({"conjecture2",
                 "S(n,a,b,k): conjectured M/M_r^3 against determinant counts",
                 {{"n", {1, 4, 1}}, {"a", {0, 2, 2}}, {"b", {0, 2, 1}}, {"k", {0, 2, 1}}},
                 [](const Params& p, const SuiteContext& c) {
                     SuiteOutcome o;
                     o.labels = "conjectured";
                     o.rel_tol = 1e-25;
                     RegionSpec s = RegionSpec::s(p[0], p[1], p[2], p[3]);
                     o.skip = detail::region_skip(s);
                     if (!o.skip.empty()) return o;
                     o.values.push_back(eval_method("conjecture2", [&] {
                         MixedValue v = conjecture2_ratio(p[0], p[1], p[2], p[3]);
                         return v.exact ? v.q.get_str() : detail::real_str(v.r);
                     }));
                     o.values.push_back(eval_method("determinant", [&] {
                         BigInt m = count_via_determinant(MatrixVariant::of(MatrixKind::EvenOddAB, s));
                         BigInt mr = detail::all_even(p[1], p[2]) ? factorized_count(p[0], p[1], p[2], p[3]).mr_part
                                                                  : count_invariant_tilings(build_region(s), c.cell_cap);
                         if (mr == 0) throw DivisionByZero("M_r vanishes");
                         Rational q = Rational(m) / Rational(mr * mr * mr);
                         return q.get_str();
                     }));
                     return o;
                 }});

    v.push_back({"interp",
                 "M(S_{2n,2a,b,k}) as a polynomial in a: degree and leading coefficient",
                 {{"n", {1, 2, 1}}, {"b", {0, 2, 2}}, {"k", {0, 1, 1}}},
                 [](const Params& p, const SuiteContext&) {
                     SuiteOutcome o;
                     if (p[2] > p[0]) {
                         o.skip = "k > n";
                         return o;
                     }
                     o.values.push_back(eval_method("formula", [&] {
                         return std::to_string(leading_degree(p[0], p[1], p[2])) + ":" +
                                leading_coefficient(p[0], p[1], p[2]).get_str();
                     }));
                     o.values.push_back(eval_method("interpolated", [&] {
                         PolyReconstruction r = poly_reconstruct(p[0], p[1], p[2]);
                         return std::to_string(r.degree) + ":" + r.leading.get_str();
                     }));
                     return o;
                 }});
    return v;
}

inline const SuiteDef& find_suite(const std::string& name) {
    static const std::vector<SuiteDef> reg = suite_registry();
    for (const auto& s : reg)
        if (s.name == name) return s;
    std::string known;
    for (const auto& s : reg) known += (known.empty() ? "" : ", ") + s.name;
    throw VariantParameterError("unknown suite '" + name + "' (known: " + known + ")");
}

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& s : suite_registry()) out.push_back(s.name);
    return out;
}

namespace detail {

inline bool values_agree(const std::vector<const MethodValue*>& vals, double rel_tol) {
    if (vals.size() < 2) return false;
    for (size_t i = 1; i < vals.size(); ++i) {
        if (vals[i]->value == vals[0]->value) continue;
        if (rel_tol <= 0) return false;
        auto as_real = [](const std::string& s) -> HighReal {
            auto slash = s.find('/');
            if (slash != std::string::npos) return to_real(Rational(s));
            return HighReal(s);
        };
        try {
            HighReal x = as_real(vals[0]->value), y = as_real(vals[i]->value);
            HighReal scale = std::max(abs(x), abs(y));
            if (scale == 0) continue;
            if (abs(x - y) / scale > HighReal(rel_tol)) return false;
        } catch (...) {
            return false;
        }
    }
    return true;
}

inline void finish_record(VerificationRecord& r, const SuiteOutcome& o) {
    r.values = o.values;
    r.labels = o.labels;
    if (!o.skip.empty()) {
        r.status = "skipped";
        r.reason = o.skip;
        r.values.clear();
        return;
    }
    std::vector<const MethodValue*> vals;
    bool resource = false, error = false, skip = false;
    std::string why;
    for (const auto& v : r.values) {
        switch (v.kind) {
            case ValueKind::value: vals.push_back(&v); break;
            case ValueKind::resource: resource = true; why = v.method + ": " + v.value; break;
            case ValueKind::error: error = true; why = v.method + ": " + v.value; break;
            case ValueKind::skip: skip = true; why = v.method + ": " + v.value; break;
        }
    }
    bool same = vals.size() < 2 || values_agree(vals, o.rel_tol);
    r.agree = vals.size() >= 2 && same && !error;
    r.reason = why;
    if (error) r.status = "error";
    else if (!same) r.status = "disagree";
    else if (resource) r.status = "resource";
    else if (skip) r.status = vals.size() >= 2 ? "agree" : "skipped";
    else r.status = r.agree ? "agree" : "skipped";
}

}  // namespace detail

inline std::vector<Params> suite_tuples(const SuiteDef& def, const SweepSpec& spec) {
    std::vector<std::vector<long>> axes;
    for (const auto& [name, dflt] : def.defaults) {
        Range r = dflt;
        for (const auto& [n, v] : spec.ranges)
            if (n == name) r = v;
        axes.push_back(r.values());
    }
    for (const auto& [n, v] : spec.ranges) {
        bool known = false;
        for (const auto& [name, d] : def.defaults) known |= name == n;
        if (!known) throw VariantParameterError("suite " + def.name + " has no parameter '" + n + "'");
    }
    std::vector<Params> out;
    Params cur(axes.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == axes.size()) {
            out.push_back(cur);
            return;
        }
        for (long x : axes[i]) {
            cur[i] = x;
            rec(i + 1);
        }
    };
    if (!axes.empty()) rec(0);
    return out;
}

inline std::vector<VerificationRecord> run_suite(const SweepSpec& spec) {
    const SuiteDef& def = find_suite(spec.suite);
    std::vector<Params> tuples = suite_tuples(def, spec);
    std::vector<VerificationRecord> out(tuples.size());
    SuiteContext ctx{spec.cell_cap};
    const auto start = std::chrono::steady_clock::now();
    std::atomic<size_t> next{0};

    auto worker = [&] {
        PrecisionGuard guard(spec.precision);
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tuples.size()) return;
            VerificationRecord& r = out[i];
            r.suite = def.name;
            for (size_t j = 0; j < tuples[i].size(); ++j) r.params.emplace_back(def.defaults[j].first, tuples[i][j]);
            auto t0 = std::chrono::steady_clock::now();
            long elapsed = long(std::chrono::duration_cast<std::chrono::milliseconds>(t0 - start).count());
            if (spec.time_budget_ms > 0 && elapsed > spec.time_budget_ms) {
                r.status = "resource";
                r.reason = "time budget exhausted";
                continue;
            }
            SuiteOutcome o;
            try {
                o = def.run(tuples[i], ctx);
            } catch (const std::exception& e) {
                o.values = {{"suite", e.what(), ValueKind::error}};
            }
            detail::finish_record(r, o);
            r.ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
        }
    };
    unsigned jobs = std::max(1u, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

// 0 = all agree, 2 = disagreements or errors, 3 = no disagreement but resource skips.
inline int suite_exit_code(const std::vector<VerificationRecord>& recs) {
    bool resource = false;
    for (const auto& r : recs) {
        if (r.status == "disagree" || r.status == "error") return 2;
        if (r.status == "resource") resource = true;
    }
    return resource ? 3 : 0;
}

// ---------------------------------------------------------------- persistence

using ojson = nlohmann::ordered_json;

inline const char* value_kind_name(ValueKind k) {
    switch (k) {
        case ValueKind::value: return "value";
        case ValueKind::skip: return "skip";
        case ValueKind::resource: return "resource";
        case ValueKind::error: return "error";
    }
    return "?";
}

inline ValueKind value_kind_from(const std::string& s) {
    if (s == "value") return ValueKind::value;
    if (s == "skip") return ValueKind::skip;
    if (s == "resource") return ValueKind::resource;
    if (s == "error") return ValueKind::error;
    throw VariantParameterError("unknown value kind '" + s + "'");
}

inline std::string record_key(const VerificationRecord& r, const std::string& version = kCodeVersion) {
    std::string k = r.suite + "|";
    for (auto& [n, v] : r.params) k += n + "=" + std::to_string(v) + ",";
    k += "|";
    for (auto& v : r.values) k += v.method + ",";
    return k + "|" + version;
}

inline ojson record_to_json(const VerificationRecord& r, bool timings = true) {
    ojson j;
    j["suite"] = r.suite;
    ojson p = ojson::object();
    for (auto& [n, v] : r.params) p[n] = v;
    j["params"] = p;
    ojson vals = ojson::array();
    for (auto& v : r.values) vals.push_back({{"method", v.method}, {"value", v.value}, {"kind", value_kind_name(v.kind)}});
    j["values"] = vals;
    j["agree"] = r.agree;
    j["status"] = r.status;
    j["reason"] = r.reason;
    j["labels"] = r.labels;
    j["ms"] = timings ? r.ms : 0;
    return j;
}

inline VerificationRecord record_from_json(const ojson& j) {
    VerificationRecord r;
    r.suite = j.at("suite").get<std::string>();
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) r.params.emplace_back(it.key(), it.value().get<long>());
    for (const auto& v : j.at("values"))
        r.values.push_back({v.at("method").get<std::string>(), v.at("value").get<std::string>(),
                            value_kind_from(v.at("kind").get<std::string>())});
    r.agree = j.at("agree").get<bool>();
    r.status = j.at("status").get<std::string>();
    r.reason = j.value("reason", "");
    r.labels = j.value("labels", "");
    r.ms = j.value("ms", 0L);
    return r;
}

// Appends records as JSON lines, each tagged with its cache key.
inline void cache_store(const std::string& path, const std::vector<VerificationRecord>& recs,
                        const std::string& version = kCodeVersion) {
    std::ofstream f(path, std::ios::app);
    if (!f) throw std::runtime_error("cannot open cache file " + path);
    for (const auto& r : recs) {
        ojson j;
        j["key"] = record_key(r, version);
        j["version"] = version;
        j["record"] = record_to_json(r);
        f << j.dump() << '\n';
    }
}

// Loads a cache file; later lines win on duplicate keys, corrupt lines are skipped with a warning.
inline std::vector<VerificationRecord> cache_load(const std::string& path, std::ostream* warn = &std::cerr) {
    std::ifstream f(path);
    std::vector<VerificationRecord> out;
    if (!f) return out;
    std::map<std::string, size_t> where;
    std::string line;
    long lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            ojson j = ojson::parse(line);
            std::string key = j.at("key").get<std::string>();
            VerificationRecord r = record_from_json(j.at("record"));
            auto it = where.find(key);
            if (it == where.end()) {
                where[key] = out.size();
                out.push_back(std::move(r));
            } else {
                out[it->second] = std::move(r);
            }
        } catch (const std::exception& e) {
            if (warn) *warn << "warning: " << path << ":" << lineno << ": skipping corrupt cache line (" << e.what() << ")\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------- reports

enum class ReportFormat { json, csv };

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

template <class Get>
void collect_names(const std::vector<VerificationRecord>& recs, std::vector<std::string>& names, Get&& get) {
    for (const auto& r : recs)
        for (const auto& n : get(r))
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
}

}  // namespace detail

// Column order: suite, params..., methods..., agree, status, ms.
inline std::string emit_report(const std::vector<VerificationRecord>& recs, ReportFormat fmt, bool timings = true) {
    if (fmt == ReportFormat::json) {
        ojson arr = ojson::array();
        for (const auto& r : recs) arr.push_back(record_to_json(r, timings));
        return arr.dump(2) + "\n";
    }
    std::vector<std::string> pnames, mnames;
    detail::collect_names(recs, pnames, [](const VerificationRecord& r) {
        std::vector<std::string> v;
        for (auto& p : r.params) v.push_back(p.first);
        return v;
    });
    detail::collect_names(recs, mnames, [](const VerificationRecord& r) {
        std::vector<std::string> v;
        for (auto& m : r.values) v.push_back(m.method);
        return v;
    });
    std::ostringstream os;
    std::vector<std::string> header{"suite"};
    header.insert(header.end(), pnames.begin(), pnames.end());
    header.insert(header.end(), mnames.begin(), mnames.end());
    for (const char* c : {"agree", "status", "ms"}) header.emplace_back(c);
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << detail::csv_field(header[i]);
    os << "\r\n";
    for (const auto& r : recs) {
        std::vector<std::string> row{r.suite};
        for (const auto& pn : pnames) {
            std::string cell;
            for (auto& [n, v] : r.params)
                if (n == pn) cell = std::to_string(v);
            row.push_back(cell);
        }
        for (const auto& mn : mnames) {
            const MethodValue* mv = r.value_of(mn);
            if (!mv) row.emplace_back();
            else if (mv->kind == ValueKind::value) row.push_back(mv->value);
            else row.push_back(std::string(value_kind_name(mv->kind)) + ": " + mv->value);
        }
        row.push_back(r.agree ? "true" : "false");
        row.push_back(r.status);
        row.push_back(std::to_string(timings ? r.ms : 0));
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(row[i]);
        os << "\r\n";
    }
    return os.str();
}

}  // namespace tilescope
