#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tilescope/errors.hpp"
#include "tilescope/exact.hpp"
#include "tilescope/formulas.hpp"
#include "tilescope/highreal.hpp"

namespace tilescope {

enum class CorrelationKind { finite_k, asymptotic };

struct CorrelationValue {
    std::optional<Rational> exact;
    HighReal real;
    CorrelationKind kind = CorrelationKind::finite_k;
    FormulaStatus status = FormulaStatus::proved;
    std::string label;

    static CorrelationValue of(const Rational& q, std::string label, FormulaStatus s = FormulaStatus::proved) {
        return {q, to_real(q), CorrelationKind::finite_k, s, std::move(label)};
    }
    static CorrelationValue of(const HighReal& x, std::string label, FormulaStatus s = FormulaStatus::proved,
                               CorrelationKind k = CorrelationKind::finite_k) {
        return {std::nullopt, x, k, s, std::move(label)};
    }
    bool is_exact() const { return exact.has_value(); }
    std::string str(int digits = 30) const {
        if (exact) return exact->get_str();
        std::ostringstream os;
        os.precision(digits);
        os << real;
        return os.str();
    }
};

namespace detail {

inline HighReal rpow(const HighReal& base, const Rational& e) { return pow(base, to_real(e)); }

// (x)_n in reals; Gamma quotient when both ends are positive, exact product otherwise.
inline HighReal poch_r(const Rational& x, long n) {
    if (x > 0 && x + n > 0 && (n > 24 || n < -24)) return gamma(x + n) / gamma(x);
    return to_real(pochhammer(x, n));
}

inline void require_even_core(long a) {
    if (a % 2 != 0) throw ParityError("the core size a must be even, got " + std::to_string(a));
}

inline void require_non_negative(long a, long b, long k) {
    if (a < 0 || b < 0 || k < 0) throw GeometryViolation("a, b, k must be non-negative");
}

}  // namespace detail

// Exact omega_r for even b: the n -> infinity limit of M_r(k)/M_r(0).
inline Rational omega_r_even_b(long a, long b, long k) {
    detail::require_even_core(a);
    detail::require_non_negative(a, b, k);
    if (b % 2 != 0) throw ParityError("omega_r_even_b requires even b");
    const Rational qa = make_rational(a, 4), ha = make_rational(a, 2);
    Rational r = pochhammer(qa + make_rational(3 * k, 2) + make_rational(1, 2), b / 2) /
                 pochhammer(qa + make_rational(1, 2), b / 2);
    for (long i = 1; i <= b / 2; ++i) {
        const Rational x = ha + 3 * i - 1;
        Rational pk = pochhammer(Rational(i), k);
        Rational t = pochhammer(x, k - i) * pochhammer(x, k - i + 1) / (pochhammer(x, -i) * pochhammer(x, -i + 1));
        Rational u = pochhammer(ha + 3 * k + 2 * i, i - 1) / pochhammer(ha + 2 * i, i - 1);
        r *= t * u * u / (pk * pk);
    }
    return r;
}

// Odd b: product of the two limit quotients of the Lai-Rohatgi F1, F2 families.
inline HighReal omega_r_odd_b(long a, long b, long k) {
    detail::require_even_core(a);
    detail::require_non_negative(a, b, k);
    if (b % 2 == 0) throw ParityError("omega_r_odd_b requires odd b");
    using detail::poch_r;
    const Rational ha = make_rational(a, 2), qa = make_rational(a, 4);
    const Rational hb = make_rational(b, 2);

    auto gamma_tail = [&](bool first) -> HighReal {
        HighReal p = 1;
        for (long i = 1; i <= k; ++i) {
            HighReal t = gamma(hb + i + make_rational(3, 2)) / gamma(Rational(i) + make_rational(3, 2));
            Rational top = ha + make_rational(3 * b, 2) + 3 * i - 1;
            t *= gamma(top);
            t /= first ? gamma(ha + make_rational(3 * b, 2) + 3 * i - make_rational(5, 2))
                       : gamma(ha + b + k + 2 * i - 1);
            t /= poch_r(Rational(i), (b + 3) / 2) * poch_r(Rational(i) + make_rational(3, 2), (b - 3) / 2);
            p *= t;
        }
        return p;
    };

    HighReal f1 = 1 / (pow(HighReal(2), k) * poch_r(qa + hb + make_rational(k, 2) + make_rational(1, 2), k));
    for (long i = 1; i <= (b + 1) / 6; ++i) {
        long len = 3 * (b + 1) / 2 - 9 * i + 1;
        f1 *= poch_r(ha + 3 * k + 6 * i - 2, len) / poch_r(ha + 6 * i - 2, len);
    }
    for (long i = 1; i <= (b - 1) / 6; ++i) f1 *= to_real((ha + 6 * i - 1) / (ha + 6 * i + 3 * k - 1));
    for (long i = 1; i <= (b - 1) / 2; ++i) {
        Rational x = ha + 3 * i - 1;
        f1 *= poch_r(x, k - i + 1) / poch_r(x, -i + 1);
    }
    f1 *= gamma_tail(true);

    HighReal f2 = 1;
    for (long i = 1; i <= (k + 1) / 3; ++i) f2 *= poch_r(ha + 3 * i - 1, 3 * k - 9 * i + 4);
    for (long i = 1; i <= k / 3; ++i) f2 /= to_real(ha + 3 * k - 6 * i + 1);
    f2 *= gamma_tail(false);
    return f1 * f2;
}

inline CorrelationValue omega_r_finite(long a, long b, long k) {
    detail::require_even_core(a);
    std::string lbl = "omega_r(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(k) + ")";
    if (b % 2 == 0) return CorrelationValue::of(omega_r_even_b(a, b, k), lbl);
    return CorrelationValue::of(omega_r_odd_b(a, b, k), lbl);
}

// omega = conjecture1_ratio * omega_r^3 (the ratio already carries its square).
inline CorrelationValue omega_finite(long a, long b, long k) {
    detail::require_even_core(a);
    CorrelationValue r = omega_r_finite(a, b, k);
    Rational c = conjecture1_ratio(a, b, k);
    std::string lbl = "omega(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(k) + ")";
    if (r.exact) return CorrelationValue::of(c * *r.exact * *r.exact * *r.exact, lbl, FormulaStatus::conjectured);
    return CorrelationValue::of(to_real(c) * r.real * r.real * r.real, lbl, FormulaStatus::conjectured);
}

enum class OmegaWhich { omega, omega_r };

inline HighReal omega_asymptotic(long a, long b, long k, OmegaWhich which) {
    detail::require_even_core(a);
    if (k <= 0) throw GeometryViolation("omega_asymptotic needs k > 0");
    const Rational hb = make_rational(b, 2), ha = make_rational(a, 2);
    const HighReal kk(k);
    HighReal g_sat = barnes_g(hb + 1);
    HighReal base = detail::rpow(HighReal(3), make_rational(b * b, 4)) * g_sat * g_sat *
                    detail::rpow(kk, make_rational(b * (a + b), 2));
    HighReal gcore = barnes_g(ha + 1) / barnes_g(ha + make_rational(3 * b, 2) + 1);
    if (which == OmegaWhich::omega) return gcore * gcore * base * base * base;
    const Rational a6 = make_rational(a, 6);
    HighReal q = gamma(a6 + hb + make_rational(1, 3)) / gamma(a6 + hb + make_rational(2, 3)) *
                 gamma(a6 + make_rational(2, 3)) / gamma(a6 + make_rational(1, 3)) / gcore;
    return base / pow(q, HighReal(2) / 3);
}

// k -> infinity limit of conjecture1_ratio, as a ratio of Gamma values (squared like the ratio itself).
inline HighReal conjecture1_ratio_limit(long a, long b) {
    const Rational a6 = make_rational(a, 6), hb = make_rational(b, 2);
    HighReal v = gamma(a6 + make_rational(2, 3)) * gamma(a6 + hb + make_rational(1, 3)) /
                 (gamma(a6 + make_rational(1, 3)) * gamma(a6 + hb + make_rational(2, 3)));
    return v * v;
}

// ---- hole correlations ----

enum class HoleKind { triangle, bowtie, shamrock, fern, triad };

struct HoleDescriptor {
    HoleKind kind = HoleKind::triangle;
    std::vector<long> params;  // triad: a,b,c,a',b',c',k

    std::string str() const {
        static const char* names[] = {"triangle", "bowtie", "shamrock", "fern", "triad"};
        std::string s = names[int(kind)];
        s += "(";
        for (size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
        return s + ")";
    }
};

// Parses "triangle:2", "bowtie:1,2", "shamrock:a,b,c,m", "fern:a1,...", "triad:a,b,c,a',b',c',k".
inline HoleDescriptor parse_hole(const std::string& text) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    HoleDescriptor h;
    if (name == "triangle") h.kind = HoleKind::triangle;
    else if (name == "bowtie") h.kind = HoleKind::bowtie;
    else if (name == "shamrock") h.kind = HoleKind::shamrock;
    else if (name == "fern") h.kind = HoleKind::fern;
    else if (name == "triad") h.kind = HoleKind::triad;
    else throw VariantParameterError("unknown hole kind '" + name + "'");
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) h.params.push_back(std::stol(item));
    }
    static const size_t need[] = {1, 2, 4, 0, 7};
    size_t n = need[int(h.kind)];
    if ((n && h.params.size() != n) || (!n && h.params.empty()))
        throw VariantParameterError("wrong number of parameters for " + name);
    for (long v : h.params)
        if (v < 0) throw GeometryViolation("hole sizes must be non-negative");
    return h;
}

namespace detail {

inline HighReal G1(long n) { return to_real(barnes_int(n + 1)); }  // <n> = G(n+1)

// 3^{s^2/8} (2 pi)^{-s/2} G(s/2+1)^2
inline HighReal charge_factor(long s) {
    HighReal g = barnes_g(make_rational(s, 2) + 1);
    return rpow(HighReal(3), make_rational(s * s, 8)) / rpow(2 * real_pi(), make_rational(s, 2)) * g * g;
}

inline HighReal fern_s(const std::vector<long>& b) {
    long L = long(b.size()) % 2 == 1 ? long(b.size()) : long(b.size()) - 1;
    HighReal r = 1;
    for (long i = 1; i <= L; ++i) {
        long sum = 0;
        for (long j = i; j <= L; ++j) {
            sum += b[j - 1];
            if ((j - i + 1) % 2 == 1) r *= G1(sum);
            else r /= G1(sum);
        }
    }
    long odd = 0;
    for (long i = 1; i <= L; i += 2) odd += b[i - 1];
    return r / G1(odd);
}

}  // namespace detail

inline HighReal triangle_correlation(long k) { return detail::charge_factor(k); }

inline HighReal bowtie_correlation(long a, long ap) {
    return detail::charge_factor(a + ap) * detail::G1(a) * detail::G1(ap) / detail::G1(a + ap);
}

inline HighReal hole_correlations(const HoleDescriptor& h) {
    using detail::G1;
    const auto& p = h.params;
    switch (h.kind) {
        case HoleKind::triangle: return triangle_correlation(p[0]);
        case HoleKind::bowtie: return bowtie_correlation(p[0], p[1]);
        case HoleKind::shamrock: {
            long a = p[0], b = p[1], c = p[2], m = p[3];
            HighReal gm = G1(m);
            return detail::charge_factor(a + b + c + m) * gm * gm * gm * G1(a) * G1(b) * G1(c) /
                   (G1(a + m) * G1(b + m) * G1(c + m));
        }
        case HoleKind::fern: {
            long a = 0, o = 0, e = 0;
            for (size_t i = 0; i < p.size(); ++i) {
                a += p[i];
                (i % 2 == 0 ? o : e) += p[i];
            }
            std::vector<long> tail(p.begin() + 1, p.end());
            return detail::charge_factor(a) * G1(o) * G1(e) / G1(a) * detail::fern_s(p) * detail::fern_s(tail);
        }
        case HoleKind::triad: {
            long a = p[0], b = p[1], c = p[2], ap = p[3], bp = p[4], cp = p[5], k = p[6];
            if (a + ap != b + bp || b + bp != c + cp)
                throw HypothesisViolation("triad correlation needs a+a' = b+b' = c+c'");
            if (a + b + c != ap + bp + cp) throw HypothesisViolation("triad correlation needs a+b+c = a'+b'+c'");
            if (k <= 0) throw GeometryViolation("triad correlation needs k > 0");
            long B = a + ap;
            HighReal one = detail::charge_factor(B) / G1(B);
            HighReal v = one * one * one * G1(a) * G1(ap) * G1(b) * G1(bp) * G1(c) * G1(cp);
            long q = (a - ap) * (b - bp) + (a - ap) * (c - cp) + (b - bp) * (c - cp);
            return v * detail::rpow(HighReal(3 * k), make_rational(-q, 2));
        }
    }
    throw VariantParameterError("unknown hole kind");
}

// ---- calibration against the square lattice ----

struct CalibrationReport {
    HighReal lhs;             // 3^{1/4}/(2 pi) G(3/2)^4
    HighReal rhs;             // 3^{1/4} e^{1/2} / (2^{5/6} A^6)
    HighReal hartwig;         // rhs / 3^{1/4}
    HighReal g32_chain;       // G(1/2) Gamma(1/2)
    HighReal g32_closed;      // 2^{1/24} e^{1/8} pi^{1/4} / A^{3/2}
    HighReal residue;         // |lhs - rhs| / rhs
    bool ok = false;
};

inline CalibrationReport calibration_check() {
    CalibrationReport r;
    const unsigned digits = HighReal::default_precision();
    HighReal pi = real_pi(), A = glaisher();
    HighReal q3 = pow(HighReal(3), HighReal(1) / 4);
    r.g32_chain = barnes_g(make_rational(3, 2));
    r.g32_closed = pow(HighReal(2), HighReal(1) / 24) * exp(HighReal(1) / 8) * pow(pi, HighReal(1) / 4) /
                   pow(A, HighReal(3) / 2);
    HighReal g4 = pow(r.g32_chain, 4);
    r.lhs = q3 / (2 * pi) * g4;
    r.rhs = q3 * exp(HighReal(1) / 2) / (pow(HighReal(2), HighReal(5) / 6) * pow(A, 6));
    r.hartwig = r.rhs / q3;
    r.residue = abs(r.lhs - r.rhs) / r.rhs;
    HighReal tol = pow(HighReal(10), -HighReal(long(digits) - 5));
    r.ok = r.residue < tol && abs(r.g32_chain - r.g32_closed) / r.g32_closed < tol;
    return r;
}

// ---- convergence ----

struct ConvergenceRow {
    long k;
    HighReal finite;
    HighReal asymptotic;
    HighReal ratio;
};

inline std::vector<ConvergenceRow> convergence_table(long a, long b, const std::vector<long>& ks) {
    std::vector<ConvergenceRow> out;
    for (long k : ks) {
        CorrelationValue f = omega_finite(a, b, k);
        HighReal as = omega_asymptotic(a, b, k, OmegaWhich::omega);
        HighReal ratio = f.exact && b == 0 ? HighReal(1) : f.real / as;
        out.push_back({k, f.real, as, ratio});
    }
    return out;
}

// ---- G(1/2) from the a=0, b=1 leading coefficient ----

struct GHalfBootstrap {
    HighReal leading;      // lim omega(0,1,k) / k^{3/2}
    HighReal g_half;       // G(1/2) solved from the identity
    HighReal g_half_ref;   // e^{1/8} 2^{1/24} / (A^{3/2} pi^{1/4})
    HighReal rel_error;
    std::string method;
};

// Richardson extrapolation of omega(0,1,k)/k^{3/2} over k = k0 * 2^j, assuming an expansion in powers of 1/k.
inline HighReal richardson_leading(long k0, int levels) {
    std::vector<HighReal> t;
    for (int j = 0; j < levels; ++j) {
        long k = k0 << j;
        HighReal v = omega_finite(0, 1, k).real / pow(HighReal(k), HighReal(3) / 2);
        t.push_back(v);
    }
    for (int m = 1; m < levels; ++m) {
        HighReal f = pow(HighReal(2), m);
        for (int j = levels - 1; j >= m; --j) t[j] = (f * t[j] - t[j - 1]) / (f - 1);
    }
    return t.back();
}

inline GHalfBootstrap g_half_bootstrap(long k0 = 96, int levels = 6) {
    GHalfBootstrap r;
    HighReal pi = real_pi();
    r.leading = richardson_leading(k0, levels);
    r.method = "richardson(k0=" + std::to_string(k0) + ",levels=" + std::to_string(levels) + ")";
    // omega(0,1,k) ~ 3^{3/4} G(1/2)^4 pi^2 / Gamma(3/2)^2 k^{3/2}
    HighReal g32 = gamma(make_rational(3, 2));
    HighReal g4 = r.leading * g32 * g32 / (pow(HighReal(3), HighReal(3) / 4) * pi * pi);
    r.g_half = pow(g4, HighReal(1) / 4);
    r.g_half_ref = barnes_g_half();
    r.rel_error = abs(r.g_half - r.g_half_ref) / r.g_half_ref;
    return r;
}

}  // namespace tilescope
