#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tilescope/errors.hpp"

namespace tilescope {

// Unit triangle on the triangular lattice. Lattice points are (i, y) in skew
// coordinates (Cartesian x = i + y/2). row = y, col = i.
// up(i,y) has vertices (i,y),(i+1,y),(i,y+1); down(i,y) has (i+1,y),(i,y+1),(i+1,y+1).
struct Cell {
    int row = 0;
    int col = 0;
    bool up = true;

    bool operator==(const Cell& o) const { return row == o.row && col == o.col && up == o.up; }
    bool operator<(const Cell& o) const {
        if (row != o.row) return row < o.row;
        if (col != o.col) return col < o.col;
        return up && !o.up;
    }
    // Three times the centroid, in skew coordinates.
    std::pair<long, long> centroid3() const {
        return up ? std::pair<long, long>{3L * col + 1, 3L * row + 1} : std::pair<long, long>{3L * col + 2, 3L * row + 2};
    }
    static std::optional<Cell> from_centroid3(long X, long Y) {
        long rx = ((X % 3) + 3) % 3, ry = ((Y % 3) + 3) % 3;
        if (rx != ry || rx == 0) return std::nullopt;
        return Cell{int((Y - ry) / 3), int((X - rx) / 3), rx == 1};
    }
};

struct CellHash {
    size_t operator()(const Cell& c) const {
        uint64_t k = (uint64_t(uint32_t(c.row)) << 33) ^ (uint64_t(uint32_t(c.col)) << 1) ^ uint64_t(c.up);
        return std::hash<uint64_t>{}(k);
    }
};

enum class Variant { Hexagon, S, SPrime, SGeneral, Triad, Shamrock, DentedTrapezoid };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Hexagon: return "hexagon";
        case Variant::S: return "s";
        case Variant::SPrime: return "sprime";
        case Variant::SGeneral: return "sgeneral";
        case Variant::Triad: return "triad";
        case Variant::Shamrock: return "shamrock";
        case Variant::DentedTrapezoid: return "dented_trapezoid";
    }
    return "?";
}

inline const std::vector<std::string>& variant_params(Variant v) {
    static const std::map<Variant, std::vector<std::string>> names = {
        {Variant::Hexagon, {"p", "q", "r"}},
        {Variant::S, {"n", "a", "b", "k"}},
        {Variant::SPrime, {"n", "a", "b", "k"}},
        {Variant::SGeneral, {"n1", "n2", "n3", "a", "b1", "b2", "b3", "k1", "k2", "k3"}},
        {Variant::Triad, {"n", "k", "B", "a", "b", "c"}},
        {Variant::Shamrock, {"n1", "n2", "n3", "a", "b", "c", "m"}},
        {Variant::DentedTrapezoid, {"n", "l"}},
    };
    return names.at(v);
}

inline Variant parse_variant(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (ch != '-' && ch != '_') t += char(std::tolower(static_cast<unsigned char>(ch)));
    if (t == "hexagon") return Variant::Hexagon;
    if (t == "s") return Variant::S;
    if (t == "sprime" || t == "s'") return Variant::SPrime;
    if (t == "sgeneral") return Variant::SGeneral;
    if (t == "triad") return Variant::Triad;
    if (t == "shamrock") return Variant::Shamrock;
    if (t == "dentedtrapezoid" || t == "trapezoid") return Variant::DentedTrapezoid;
    throw GeometryViolation("unknown region variant '" + s + "'");
}

struct RegionSpec {
    Variant variant = Variant::Hexagon;
    std::map<std::string, long> params;
    std::vector<std::pair<long, long>> removed;  // DentedTrapezoid: (row, position), both from 1

    long get(const std::string& name) const {
        auto it = params.find(name);
        if (it == params.end()) throw GeometryViolation(std::string(variant_name(variant)) + ": missing parameter " + name);
        return it->second;
    }

    static RegionSpec make(Variant v, std::initializer_list<long> values) {
        RegionSpec s;
        s.variant = v;
        const auto& names = variant_params(v);
        size_t i = 0;
        for (long x : values) s.params[names.at(i++)] = x;
        return s;
    }
    static RegionSpec hexagon(long p, long q, long r) { return make(Variant::Hexagon, {p, q, r}); }
    static RegionSpec s(long n, long a, long b, long k) { return make(Variant::S, {n, a, b, k}); }
    static RegionSpec sprime(long n, long a, long b, long k) { return make(Variant::SPrime, {n, a, b, k}); }
    static RegionSpec sgeneral(long n1, long n2, long n3, long a, long b1, long b2, long b3, long k1, long k2, long k3) {
        return make(Variant::SGeneral, {n1, n2, n3, a, b1, b2, b3, k1, k2, k3});
    }
    static RegionSpec triad(long n, long k, long B, long a, long b, long c) { return make(Variant::Triad, {n, k, B, a, b, c}); }
    static RegionSpec shamrock(long n1, long n2, long n3, long a, long b, long c, long m) {
        return make(Variant::Shamrock, {n1, n2, n3, a, b, c, m});
    }
    static RegionSpec dented_trapezoid(long n, long l, std::vector<std::pair<long, long>> removed) {
        RegionSpec s = make(Variant::DentedTrapezoid, {n, l});
        s.removed = std::move(removed);
        return s;
    }

    std::string str() const {
        std::string out = variant_name(variant);
        out += "(";
        bool first = true;
        for (const auto& name : variant_params(variant)) {
            if (!first) out += ",";
            first = false;
            out += name + "=" + std::to_string(get(name));
        }
        if (variant == Variant::DentedTrapezoid) {
            out += ",removed=[";
            for (size_t i = 0; i < removed.size(); ++i) {
                if (i) out += ",";
                out += "(" + std::to_string(removed[i].first) + "," + std::to_string(removed[i].second) + ")";
            }
            out += "]";
        }
        return out + ")";
    }
};

inline nlohmann::json to_json(const RegionSpec& s) {
    nlohmann::json j;
    j["variant"] = variant_name(s.variant);
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : s.params) p[k] = v;
    j["params"] = p;
    if (s.variant == Variant::DentedTrapezoid) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& [row, pos] : s.removed) r.push_back({row, pos});
        j["removed"] = r;
    }
    return j;
}

inline RegionSpec spec_from_json(const nlohmann::json& j) {
    RegionSpec s;
    s.variant = parse_variant(j.at("variant").get<std::string>());
    const auto& p = j.at("params");
    for (const auto& name : variant_params(s.variant)) {
        if (!p.contains(name)) throw GeometryViolation(std::string(variant_name(s.variant)) + ": missing parameter " + name);
        long v = p.at(name).get<long>();
        if (v < 0) throw GeometryViolation("parameter " + name + " must be non-negative");
        s.params[name] = v;
    }
    if (j.contains("removed") && s.variant == Variant::DentedTrapezoid)
        for (const auto& e : j.at("removed")) s.removed.emplace_back(e.at(0).get<long>(), e.at(1).get<long>());
    else if (j.contains("params") && p.contains("removed") && s.variant == Variant::DentedTrapezoid)
        for (const auto& e : p.at("removed")) s.removed.emplace_back(e.at(0).get<long>(), e.at(1).get<long>());
    return s;
}

// "s:2,0,1,1", "sgeneral:1,2,2,2,0,1,0,0,1,1", "trapezoid:3,6;1,2;1,4;1,5", or a JSON object.
inline RegionSpec parse_spec(const std::string& text) {
    auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '{') return spec_from_json(nlohmann::json::parse(text));
    auto colon = text.find(':');
    if (colon == std::string::npos) throw GeometryViolation("region spec '" + text + "' needs the form variant:p1,p2,...");
    RegionSpec s;
    s.variant = parse_variant(text.substr(0, colon));
    std::vector<std::string> groups;
    {
        std::string rest = text.substr(colon + 1), g;
        size_t pos = 0;
        while (pos <= rest.size()) {
            size_t semi = rest.find(';', pos);
            if (semi == std::string::npos) semi = rest.size();
            groups.push_back(rest.substr(pos, semi - pos));
            pos = semi + 1;
        }
    }
    auto numbers = [&](const std::string& g) {
        std::vector<long> v;
        size_t pos = 0;
        while (pos < g.size()) {
            size_t comma = g.find(',', pos);
            if (comma == std::string::npos) comma = g.size();
            std::string item = g.substr(pos, comma - pos);
            try {
                v.push_back(std::stol(item));
            } catch (const std::exception&) {
                throw GeometryViolation("region spec '" + text + "': '" + item + "' is not an integer");
            }
            pos = comma + 1;
        }
        return v;
    };
    const auto& names = variant_params(s.variant);
    std::vector<long> vals = numbers(groups[0]);
    if (vals.size() != names.size())
        throw GeometryViolation(std::string(variant_name(s.variant)) + " needs " + std::to_string(names.size()) +
                                " parameters, got " + std::to_string(vals.size()));
    for (size_t i = 0; i < names.size(); ++i) {
        if (vals[i] < 0) throw GeometryViolation("parameter " + names[i] + " must be non-negative");
        s.params[names[i]] = vals[i];
    }
    for (size_t g = 1; g < groups.size(); ++g) {
        if (s.variant != Variant::DentedTrapezoid) throw GeometryViolation("only trapezoids take removed triangles");
        std::vector<long> rc = numbers(groups[g]);
        if (rc.size() != 2) throw GeometryViolation("removed triangle must be row,position");
        s.removed.emplace_back(rc[0], rc[1]);
    }
    return s;
}

struct Hole {
    std::string name;
    bool up = true;  // up: anchor is the bottom-left vertex; down: anchor is the top-left vertex
    long size = 0;
    long i = 0, y = 0;
};

struct Region {
    std::vector<Cell> cells;  // sorted
    std::vector<Hole> holes;
    RegionSpec spec;
    std::unordered_map<Cell, int, CellHash> index;

    bool contains(const Cell& c) const { return index.count(c) != 0; }
    int size() const { return int(cells.size()); }

    void finalize() {
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        index.clear();
        for (int k = 0; k < int(cells.size()); ++k) index[cells[k]] = k;
    }
};

namespace detail {

// Convex lattice set {ylo<=y<=yhi, ilo<=i<=ihi, slo<=i+y<=shi}.
struct Box {
    long ylo, yhi, ilo, ihi, slo, shi;
    bool has_point(long i, long y) const {
        return y >= ylo && y <= yhi && i >= ilo && i <= ihi && i + y >= slo && i + y <= shi;
    }
};

inline std::array<std::pair<long, long>, 3> vertices(const Cell& c) {
    long i = c.col, y = c.row;
    if (c.up) return {{{i, y}, {i + 1, y}, {i, y + 1}}};
    return {{{i + 1, y}, {i, y + 1}, {i + 1, y + 1}}};
}

template <class Pred>
bool cell_in(const Cell& c, Pred&& has_point) {
    for (auto [i, y] : vertices(c))
        if (!has_point(i, y)) return false;
    return true;
}

inline std::vector<Cell> box_cells(const Box& b) {
    std::vector<Cell> out;
    for (long y = b.ylo; y < b.yhi; ++y)
        for (long i = b.ilo - 1; i <= b.ihi; ++i)
            for (bool up : {true, false}) {
                Cell c{int(y), int(i), up};
                if (cell_in(c, [&](long x, long yy) { return b.has_point(x, yy); })) out.push_back(c);
            }
    return out;
}

// Hexagon with sides given clockwise from the top, top-left vertex at (0, ne+se).
inline Box hexagon_box(long top, long ne, long se, long bottom, long sw, long nw) {
    if (top + ne != bottom + sw || sw + nw != ne + se)
        throw GeometryViolation("hexagon side lengths do not close up");
    long h = ne + se;
    return Box{0, h, 0, top + ne, sw, top + h};
}

inline std::vector<Cell> up_triangle(long p, long h, long m) {
    std::vector<Cell> out;
    for (long y = h; y < h + m; ++y)
        for (long i = p; i < p + m - (y - h); ++i) {
            out.push_back(Cell{int(y), int(i), true});
            if (i + 1 < p + m - (y - h)) out.push_back(Cell{int(y), int(i), false});
        }
    return out;
}

inline std::vector<Cell> down_triangle(long i0, long y0, long m) {
    std::vector<Cell> out;
    for (long y = y0 - m; y < y0; ++y) {
        long depth = y0 - y;  // row y spans i in [i0 + depth - 1, i0 + m - 1]
        for (long i = i0 + depth - 1; i < i0 + m; ++i) {
            out.push_back(Cell{int(y), int(i), false});
            if (i > i0 + depth - 1) out.push_back(Cell{int(y), int(i), true});
        }
    }
    return out;
}

class Builder {
public:
    Builder(const RegionSpec& spec, std::vector<Cell> base) {
        region_.spec = spec;
        region_.cells = std::move(base);
        region_.finalize();
        removed_.reserve(region_.cells.size());
    }

    void remove_hole(const Hole& h) {
        if (h.size == 0) {
            region_.holes.push_back(h);
            return;
        }
        auto cells = h.up ? up_triangle(h.i, h.y, h.size) : down_triangle(h.i, h.y, h.size);
        for (const auto& c : cells) {
            if (!region_.contains(c)) throw GeometryViolation(h.name + " is not contained in the hexagon");
            if (removed_.count(c)) throw GeometryViolation(h.name + " overlaps another hole");
            removed_.insert({c, 1});
        }
        region_.holes.push_back(h);
    }

    void remove_cell(const Cell& c, const std::string& what) {
        if (!region_.contains(c)) throw GeometryViolation(what + " lies outside the trapezoid");
        if (removed_.count(c)) throw GeometryViolation(what + " is removed twice");
        removed_.insert({c, 1});
    }

    Region finish() {
        std::vector<Cell> keep;
        keep.reserve(region_.cells.size());
        for (const auto& c : region_.cells)
            if (!removed_.count(c)) keep.push_back(c);
        region_.cells = std::move(keep);
        region_.finalize();
        return std::move(region_);
    }

private:
    Region region_;
    std::unordered_map<Cell, int, CellHash> removed_;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw GeometryViolation(what);
}

inline void require_nonneg(const RegionSpec& s) {
    for (const auto& [k, v] : s.params) require(v >= 0, "parameter " + k + " must be non-negative");
}

inline Region build_sgeneral(const RegionSpec& spec, long n1, long n2, long n3, long a, long b1, long b2, long b3,
                             long k1, long k2, long k3) {
    const long B = b1 + b2 + b3;
    require(a % 2 == 0 || B == 0, "a must be even (a = " + std::to_string(a) + ")");
    require(n1 <= a + n2 + b2 + n3 + b3, "n1 <= a+n2+b2+n3+b3 violated");
    require(n2 <= a + n1 + b1 + n3 + b3, "n2 <= a+n1+b1+n3+b3 violated");
    require(n3 <= a + n1 + b1 + n2 + b2, "n3 <= a+n1+b1+n2+b2 violated");
    if (b1 > 0) require(2 * k1 <= n1, "2*k1 <= n1 violated (satellite b1 outside the hexagon)");
    if (b2 > 0) require(2 * k2 <= n2, "2*k2 <= n2 violated (satellite b2 outside the hexagon)");
    if (b3 > 0) require(2 * k3 <= n3, "2*k3 <= n3 violated (satellite b3 outside the hexagon)");
    const long n = n1 + n2 + a + B;
    const long l = n + n3;
    Builder bld(spec, box_cells(Box{0, n, 0, l - n1, n2, l}));
    const long h = a / 2;
    bld.remove_hole({"core", true, a, n1 + b1, n3 + b3});
    bld.remove_hole({"satellite b3", true, b3, n1 + h + b1 + k3, n3 - 2 * k3});
    bld.remove_hole({"satellite b1", true, b1, n1 - 2 * k1, n3 + h + b3 + k1});
    bld.remove_hole({"satellite b2", true, b2, n1 + h + b1 + k2, n3 + h + b3 + k2});
    return bld.finish();
}

inline std::pair<long, long> rotate3(long X, long Y, long cx, long cy) {
    // 120 degree rotation about (cx, cy), all in tripled skew coordinates.
    return {-X - Y + 2 * cx + cy, X + cy - cx};
}

inline Hole rotate_up_hole(const Hole& h, long cx, long cy, const std::string& name) {
    // Counterclockwise, the apex of an up triangle is carried to the bottom-left corner of its image.
    auto [X, Y] = rotate3(3 * h.i, 3 * (h.y + h.size), cx, cy);
    require(X % 3 == 0 && Y % 3 == 0, name + ": rotation centre is not lattice compatible");
    return Hole{name, true, h.size, X / 3, Y / 3};
}

}  // namespace detail

inline Region build_region(const RegionSpec& spec) {
    using namespace detail;
    require_nonneg(spec);
    switch (spec.variant) {
        case Variant::Hexagon: {
            long p = spec.get("p"), q = spec.get("q"), r = spec.get("r");
            Builder bld(spec, box_cells(hexagon_box(p, r, q, p, r, q)));
            return bld.finish();
        }
        case Variant::S: {
            long n = spec.get("n"), a = spec.get("a"), b = spec.get("b"), k = spec.get("k");
            require(a % 2 == 0, "S requires a even (a = " + std::to_string(a) + ")");
            require(2 * k <= n, "S requires k <= n/2");
            return build_sgeneral(spec, n, n, n, a, b, b, b, k, k, k);
        }
        case Variant::SGeneral: {
            auto g = [&](const char* s) { return spec.get(s); };
            return build_sgeneral(spec, g("n1"), g("n2"), g("n3"), g("a"), g("b1"), g("b2"), g("b3"), g("k1"), g("k2"),
                                  g("k3"));
        }
        case Variant::SPrime: {
            long n = spec.get("n"), a = spec.get("a"), b = spec.get("b"), k = spec.get("k");
            require(b % 2 == 0, "S' requires b even (b = " + std::to_string(b) + ")");
            require(2 * k <= n, "S' requires k <= n/2");
            const long N = 2 * n + a + 3 * b;
            Builder bld(spec, box_cells(Box{0, N, 0, N, n, N + n}));
            const long q = n + b, y1 = n + b;
            Hole core{"core", true, a, q, y1};
            Hole top{"satellite top", true, b, q - b / 2 - k, y1 + a + 2 * k};
            // Rotation centre: centroid of the core, tripled.
            long cx = 3 * q + a, cy = 3 * y1 + a;
            Hole left = rotate_up_hole(top, cx, cy, "satellite left");
            Hole right = rotate_up_hole(left, cx, cy, "satellite right");
            bld.remove_hole(core);
            bld.remove_hole(top);
            bld.remove_hole(left);
            bld.remove_hole(right);
            return bld.finish();
        }
        case Variant::Triad: {
            long n = spec.get("n"), k = spec.get("k"), B = spec.get("B");
            long a = spec.get("a"), b = spec.get("b"), c = spec.get("c");
            require(a <= B && b <= B && c <= B, "triad requires a,b,c <= B");
            require(n >= 2 * k, "triad requires n >= 2k (outer lobes at distance n-2k from the sides)");
            const long sigma = a + b + c;
            const long t = n + sigma, s = n + 3 * B - sigma;
            require(s >= 0, "triad requires n + 3B >= a+b+c");
            Builder bld(spec, box_cells(hexagon_box(t, s, t, s, t, s)));
            const long D = 3 * k + 3 * B - sigma;
            const long i1 = n - k + a + b, y1 = n + 3 * B + 2 * k - a;
            const long i2 = i1, y2 = y1 - D, i3 = i1 + D, y3 = y1 - D;
            bld.remove_hole({"top outer lobe", false, a, i1 - a, y1 + a});
            bld.remove_hole({"top inner lobe", true, B - a, i1, y1 - (B - a)});
            bld.remove_hole({"left outer lobe", false, b, i2 - b, y2});
            bld.remove_hole({"left inner lobe", true, B - b, i2, y2});
            bld.remove_hole({"right outer lobe", false, c, i3, y3});
            bld.remove_hole({"right inner lobe", true, B - c, i3 - (B - c), y3});
            return bld.finish();
        }
        case Variant::Shamrock: {
            long n1 = spec.get("n1"), n2 = spec.get("n2"), n3 = spec.get("n3");
            long a = spec.get("a"), b = spec.get("b"), c = spec.get("c"), m = spec.get("m");
            const long sigma = a + b + c;
            const long q = n2 + n3 - n1 + b + c, p = n1 + n2 - n3 + a + b;
            require(q >= 0, "shamrock requires n1 <= n2+n3+b+c");
            Builder bld(spec, box_cells(hexagon_box(n1 + sigma, n2 + m, n3 + sigma, n1 + m, n2 + sigma, n3 + m)));
            bld.remove_hole({"shamrock core", true, m, p, q});
            bld.remove_hole({"shamrock top lobe", false, a, p - a, q + m + a});
            bld.remove_hole({"shamrock left lobe", false, b, p - b, q});
            bld.remove_hole({"shamrock right lobe", false, c, p + m, q});
            return bld.finish();
        }
        case Variant::DentedTrapezoid: {
            long n = spec.get("n"), l = spec.get("l");
            require(l >= n, "trapezoid requires l >= n");
            Builder bld(spec, box_cells(Box{0, n, 0, l, 0, l}));
            for (const auto& [r, c] : spec.removed) {
                std::string what = "removed triangle (" + std::to_string(r) + "," + std::to_string(c) + ")";
                require(r >= 1 && r <= n && c >= 1 && c <= l - r + 1, what + " lies outside the trapezoid");
                bld.remove_cell(Cell{int(r - 1), int(c - 1), true}, what);
            }
            return bld.finish();
        }
    }
    throw GeometryViolation("unknown variant");
}

// Dented trapezoid whose tilings are in bijection with those of an SGeneral region
// (chains of removed unit triangles, listed chain by chain).
inline RegionSpec six_chain_encoding(const RegionSpec& sg) {
    if (sg.variant != Variant::SGeneral && sg.variant != Variant::S)
        throw GeometryViolation("six_chain_encoding needs an SGeneral or S spec");
    long n1, n2, n3, a, b1, b2, b3, k1, k2, k3;
    if (sg.variant == Variant::S) {
        n1 = n2 = n3 = sg.get("n");
        a = sg.get("a");
        b1 = b2 = b3 = sg.get("b");
        k1 = k2 = k3 = sg.get("k");
    } else {
        n1 = sg.get("n1"), n2 = sg.get("n2"), n3 = sg.get("n3"), a = sg.get("a");
        b1 = sg.get("b1"), b2 = sg.get("b2"), b3 = sg.get("b3");
        k1 = sg.get("k1"), k2 = sg.get("k2"), k3 = sg.get("k3");
    }
    build_region(RegionSpec::sgeneral(n1, n2, n3, a, b1, b2, b3, k1, k2, k3));  // validates
    const long h = a / 2, n = n1 + n2 + a + b1 + b2 + b3;
    std::vector<std::pair<long, long>> rm;
    auto chain = [&](long height, long first, long len) {
        for (long t = 0; t < len; ++t) rm.emplace_back(height + 1, first + t);
    };
    chain(0, 1, n2);
    chain(0, n2 + n3 + a + b1 + b2 + b3 + 1, n1);
    chain(n3 - 2 * k3, n1 + h + b1 + k3 + 1, b3);
    chain(n3 + b3, n1 + b1 + 1, a);
    chain(n3 + h + b3 + k1, n1 - 2 * k1 + 1, b1);
    chain(n3 + h + b3 + k2, n1 + h + b1 + k2 + 1, b2);
    return RegionSpec::dented_trapezoid(n, n + n3, std::move(rm));
}

inline std::pair<long, long> balance(const Region& r) {
    long up = 0, down = 0;
    for (const auto& c : r.cells) (c.up ? up : down)++;
    return {up, down};
}

inline std::vector<Cell> neighbours(const Cell& c) {
    if (c.up) return {Cell{c.row, c.col, false}, Cell{c.row, c.col - 1, false}, Cell{c.row - 1, c.col, false}};
    return {Cell{c.row, c.col, true}, Cell{c.row, c.col + 1, true}, Cell{c.row + 1, c.col, true}};
}

inline bool is_connected(const Region& r) {
    if (r.cells.empty()) return true;
    std::vector<char> seen(r.cells.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& nb : neighbours(r.cells[v])) {
            auto it = r.index.find(nb);
            if (it != r.index.end() && !seen[it->second]) {
                seen[it->second] = 1;
                ++count;
                stack.push_back(it->second);
            }
        }
    }
    return count == r.cells.size();
}

// 120 degree rotation of the cell set about its exact centroid, as a permutation of cell indices.
inline std::vector<int> rotation_map(const Region& r) {
    const long N = long(r.cells.size());
    if (N == 0) return {};
    long sx = 0, sy = 0;
    for (const auto& c : r.cells) {
        auto [X, Y] = c.centroid3();
        sx += X;
        sy += Y;
    }
    // Centre (sx/N, sy/N); the translation 2cx+cy, cy-cx must be integral.
    long tx = 2 * sx + sy, ty = sy - sx;
    if (tx % N != 0 || ty % N != 0) throw NotSymmetric(r.spec.str() + " has no lattice-compatible rotation centre");
    tx /= N;
    ty /= N;
    std::vector<int> perm(N);
    for (long k = 0; k < N; ++k) {
        auto [X, Y] = r.cells[k].centroid3();
        auto img = Cell::from_centroid3(-X - Y + tx, X + ty);
        if (!img) throw NotSymmetric(r.spec.str() + " is not invariant under 120 degree rotation");
        auto it = r.index.find(*img);
        if (it == r.index.end()) throw NotSymmetric(r.spec.str() + " is not invariant under 120 degree rotation");
        perm[k] = it->second;
    }
    return perm;
}

struct DualGraph {
    std::vector<Cell> ups, downs;          // row-major, then col
    std::vector<std::vector<int>> adj;     // up index -> down indices
};

inline DualGraph dual_graph(const Region& r) {
    DualGraph g;
    std::unordered_map<Cell, int, CellHash> down_index;
    for (const auto& c : r.cells) {
        if (c.up) {
            g.ups.push_back(c);
        } else {
            down_index[c] = int(g.downs.size());
            g.downs.push_back(c);
        }
    }
    g.adj.resize(g.ups.size());
    for (size_t u = 0; u < g.ups.size(); ++u) {
        for (const auto& nb : neighbours(g.ups[u])) {
            auto it = down_index.find(nb);
            if (it != down_index.end()) g.adj[u].push_back(it->second);
        }
        std::sort(g.adj[u].begin(), g.adj[u].end());
    }
    return g;
}

}  // namespace tilescope
