#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tilescope/errors.hpp"
#include "tilescope/exact.hpp"
#include "tilescope/region.hpp"

namespace tilescope {

constexpr int kDefaultCellCap = 120;

// Bipartite multigraph: up vertex u has edges (down vertex, multiplicity).
struct MatchingGraph {
    int n_up = 0, n_down = 0;
    std::vector<std::vector<std::pair<int, int>>> adj;
};

namespace detail {

using FrontierKey = unsigned __int128;

struct FrontierHash {
    size_t operator()(FrontierKey k) const {
        uint64_t lo = uint64_t(k), hi = uint64_t(k >> 64);
        return std::hash<uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
    }
};

}  // namespace detail

// Number of perfect matchings, weighted by edge multiplicities. Up vertices are
// eliminated in index order; the state is the set of covered down vertices that
// still have unprocessed neighbours.
inline BigInt count_perfect_matchings(const MatchingGraph& g) {
    using detail::FrontierKey;
    if (g.n_up != g.n_down) return 0;
    if (g.n_up == 0) return 1;
    std::vector<int> first(g.n_down, -1), last(g.n_down, -1);
    for (int u = 0; u < g.n_up; ++u)
        for (auto [d, m] : g.adj[u]) {
            if (first[d] < 0) first[d] = u;
            last[d] = u;
        }
    for (int d = 0; d < g.n_down; ++d)
        if (first[d] < 0) return 0;

    std::vector<std::vector<int>> opens(g.n_up), closes(g.n_up);
    for (int d = 0; d < g.n_down; ++d) {
        opens[first[d]].push_back(d);
        closes[last[d]].push_back(d);
    }

    std::vector<int> slot(g.n_down, -1);
    std::vector<int> free_slots;
    int next_slot = 0;
    auto bit = [](int s) { return FrontierKey(1) << s; };

    std::unordered_map<FrontierKey, BigInt, detail::FrontierHash> cur, nxt;
    cur.emplace(FrontierKey(0), BigInt(1));
    for (int u = 0; u < g.n_up; ++u) {
        for (int d : opens[u]) {
            if (!free_slots.empty()) {
                slot[d] = free_slots.back();
                free_slots.pop_back();
            } else {
                if (next_slot >= 128) throw RegionTooLarge("matching frontier exceeds 128 vertices");
                slot[d] = next_slot++;
            }
        }
        FrontierKey close_mask = 0;
        for (int d : closes[u]) close_mask |= bit(slot[d]);
        nxt.clear();
        for (const auto& [state, cnt] : cur) {
            for (auto [d, mult] : g.adj[u]) {
                FrontierKey b = bit(slot[d]);
                if (state & b) continue;
                FrontierKey ns = state | b;
                if ((ns & close_mask) != close_mask) continue;
                ns &= ~close_mask;
                auto it = nxt.find(ns);
                if (it == nxt.end()) {
                    if (mult == 1)
                        nxt.emplace(ns, cnt);
                    else
                        nxt.emplace(ns, cnt * mult);
                } else if (mult == 1) {
                    it->second += cnt;
                } else {
                    it->second += cnt * mult;
                }
            }
        }
        std::swap(cur, nxt);
        for (int d : closes[u]) free_slots.push_back(slot[d]);
        if (cur.empty()) return 0;
    }
    auto it = cur.find(FrontierKey(0));
    return it == cur.end() ? BigInt(0) : it->second;
}

inline void check_cap(const Region& r, int cell_cap) {
    if (r.size() > cell_cap)
        throw RegionTooLarge(r.spec.str() + " has " + std::to_string(r.size()) + " cells, above the cap of " +
                             std::to_string(cell_cap));
}

inline BigInt count_tilings(const Region& r, int cell_cap = kDefaultCellCap) {
    check_cap(r, cell_cap);
    auto [up, down] = balance(r);
    if (up != down) return 0;
    DualGraph dg = dual_graph(r);
    MatchingGraph g;
    g.n_up = int(dg.ups.size());
    g.n_down = int(dg.downs.size());
    g.adj.resize(g.n_up);
    for (int u = 0; u < g.n_up; ++u)
        for (int d : dg.adj[u]) g.adj[u].push_back({d, 1});
    return count_perfect_matchings(g);
}

// Tilings invariant under the 120 degree rotation: perfect matchings of the quotient
// graph on rotation orbits. Orbit representatives are taken in one 120 degree sector.
inline BigInt count_invariant_tilings(const Region& r, int cell_cap = kDefaultCellCap) {
    check_cap(r, cell_cap);
    std::vector<int> perm = rotation_map(r);
    const long N = r.size();
    if (N == 0) return 1;
    for (long k = 0; k < N; ++k)
        if (perm[k] == k) return 0;
    auto [up, down] = balance(r);
    if (up != down) return 0;

    long sx = 0, sy = 0;
    for (const auto& c : r.cells) {
        auto [X, Y] = c.centroid3();
        sx += X;
        sy += Y;
    }
    auto in_sector = [&](const Cell& c) {
        auto [X, Y] = c.centroid3();
        long vx = N * X - sx, vy = N * Y - sy;
        return vy >= 0 && vx + vy > 0;
    };

    std::vector<int> orbit(N, -1);
    std::vector<int> up_reps, down_reps;
    for (long k = 0; k < N; ++k) {
        if (!in_sector(r.cells[k])) continue;
        int id = r.cells[k].up ? int(up_reps.size()) : int(down_reps.size());
        (r.cells[k].up ? up_reps : down_reps).push_back(int(k));
        orbit[k] = id;
        orbit[perm[k]] = id;
        orbit[perm[perm[k]]] = id;
    }
    for (long k = 0; k < N; ++k)
        if (orbit[k] < 0) throw InternalDivisionError("orbit without a representative in the sector");

    MatchingGraph g;
    g.n_up = int(up_reps.size());
    g.n_down = int(down_reps.size());
    g.adj.resize(g.n_up);
    for (int u = 0; u < g.n_up; ++u) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& nb : neighbours(r.cells[up_reps[u]])) {
            auto it = r.index.find(nb);
            if (it == r.index.end()) continue;
            int d = orbit[it->second];
            auto e = std::find_if(edges.begin(), edges.end(), [&](const auto& p) { return p.first == d; });
            if (e == edges.end())
                edges.push_back({d, 1});
            else
                e->second += 1;
        }
        g.adj[u] = std::move(edges);
    }
    return count_perfect_matchings(g);
}

}  // namespace tilescope
