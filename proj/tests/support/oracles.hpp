#pragma once
// Brute-force references used by the unit and acceptance tests. None of these
// call into the library beyond KGraph accessors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "tightpow/kgraph.hpp"
#include "tightpow/rng.hpp"

namespace oracle {

using tightpow::KGraph;
using tightpow::Vertex;
using KSet = std::vector<Vertex>;

inline void subsets_of(const std::vector<Vertex>& pool, int k, std::size_t from, KSet& cur, std::set<KSet>& out) {
    if (static_cast<int>(cur.size()) == k) {
        KSet s = cur;
        std::sort(s.begin(), s.end());
        out.insert(s);
        return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets_of(pool, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Edge set of the r-th power of the tight path / cycle on the given sequence.
inline std::set<KSet> power_edges(int k, int r, const std::vector<Vertex>& seq, bool cyclic) {
    const int h = k + r - 1;
    const int len = static_cast<int>(seq.size());
    std::set<KSet> out;
    const int starts = cyclic ? len : len - h + 1;
    for (int s = 0; s < starts; ++s) {
        std::vector<Vertex> window;
        for (int j = 0; j < h; ++j) window.push_back(seq[(s + j) % len]);
        KSet cur;
        subsets_of(window, k, 0, cur, out);
    }
    return out;
}

inline std::set<KSet> power_edges(int k, int r, int m, bool cyclic) {
    std::vector<Vertex> seq(m);
    std::iota(seq.begin(), seq.end(), 0u);
    return power_edges(k, r, seq, cyclic);
}

inline bool has(const KGraph& g, KSet s) {
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        auto e = g.edge(i);
        if (std::equal(e.begin(), e.end(), s.begin(), s.end())) return true;
    }
    return false;
}

/// Every cyclic window of `order` spans a clique, checked by linear edge scans.
inline bool power_cycle_ok(const KGraph& g, int r, const std::vector<Vertex>& order) {
    for (const auto& s : power_edges(g.k(), r, order, true))
        if (!has(g, s)) return false;
    return true;
}

/// ln of min over (S nonempty edge subset, U vertex set containing V(S)) of n^|U| p^|S|.
inline double log_phi_all_subgraphs(const KGraph& f, double n, double p) {
    const std::size_t m = f.edge_count();
    const std::uint32_t v = f.n();
    double best = INFINITY;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<char> in(v, 0);
        int edges = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) {
                ++edges;
                for (Vertex x : f.edge(i)) in[x] = 1;
            }
        const int base = static_cast<int>(std::count(in.begin(), in.end(), 1));
        const int spare = static_cast<int>(v) - base;
        // Any superset of the support is a valid vertex set.
        for (int extra = 0; extra <= spare; ++extra) {
            const double val = (base + extra) * std::log(n) + edges * std::log(p);
            best = std::min(best, val);
        }
    }
    return best;
}

/// Labelled copies by trying every injection.
inline std::uint64_t count_copies(const KGraph& f, const KGraph& g) {
    const std::uint32_t vf = f.n(), n = g.n();
    if (vf > n) return 0;
    std::uint64_t count = 0;
    std::vector<Vertex> img(vf);
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, std::uint32_t i) -> void {
        if (i == vf) {
            for (std::size_t e = 0; e < f.edge_count(); ++e) {
                KSet s;
                for (Vertex x : f.edge(e)) s.push_back(img[x]);
                if (!has(g, s)) return;
            }
            ++count;
            return;
        }
        for (Vertex x = 0; x < n; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            img[i] = x;
            self(self, i + 1);
            used[x] = 0;
        }
    };
    rec(rec, 0);
    return count;
}

/// All labelled copies as image vectors.
inline std::vector<std::vector<Vertex>> all_copies(const KGraph& f, const KGraph& g) {
    std::vector<std::vector<Vertex>> out;
    const std::uint32_t vf = f.n(), n = g.n();
    std::vector<Vertex> img(vf);
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, std::uint32_t i) -> void {
        if (i == vf) {
            for (std::size_t e = 0; e < f.edge_count(); ++e) {
                KSet s;
                for (Vertex x : f.edge(e)) s.push_back(img[x]);
                if (!has(g, s)) return;
            }
            out.push_back(img);
            return;
        }
        for (Vertex x = 0; x < n; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            img[i] = x;
            self(self, i + 1);
            used[x] = 0;
        }
    };
    if (vf <= n) rec(rec, 0);
    return out;
}

inline std::size_t min_codegree(const KGraph& g) {
    const int k = g.k();
    std::vector<Vertex> all(g.n());
    std::iota(all.begin(), all.end(), 0u);
    std::set<KSet> faces;
    KSet cur;
    subsets_of(all, k - 1, 0, cur, faces);
    std::size_t best = g.n();
    for (const auto& s : faces) {
        std::size_t d = 0;
        for (Vertex v = 0; v < g.n(); ++v) {
            if (std::find(s.begin(), s.end(), v) != s.end()) continue;
            KSet e = s;
            e.push_back(v);
            if (has(g, e)) ++d;
        }
        best = std::min(best, d);
    }
    return best;
}

/// Random k-graph from a seeded stream, each k-set kept with probability p.
inline KGraph random_graph(int k, std::uint32_t n, double p, tightpow::RngStream& rng) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0u);
    std::set<KSet> ks;
    KSet cur;
    subsets_of(all, k, 0, cur, ks);
    std::vector<std::vector<Vertex>> edges;
    for (const auto& s : ks)
        if (rng.uniform() < p) edges.push_back(s);
    return KGraph::build(k, n, edges);
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

}  // namespace oracle
