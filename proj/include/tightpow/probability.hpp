#pragma once

#include <cstdint>
#include <vector>

#include "tightpow/combinatorics.hpp"
#include "tightpow/kgraph.hpp"
#include "tightpow/log_value.hpp"

namespace tightpow {

/// Minimum of n^{v_H} p^{e_H} over subgraphs H of a pattern with e_H > 0.
struct PhiReport {
    LogValue phi;
    std::vector<Vertex> argmin_vertices;     ///< support of the minimizing subgraph
    std::vector<std::size_t> argmin_edges;   ///< indices into the pattern's colex edge list
    std::uint64_t candidates_examined = 0;
};

/// Largest support the vertex-subset enumeration accepts.
inline constexpr int kPhiVertexCap = 24;
/// Largest edge count the edge-subset enumeration accepts.
inline constexpr int kPhiEdgeCap = 24;

/// Exact Phi. Requires at least one edge, 0 < p <= 1, n >= v_F.
///
/// For a fixed vertex support U the best subgraph takes every edge of F[U]
/// (p <= 1), so the search runs over supports when the non-isolated part of F
/// has at most kPhiVertexCap vertices, and over edge subsets when F has at most
/// kPhiEdgeCap edges. Anything larger is rejected.
PhiReport phi(const KGraph& pattern, std::uint64_t n, double p);

/// (n)_{v_F} p^{e_F}: expected number of labelled copies in G^(k)(n,p).
LogValue expected_labelled_copies(const KGraph& pattern, std::uint64_t n, double p);

/// s! 2^{2s} n^{2s} p^{2f} / Phi_F with s = v_F, f = e_F.
LogValue delta_bound(const KGraph& pattern, std::uint64_t n, double p);

/// exp(-slack^2 / (2 delta)), a bound on P(X <= lambda - slack). Needs 0 <= slack <= lambda, delta > 0.
double janson_tail(LogValue lambda, double slack, LogValue delta);

/// min(1, delta / lambda^2), a bound on P(X >= 2 lambda). Needs lambda > 0.
double chebyshev_tail(LogValue lambda, LogValue delta);

/// min{ 1/(2 g(b)), 1/(3 C(k+r-1, k)) } for b >= h.
Rational epsilon_cap(int k, int r, std::int64_t b);

struct PhiThresholdCheck {
    bool holds = false;
    double p = 0.0;
    PhiReport phi;
    LogValue threshold;  ///< C n
};

/// Evaluates Phi of the power path on b vertices at p = n^{-c-epsilon} and
/// compares it with C n. Epsilon must lie strictly inside (0, epsilon_cap).
PhiThresholdCheck phi_threshold_check(int k, int r, std::int64_t b, double C, std::uint64_t n, double epsilon);

/// ln of the expected number of labelled spanning power paths (or power cycles
/// when `cyclic`) in G^(k)(n,p): ln n! + E ln p. No symmetry correction. n >= 2h.
double first_moment_log(int k, int r, std::uint64_t n, double p, bool cyclic = false);

/// p' with 1 - (1-p')^rounds = p. Needs 0 <= p < 1 and rounds >= 1.
double split_probability(double p, int rounds);

}  // namespace tightpow
