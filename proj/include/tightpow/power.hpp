#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tightpow/combinatorics.hpp"
#include "tightpow/kgraph.hpp"

namespace tightpow {

/// Constants of an instance in the supported range (k >= 2, r >= 1, k + r >= 4).
struct Parameters {
    int k = 0;
    int r = 0;
    int h = 0;       ///< window length k + r - 1
    Rational c;      ///< 1 / C(k+r-2, k-1)
    std::int64_t t;  ///< edge count of P_{2h}

    static Parameters make(int k, int r);
};

/// 1 / C(k+r-2, k-1): the exponent in the probability threshold and the codegree
/// deficit allowed in the host. Defined for any k >= 2, r >= 1.
Rational threshold_exponent(int k, int r);

/// Number of edges of the r-th power of a tight k-path on b >= h vertices:
/// C(h,k) + (b-h) C(h-1,k-1).
std::int64_t g_edges(int k, int r, std::int64_t b);

/// Real extension of g to any b, used to invert the segment length formula.
double g_edges_real(int k, int r, double b);

/// Smallest-error real b with g(b) = y, i.e. the inverse of the linear map g.
double g_inverse(int k, int r, double y);

/// r-th power of the tight path 0,1,...,m-1 (m >= h).
KGraph power_path(int k, int r, std::uint32_t m);

/// r-th power of the tight cycle 0,1,...,m-1 (m >= 2h).
KGraph power_cycle(int k, int r, std::uint32_t m);

/// A power path living inside some host: its vertex sequence and window length.
struct PowerPathInstance {
    int k = 0;
    int r = 0;
    OrderedTuple order;

    int h() const { return k + r - 1; }
    std::size_t size() const { return order.size(); }
    OrderedTuple first_end() const;
    OrderedTuple last_end() const;
};

/// True iff every h consecutive entries of tup span a clique in g (containment,
/// extra edges allowed). Requires |tup| >= h and a valid tuple.
bool is_labelled_power_path(const KGraph& g, int r, std::span<const Vertex> tup);

/// Same predicate with cyclic windows; requires |tup| >= h. Does not require tup
/// to span all of g's vertices.
bool is_power_cycle_sequence(const KGraph& g, int r, std::span<const Vertex> tup);

/// True iff order is a permutation of 0..n-1 whose cyclic h-windows are all cliques.
bool is_power_hamilton_cycle(const KGraph& g, int r, std::span<const Vertex> order);

/// The k-subsets (as position indices, ascending) of all h-windows of a sequence
/// of the given length, each listed once. Cyclic windows wrap modulo length.
std::vector<std::vector<int>> window_constraints(int length, int k, int h, bool cyclic);

}  // namespace tightpow
