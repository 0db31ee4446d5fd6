#pragma once

#include <cstdint>

#include "tightpow/kgraph.hpp"
#include "tightpow/rng.hpp"

namespace tightpow {

KGraph complete_host(int k, std::uint32_t n);

/// Size of the independent class A in split_host: ceil(alpha n), computed so that
/// alpha n landing on an integer up to rounding error is not bumped up.
std::uint32_t split_class_size(std::uint32_t n, double alpha);

/// Every k-set except those lying entirely inside A = {0, ..., ceil(alpha n) - 1}.
/// For k = 2 this is K_n with the clique on A removed. Needs 0 < alpha < 1/2.
KGraph split_host(int k, std::uint32_t n, double alpha);

struct CodegreeHost {
    KGraph graph;
    bool repaired = false;   ///< true when no sample met the target unaided
    int attempts = 0;        ///< samples drawn
    std::size_t added_edges = 0;
};

/// Extra density added on top of delta_target / (n-k+1) when sampling.
inline constexpr double kCodegreeSlack = 0.05;

/// Samples G^(k)(n,q) with q = min(1, delta_target/(n-k+1) + kCodegreeSlack) up to
/// max_attempts times. The first sample meeting min_codegree >= delta_target is
/// returned as is; otherwise the last sample is repaired by walking the
/// (k-1)-sets in colex order and adding missing extensions in increasing vertex
/// order until each reaches the target. Needs delta_target <= n-k+1.
CodegreeHost codegree_host(int k, std::uint32_t n, std::size_t delta_target, RngStream& rng, int max_attempts = 1);

}  // namespace tightpow
