#pragma once

#include <cstdint>
#include <vector>

#include "tightpow/kgraph.hpp"
#include "tightpow/rng.hpp"

namespace tightpow {

/// Below this p, sample_gnp jumps over absent k-sets with geometric skips.
inline constexpr double kSkipSamplingBelow = 0.05;

/// G^(k)(n,p): every k-set joins independently with probability p. k-sets are
/// visited in colex rank order, so a stream and (k, n, p) fix the graph exactly.
KGraph sample_gnp(int k, std::uint32_t n, double p, RngStream& rng);

/// One Bernoulli draw per k-set, regardless of p.
KGraph sample_gnp_bernoulli(int k, std::uint32_t n, double p, RngStream& rng);

/// Geometric skips over the colex sequence, regardless of p. Same law as the
/// Bernoulli path.
KGraph sample_gnp_skip(int k, std::uint32_t n, double p, RngStream& rng);

/// `rounds` independent samples at split_probability(p, rounds); their union is
/// distributed as G^(k)(n,p). p = 1 is accepted here and yields complete rounds.
std::vector<KGraph> sample_rounds(int k, std::uint32_t n, double p, int rounds, RngStream& rng);

}  // namespace tightpow
