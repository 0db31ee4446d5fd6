#include "tightpow/random_model.hpp"

#include <cmath>
#include <stdexcept>

#include "tightpow/probability.hpp"

namespace tightpow {
namespace {

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sampling probability must lie in [0, 1]");
}

std::uint64_t total_ksets(int k, std::uint32_t n) {
    const std::uint64_t total = binomial(n, k);
    if (total > (std::uint64_t{1} << 40)) throw std::invalid_argument("G(n,p): too many k-sets");
    return total;
}

}  // namespace

KGraph sample_gnp_bernoulli(int k, std::uint32_t n, double p, RngStream& rng) {
    check_p(p);
    const std::uint64_t total = total_ksets(k, n);
    std::vector<std::uint64_t> ranks;
    for (std::uint64_t i = 0; i < total; ++i)
        if (rng.bernoulli(p)) ranks.push_back(i);
    return KGraph::from_ranks(k, n, std::move(ranks));
}

KGraph sample_gnp_skip(int k, std::uint32_t n, double p, RngStream& rng) {
    check_p(p);
    const std::uint64_t total = total_ksets(k, n);
    std::vector<std::uint64_t> ranks;
    if (p == 0.0 || total == 0) return KGraph::from_ranks(k, n, {});
    if (p == 1.0) return KGraph::complete(k, n);
    // Gap before the next present k-set is Geometric(p) on {0, 1, ...}.
    const double log_q = std::log1p(-p);
    std::uint64_t next = 0;
    while (true) {
        const double gap = std::floor(std::log(rng.uniform_open0()) / log_q);
        if (gap >= static_cast<double>(total - next)) break;
        next += static_cast<std::uint64_t>(gap);
        ranks.push_back(next);
        if (++next >= total) break;
    }
    return KGraph::from_ranks(k, n, std::move(ranks));
}

KGraph sample_gnp(int k, std::uint32_t n, double p, RngStream& rng) {
    check_p(p);
    if (p == 0.0) return KGraph(k, n);
    if (p == 1.0) return KGraph::complete(k, n);
    return p < kSkipSamplingBelow ? sample_gnp_skip(k, n, p, rng) : sample_gnp_bernoulli(k, n, p, rng);
}

std::vector<KGraph> sample_rounds(int k, std::uint32_t n, double p, int rounds, RngStream& rng) {
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    check_p(p);
    const double per_round = p == 1.0 ? 1.0 : split_probability(p, rounds);
    std::vector<KGraph> out;
    out.reserve(rounds);
    for (int i = 0; i < rounds; ++i) out.push_back(sample_gnp(k, n, per_round, rng));
    return out;
}

}  // namespace tightpow
