#include "tightpow/hosts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tightpow/random_model.hpp"

namespace tightpow {

KGraph complete_host(int k, std::uint32_t n) { return KGraph::complete(k, n); }

std::uint32_t split_class_size(std::uint32_t n, double alpha) {
    return static_cast<std::uint32_t>(std::ceil(alpha * n - 1e-9));
}

KGraph split_host(int k, std::uint32_t n, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("split_host: alpha must lie in (0, 1/2)");
    const std::uint32_t a = split_class_size(n, alpha);
    if (a < 1) throw std::invalid_argument("split_host: the small class is empty");
    KGraph full = KGraph::complete(k, n);
    // In colex order a k-set lies inside {0..a-1} iff its rank is below C(a, k).
    const std::uint64_t inside = binomial(a, k);
    std::vector<std::uint64_t> ranks(full.ranks().begin() + static_cast<std::ptrdiff_t>(inside), full.ranks().end());
    return KGraph::from_ranks(k, n, std::move(ranks));
}

CodegreeHost codegree_host(int k, std::uint32_t n, std::size_t delta_target, RngStream& rng, int max_attempts) {
    if (n < static_cast<std::uint32_t>(k)) throw std::invalid_argument("codegree_host: need n >= k");
    const std::size_t cap = n - k + 1;
    if (delta_target > cap)
        throw std::invalid_argument("codegree_host: target " + std::to_string(delta_target) +
                                    " exceeds n-k+1 = " + std::to_string(cap));
    if (max_attempts < 1) throw std::invalid_argument("codegree_host: max_attempts must be >= 1");

    const double q = std::min(1.0, static_cast<double>(delta_target) / static_cast<double>(cap) + kCodegreeSlack);
    CodegreeHost out;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        out.graph = sample_gnp(k, n, q, rng);
        ++out.attempts;
        if (out.graph.min_codegree() >= delta_target) return out;
    }

    out.repaired = true;
    const BinomialTable faces(n, k - 1);
    auto deg = out.graph.codegree_table();
    std::vector<std::uint64_t> ranks = out.graph.ranks();
    std::vector<char> present(out.graph.max_edges(), 0);
    for (auto r : ranks) present[r] = 1;
    const auto& colex = out.graph.colex();

    Vertex face[kMaxUniformity], edge[kMaxUniformity], sub[kMaxUniformity];
    for (std::uint64_t fr = 0; fr < deg.size(); ++fr) {
        if (deg[fr] >= delta_target) continue;
        faces.unrank(fr, face);
        for (Vertex v = 0; v < n && deg[fr] < delta_target; ++v) {
            if (std::find(face, face + k - 1, v) != face + k - 1) continue;
            std::copy(face, face + k - 1, edge);
            edge[k - 1] = v;
            std::sort(edge, edge + k);
            const std::uint64_t er = colex.rank(edge);
            if (present[er]) continue;
            present[er] = 1;
            ranks.push_back(er);
            ++out.added_edges;
            for (int drop = 0; drop < k; ++drop) {
                int t = 0;
                for (int j = 0; j < k; ++j)
                    if (j != drop) sub[t++] = edge[j];
                ++deg[faces.rank(sub)];
            }
        }
    }
    out.graph = KGraph::from_ranks(k, n, std::move(ranks));
    if (out.graph.min_codegree() < delta_target) throw std::logic_error("codegree_host: repair fell short");
    return out;
}

}  // namespace tightpow
