#include "tightpow/kgraph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tightpow {
namespace {

std::string describe(std::span<const Vertex> s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ']';
    return os.str();
}

void check_shape(int k, std::uint32_t n) {
    if (k < 2 || k > kMaxUniformity)
        throw std::invalid_argument("uniformity k must be in [2, " + std::to_string(kMaxUniformity) + "]");
    if (n > (1u << 24)) throw std::invalid_argument("vertex count too large");
}

void sort_small(Vertex* a, int len) {
    for (int i = 1; i < len; ++i) {
        Vertex x = a[i];
        int j = i - 1;
        while (j >= 0 && a[j] > x) {
            a[j + 1] = a[j];
            --j;
        }
        a[j + 1] = x;
    }
}

}  // namespace

void validate_tuple(std::span<const Vertex> t, std::uint32_t n) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= n)
            throw std::invalid_argument("vertex " + std::to_string(t[i]) + " out of range in " + describe(t));
        for (std::size_t j = 0; j < i; ++j)
            if (t[i] == t[j])
                throw std::invalid_argument("repeated vertex " + std::to_string(t[i]) + " in " + describe(t));
    }
}

KGraph::KGraph(int k, std::uint32_t n) : k_(k), n_(n) {
    check_shape(k, n);
    finalize();
}

KGraph KGraph::build(int k, std::uint32_t n, const std::vector<std::vector<Vertex>>& edges) {
    check_shape(k, n);
    KGraph g;
    g.k_ = k;
    g.n_ = n;
    g.binom_ = std::make_shared<BinomialTable>(n, k);
    g.ranks_.reserve(edges.size());
    Vertex buf[kMaxUniformity];
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != k)
            throw std::invalid_argument("edge " + describe(e) + " has arity " + std::to_string(e.size()) +
                                        ", expected " + std::to_string(k));
        validate_tuple(e, n);
        std::copy(e.begin(), e.end(), buf);
        sort_small(buf, k);
        g.ranks_.push_back(g.binom_->rank(buf));
    }
    g.finalize();
    return g;
}

KGraph KGraph::from_ranks(int k, std::uint32_t n, std::vector<std::uint64_t> ranks) {
    check_shape(k, n);
    KGraph g;
    g.k_ = k;
    g.n_ = n;
    g.binom_ = std::make_shared<BinomialTable>(n, k);
    const std::uint64_t total = (*g.binom_)(n, k);
    for (auto r : ranks)
        if (r >= total) throw std::invalid_argument("edge rank " + std::to_string(r) + " out of range");
    g.ranks_ = std::move(ranks);
    g.finalize();
    return g;
}

KGraph KGraph::complete(int k, std::uint32_t n) {
    check_shape(k, n);
    const std::uint64_t total = binomial(n, k);
    if (total > (std::uint64_t{1} << 28)) throw std::invalid_argument("complete graph too large");
    std::vector<std::uint64_t> ranks(total);
    std::iota(ranks.begin(), ranks.end(), std::uint64_t{0});
    return from_ranks(k, n, std::move(ranks));
}

void KGraph::finalize() {
    if (!binom_) binom_ = std::make_shared<BinomialTable>(n_, k_);
    total_ksets_ = (*binom_)(n_, k_);
    std::sort(ranks_.begin(), ranks_.end());
    ranks_.erase(std::unique(ranks_.begin(), ranks_.end()), ranks_.end());
    flat_.resize(ranks_.size() * static_cast<std::size_t>(k_));
    for (std::size_t i = 0; i < ranks_.size(); ++i) binom_->unrank(ranks_[i], flat_.data() + i * k_);
    dense_.clear();
    index_.clear();
    if (total_ksets_ <= kDenseIndexLimit) {
        dense_.assign((total_ksets_ + 64) / 64, 0);
        for (auto r : ranks_) dense_[r >> 6] |= std::uint64_t{1} << (r & 63);
    } else {
        index_.reserve(ranks_.size() * 2);
        index_.insert(ranks_.begin(), ranks_.end());
    }
}

std::vector<std::vector<Vertex>> KGraph::edges() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(ranks_.size());
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        auto e = edge(i);
        out.emplace_back(e.begin(), e.end());
    }
    return out;
}

bool KGraph::has_edge(std::span<const Vertex> s) const {
    if (static_cast<int>(s.size()) != k_)
        throw std::invalid_argument("has_edge: expected " + std::to_string(k_) + " vertices, got " +
                                    std::to_string(s.size()));
    validate_tuple(s, n_);
    return contains_unsorted(s.data());
}

bool KGraph::contains_unsorted(const Vertex* vs) const {
    Vertex buf[kMaxUniformity];
    std::copy(vs, vs + k_, buf);
    sort_small(buf, k_);
    return contains_sorted(buf);
}

std::vector<Vertex> KGraph::neighborhood(std::span<const Vertex> s) const {
    if (static_cast<int>(s.size()) != k_ - 1)
        throw std::invalid_argument("codegree: expected a " + std::to_string(k_ - 1) + "-set, got " +
                                    std::to_string(s.size()) + " vertices");
    validate_tuple(s, n_);
    Vertex buf[kMaxUniformity];
    std::copy(s.begin(), s.end(), buf);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n_; ++v) {
        if (std::find(s.begin(), s.end(), v) != s.end()) continue;
        buf[k_ - 1] = v;
        if (contains_unsorted(buf)) out.push_back(v);
    }
    return out;
}

std::size_t KGraph::codegree(std::span<const Vertex> s) const { return neighborhood(s).size(); }

std::vector<std::uint32_t> KGraph::codegree_table() const {
    // Each edge contributes once to each of its k faces of size k-1.
    const BinomialTable faces(n_, k_ - 1);
    std::vector<std::uint32_t> deg(faces(n_, k_ - 1), 0);
    Vertex face[kMaxUniformity];
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        auto e = edge(i);
        for (int drop = 0; drop < k_; ++drop) {
            int t = 0;
            for (int j = 0; j < k_; ++j)
                if (j != drop) face[t++] = e[j];
            ++deg[faces.rank(face)];
        }
    }
    return deg;
}

std::size_t KGraph::min_codegree() const {
    if (n_ < static_cast<std::uint32_t>(k_))
        throw std::invalid_argument("min_codegree requires n >= k");
    auto deg = codegree_table();
    return *std::min_element(deg.begin(), deg.end());
}

bool KGraph::spans_clique(std::span<const Vertex> s) const {
    if (static_cast<int>(s.size()) < k_)
        throw std::invalid_argument("spans_clique: tuple shorter than k");
    validate_tuple(s, n_);
    Vertex buf[kMaxUniformity];
    return for_each_combination(static_cast<int>(s.size()), k_, [&](std::span<const int> idx) {
        for (int j = 0; j < k_; ++j) buf[j] = s[idx[j]];
        return contains_unsorted(buf);
    });
}

KGraph graph_union(const KGraph& a, const KGraph& b) {
    if (a.k() != b.k() || a.n() != b.n())
        throw std::invalid_argument("union requires equal k and n (got k=" + std::to_string(a.k()) +
                                    ",n=" + std::to_string(a.n()) + " and k=" + std::to_string(b.k()) +
                                    ",n=" + std::to_string(b.n()) + ")");
    std::vector<std::uint64_t> ranks;
    ranks.reserve(a.edge_count() + b.edge_count());
    std::set_union(a.ranks().begin(), a.ranks().end(), b.ranks().begin(), b.ranks().end(),
                   std::back_inserter(ranks));
    return KGraph::from_ranks(a.k(), a.n(), std::move(ranks));
}

std::pair<KGraph, std::vector<Vertex>> induced_subgraph(const KGraph& g, std::span<const Vertex> keep) {
    validate_tuple(keep, g.n());
    constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> relabel(g.n(), kAbsent);
    for (std::size_t i = 0; i < keep.size(); ++i) relabel[keep[i]] = static_cast<Vertex>(i);
    std::vector<std::vector<Vertex>> edges;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        auto e = g.edge(i);
        std::vector<Vertex> mapped;
        mapped.reserve(e.size());
        for (Vertex v : e) {
            if (relabel[v] == kAbsent) break;
            mapped.push_back(relabel[v]);
        }
        if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
    }
    return {KGraph::build(g.k(), static_cast<std::uint32_t>(keep.size()), edges),
            std::vector<Vertex>(keep.begin(), keep.end())};
}

}  // namespace tightpow
