#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tightpow/combinatorics.hpp"

namespace tightpow {

/// Ordered sequence of distinct vertices (ends, connectors, absorbers, cyclic orders).
using OrderedTuple = std::vector<Vertex>;

/// Immutable k-uniform hypergraph on vertices 0..n-1.
///
/// Edges are stored by their colex rank, sorted ascending, so the canonical edge
/// order is colex order. Membership goes through a dense bitset over all C(n,k)
/// ranks when that is small (see kDenseIndexLimit), and through a hash set
/// otherwise.
class KGraph {
public:
    static constexpr std::uint64_t kDenseIndexLimit = std::uint64_t{1} << 24;

    KGraph() = default;

    /// Edgeless graph.
    KGraph(int k, std::uint32_t n);

    /// Canonicalizing constructor. Edges may be listed in any vertex order and
    /// may repeat; invalid edges throw std::invalid_argument naming the edge.
    static KGraph build(int k, std::uint32_t n, const std::vector<std::vector<Vertex>>& edges);

    /// From colex ranks (any order, duplicates collapsed). Ranks must be < C(n,k).
    static KGraph from_ranks(int k, std::uint32_t n, std::vector<std::uint64_t> ranks);

    static KGraph complete(int k, std::uint32_t n);

    int k() const { return k_; }
    std::uint32_t n() const { return n_; }
    std::size_t edge_count() const { return ranks_.size(); }
    std::uint64_t max_edges() const { return total_ksets_; }

    /// i-th edge in colex order, vertices ascending.
    std::span<const Vertex> edge(std::size_t i) const {
        return {flat_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
    }
    std::vector<std::vector<Vertex>> edges() const;
    const std::vector<std::uint64_t>& ranks() const { return ranks_; }
    const BinomialTable& colex() const { return *binom_; }

    /// Validated membership query: s must be k distinct vertices < n, any order.
    bool has_edge(std::span<const Vertex> s) const;

    /// Unchecked membership for a strictly increasing k-tuple.
    bool contains_sorted(const Vertex* sorted) const { return contains_rank(binom_->rank(sorted)); }

    /// Unchecked membership for k distinct in-range vertices in any order.
    bool contains_unsorted(const Vertex* vs) const;

    bool contains_rank(std::uint64_t rank) const {
        if (!dense_.empty()) return (dense_[rank >> 6] >> (rank & 63)) & 1u;
        return index_.count(rank) != 0;
    }

    /// Vertices v not in s with s + {v} an edge; s is a (k-1)-set.
    std::vector<Vertex> neighborhood(std::span<const Vertex> s) const;
    std::size_t codegree(std::span<const Vertex> s) const;

    /// Minimum codegree over all (k-1)-sets; requires n >= k.
    std::size_t min_codegree() const;

    /// Codegree of every (k-1)-set, indexed by its colex rank among (k-1)-sets.
    std::vector<std::uint32_t> codegree_table() const;

    /// True iff every k-subset of s is an edge; requires |s| >= k.
    bool spans_clique(std::span<const Vertex> s) const;

    friend bool operator==(const KGraph& a, const KGraph& b) {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.ranks_ == b.ranks_;
    }

private:
    void finalize();

    int k_ = 0;
    std::uint32_t n_ = 0;
    std::uint64_t total_ksets_ = 0;
    std::shared_ptr<const BinomialTable> binom_;
    std::vector<std::uint64_t> ranks_;
    std::vector<Vertex> flat_;
    std::vector<std::uint64_t> dense_;
    std::unordered_set<std::uint64_t> index_;
};

/// Union of edge sets; k and n must agree.
KGraph graph_union(const KGraph& a, const KGraph& b);

/// Subgraph induced by `keep`, relabeled to 0..|keep|-1 in the given order.
/// The second member maps new labels back to original vertices.
std::pair<KGraph, std::vector<Vertex>> induced_subgraph(const KGraph& g, std::span<const Vertex> keep);

/// Throws std::invalid_argument unless t has distinct entries all < n.
void validate_tuple(std::span<const Vertex> t, std::uint32_t n);

}  // namespace tightpow
