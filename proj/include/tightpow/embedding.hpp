#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tightpow/kgraph.hpp"
#include "tightpow/rng.hpp"

namespace tightpow {

/// Constraint plan for placing a vertex sequence: some positions are pinned to
/// given vertices, the rest are filled in `fill_order`, and each constraint is a
/// set of k positions whose images must form an edge. A constraint is checked
/// as soon as its last position is filled.
class SequencePlan {
public:
    SequencePlan(int length, int k, const std::vector<std::vector<int>>& constraints,
                 std::vector<std::optional<Vertex>> pinned, std::vector<int> fill_order);

    int length() const { return length_; }
    int k() const { return k_; }
    const std::vector<int>& fill_order() const { return fill_order_; }
    const std::vector<std::optional<Vertex>>& pinned() const { return pinned_; }
    const std::vector<std::vector<int>>& checks_at(int step) const { return checks_[step]; }
    const std::vector<std::vector<int>>& pinned_checks() const { return pinned_checks_; }

private:
    int length_;
    int k_;
    std::vector<std::optional<Vertex>> pinned_;
    std::vector<int> fill_order_;
    std::vector<std::vector<std::vector<int>>> checks_;
    std::vector<std::vector<int>> pinned_checks_;
};

struct SearchBudget {
    int attempts = 32;                      ///< randomized restarts
    std::uint64_t nodes_per_attempt = 20'000;
};

/// Randomized depth-first embedding: at each position the admissible vertices
/// (available, unused, all due constraints satisfied) are shuffled and tried in
/// turn. Each attempt is a fresh DFS with its own node budget.
std::optional<OrderedTuple> embed_sequence(const KGraph& g, const SequencePlan& plan,
                                           std::span<const char> available, RngStream& rng,
                                           const SearchBudget& budget);

/// r-th power of a tight path on m free positions, filled left to right.
SequencePlan power_path_plan(int k, int r, int m);

/// (w_1..w_h, v, w_{h+1}..w_2h): both the 2h+1 sequence and the 2h sequence
/// without v must be power paths. Filled outward from v.
SequencePlan absorber_plan(int k, int r, Vertex v);

/// A C B with A, B pinned (h each) and C free (2h), the whole a power path on
/// 4h vertices. C is filled forward from A for h steps, then backward from B.
SequencePlan connector_plan(int k, int r, std::span<const Vertex> a, std::span<const Vertex> b);

/// `end` (the last h path vertices, in path order) pinned, followed by `extra`
/// free positions, all a power path.
SequencePlan extension_plan(int k, int r, std::span<const Vertex> end, int extra);

}  // namespace tightpow
