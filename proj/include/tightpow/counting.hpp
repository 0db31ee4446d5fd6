#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tightpow/kgraph.hpp"
#include "tightpow/rng.hpp"

namespace tightpow {

/// A labelled copy of F in G is an injection V(F) -> V(G) taking edges to edges.
/// Extra host edges are allowed.
struct CopyCountReport {
    std::uint64_t labelled_count = 0;
    /// Unordered pairs of distinct labelled copies whose images share a vertex.
    std::uint64_t overlapping_pairs = 0;
    bool overlaps_counted = false;
    /// Budget hit: both counts are lower bounds.
    bool truncated = false;
    std::uint64_t nodes = 0;
};

struct CountOptions {
    std::uint64_t budget = 10'000'000;  ///< partial assignments
    bool count_overlaps = true;
    /// Memory cap for overlap tracking: subset-table entries when the host has at most
    /// 64 vertices, stored copies otherwise. Past it overlaps_counted stays false.
    std::size_t max_stored_copies = 4'000'000;
};

/// Backtracking over V(F) ordered by F-degree, pruned by host adjacency. Needs v_F <= 12.
CopyCountReport count_labelled_copies(const KGraph& pattern, const KGraph& host, const CountOptions& opt = {});

/// One labelled copy inside the vertices marked in `allowed` (all when empty),
/// or nullopt when none exists or the budget runs out.
std::optional<std::vector<Vertex>> find_copy(const KGraph& pattern, const KGraph& host,
                                             std::span<const char> allowed = {},
                                             std::uint64_t budget = 10'000'000);

/// Members of `family` (each a tuple of length v_F) whose identity labelling
/// V(F)[i] -> tuple[i] spans F in the host.
std::uint64_t count_in_family(const KGraph& pattern, const KGraph& host,
                              const std::vector<OrderedTuple>& family);

struct InducedCheck {
    std::uint64_t failures = 0;  ///< subsets whose induced subgraph has no copy of F
    std::uint64_t sampled = 0;
    bool exhaustive = false;
};

/// Subsets of size ceil(gamma n) containing no copy of F. Every subset is
/// checked when there are at most kExhaustiveSubsetLimit of them; otherwise
/// `sample_count` uniform subsets are drawn.
inline constexpr std::uint64_t kExhaustiveSubsetLimit = 100'000;
InducedCheck induced_contains_everywhere(const KGraph& pattern, const KGraph& host, double gamma,
                                         std::uint64_t sample_count, RngStream& rng);

/// Unordered pairs of sets that intersect. Per-vertex buckets, or an inclusion-exclusion
/// subset tally when there are many sets over vertices below 64.
std::uint64_t overlapping_pairs(const std::vector<std::vector<Vertex>>& copies);

}  // namespace tightpow
