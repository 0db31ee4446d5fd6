#pragma once

#include <cstdint>
#include <string>

#include "tightpow/kgraph.hpp"

namespace tightpow {

enum class SearchStatus { Found, NotFound, Timeout };

std::string to_string(SearchStatus s);

struct ExactResult {
    SearchStatus status = SearchStatus::NotFound;
    OrderedTuple order;  ///< certificate when Found
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultExactBudget = 100'000'000;

/// Backtracking over cyclic orders with vertex 0 first and order[1] < order[n-1].
/// Each position checks the k-sets of its windows that end there, wrap-around
/// windows included, and candidates are tried fail-first by the number of
/// feasible vertices they leave for the next position. Needs n >= 2h.
ExactResult contains_power_hamilton(const KGraph& g, int r, std::uint64_t budget = kDefaultExactBudget);

/// Every cyclic order with vertex 0 first and order[1] < order[n-1], checked
/// with the plain window predicate. Needs 2h <= n <= 9.
bool brute_force_oracle(const KGraph& g, int r);

}  // namespace tightpow
