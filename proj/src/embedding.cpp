#include "tightpow/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "tightpow/power.hpp"

namespace tightpow {

SequencePlan::SequencePlan(int length, int k, const std::vector<std::vector<int>>& constraints,
                           std::vector<std::optional<Vertex>> pinned, std::vector<int> fill_order)
    : length_(length), k_(k), pinned_(std::move(pinned)), fill_order_(std::move(fill_order)) {
    if (static_cast<int>(pinned_.size()) != length_) throw std::invalid_argument("pinned size mismatch");
    std::vector<int> when(length_, -2);
    for (int p = 0; p < length_; ++p)
        if (pinned_[p]) when[p] = -1;
    for (std::size_t s = 0; s < fill_order_.size(); ++s) {
        int p = fill_order_[s];
        if (p < 0 || p >= length_ || when[p] != -2) throw std::invalid_argument("invalid fill order");
        when[p] = static_cast<int>(s);
    }
    if (std::count(when.begin(), when.end(), -2) != 0) throw std::invalid_argument("fill order misses a position");
    checks_.assign(fill_order_.size(), {});
    for (const auto& c : constraints) {
        if (static_cast<int>(c.size()) != k_) throw std::invalid_argument("constraint arity mismatch");
        int last = -1;
        for (int p : c) last = std::max(last, when[p]);
        if (last < 0)
            pinned_checks_.push_back(c);
        else
            checks_[last].push_back(c);
    }
}

namespace {

class Embedder {
public:
    Embedder(const KGraph& g, const SequencePlan& plan, std::span<const char> available, RngStream& rng)
        : g_(g), plan_(plan), available_(available), rng_(rng), seq_(plan.length(), 0), used_(g.n(), 0) {
        for (int p = 0; p < plan.length(); ++p)
            if (plan.pinned()[p]) {
                seq_[p] = *plan.pinned()[p];
                used_[seq_[p]] = 1;
            }
    }

    bool pinned_ok() const {
        for (const auto& c : plan_.pinned_checks())
            if (!edge_at(c)) return false;
        return true;
    }

    bool attempt(std::uint64_t node_budget) {
        nodes_left_ = node_budget;
        return descend(0);
    }

    const OrderedTuple& sequence() const { return seq_; }

private:
    bool edge_at(const std::vector<int>& positions) const {
        Vertex buf[kMaxUniformity];
        for (int j = 0; j < plan_.k(); ++j) buf[j] = seq_[positions[j]];
        return g_.contains_unsorted(buf);
    }

    bool descend(std::size_t step) {
        if (step == plan_.fill_order().size()) return true;
        const int pos = plan_.fill_order()[step];
        const auto& checks = plan_.checks_at(static_cast<int>(step));
        std::vector<Vertex> cand;
        for (Vertex x = 0; x < g_.n(); ++x) {
            if (used_[x] || !available_[x]) continue;
            seq_[pos] = x;
            bool ok = true;
            for (const auto& c : checks)
                if (!edge_at(c)) {
                    ok = false;
                    break;
                }
            if (ok) cand.push_back(x);
        }
        rng_.shuffle(cand);
        for (Vertex x : cand) {
            if (nodes_left_ == 0) return false;
            --nodes_left_;
            seq_[pos] = x;
            used_[x] = 1;
            if (descend(step + 1)) return true;
            used_[x] = 0;
        }
        return false;
    }

    const KGraph& g_;
    const SequencePlan& plan_;
    std::span<const char> available_;
    RngStream& rng_;
    OrderedTuple seq_;
    std::vector<char> used_;
    std::uint64_t nodes_left_ = 0;
};

std::vector<std::optional<Vertex>> free_positions(int length) { return std::vector<std::optional<Vertex>>(length); }

}  // namespace

std::optional<OrderedTuple> embed_sequence(const KGraph& g, const SequencePlan& plan, std::span<const char> available,
                                           RngStream& rng, const SearchBudget& budget) {
    if (plan.k() != g.k()) throw std::invalid_argument("plan and graph uniformity differ");
    if (available.size() != g.n()) throw std::invalid_argument("availability mask size mismatch");
    for (const auto& p : plan.pinned())
        if (p && *p >= g.n()) throw std::invalid_argument("pinned vertex out of range");
    for (int attempt = 0; attempt < budget.attempts; ++attempt) {
        Embedder e(g, plan, available, rng);
        if (!e.pinned_ok()) return std::nullopt;
        if (e.attempt(budget.nodes_per_attempt)) return e.sequence();
    }
    return std::nullopt;
}

SequencePlan power_path_plan(int k, int r, int m) {
    const int h = k + r - 1;
    if (m < h) throw std::invalid_argument("power path plan needs m >= h");
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    return SequencePlan(m, k, window_constraints(m, k, h, false), free_positions(m), std::move(order));
}

SequencePlan absorber_plan(int k, int r, Vertex v) {
    const int h = k + r - 1;
    const int len = 2 * h + 1;
    auto constraints = window_constraints(len, k, h, false);
    // The 2h-sequence without v, mapped back to positions of the long one.
    std::set<std::vector<int>> all(constraints.begin(), constraints.end());
    for (auto c : window_constraints(2 * h, k, h, false)) {
        for (int& p : c)
            if (p >= h) ++p;
        all.insert(std::move(c));
    }
    auto pinned = free_positions(len);
    pinned[h] = v;
    std::vector<int> order;
    for (int d = 1; d <= h; ++d) {
        order.push_back(h - d);
        order.push_back(h + d);
    }
    return SequencePlan(len, k, {all.begin(), all.end()}, std::move(pinned), std::move(order));
}

SequencePlan connector_plan(int k, int r, std::span<const Vertex> a, std::span<const Vertex> b) {
    const int h = k + r - 1;
    if (static_cast<int>(a.size()) != h || static_cast<int>(b.size()) != h)
        throw std::invalid_argument("connector ends must have h vertices");
    const int len = 4 * h;
    auto pinned = free_positions(len);
    for (int i = 0; i < h; ++i) {
        pinned[i] = a[i];
        pinned[3 * h + i] = b[i];
    }
    std::vector<int> order;
    for (int i = h; i < 2 * h; ++i) order.push_back(i);
    for (int i = 3 * h - 1; i >= 2 * h; --i) order.push_back(i);
    return SequencePlan(len, k, window_constraints(len, k, h, false), std::move(pinned), std::move(order));
}

SequencePlan extension_plan(int k, int r, std::span<const Vertex> end, int extra) {
    const int h = k + r - 1;
    if (static_cast<int>(end.size()) != h) throw std::invalid_argument("extension end must have h vertices");
    const int len = h + extra;
    auto pinned = free_positions(len);
    for (int i = 0; i < h; ++i) pinned[i] = end[i];
    std::vector<int> order;
    for (int i = h; i < len; ++i) order.push_back(i);
    return SequencePlan(len, k, window_constraints(len, k, h, false), std::move(pinned), std::move(order));
}

}  // namespace tightpow
