#include "tightpow/exact_search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tightpow/power.hpp"

namespace tightpow {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::NotFound: return "not_found";
        case SearchStatus::Timeout: return "timeout";
    }
    return "unknown";
}

namespace {

void check_order(const KGraph& g, int r) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    const std::uint32_t h = static_cast<std::uint32_t>(g.k() + r - 1);
    if (g.n() < 2 * h)
        throw std::invalid_argument("need n >= 2h = " + std::to_string(2 * h) + ", got n = " + std::to_string(g.n()));
}

class HamiltonSearch {
public:
    HamiltonSearch(const KGraph& g, int r, std::uint64_t budget)
        : g_(g), n_(static_cast<int>(g.n())), k_(g.k()), budget_(budget), order_(g.n()), used_(g.n(), 0) {
        const int h = k_ + r - 1;
        by_last_.assign(n_, {});
        for (auto& c : window_constraints(n_, k_, h, true)) {
            const int last = c.back();
            by_last_[last].push_back(std::move(c));
        }
    }

    ExactResult run() {
        ExactResult out;
        order_[0] = 0;
        used_[0] = 1;
        const bool found = fits(0, 0) && descend(1);
        out.nodes = nodes_;
        if (found) {
            out.status = SearchStatus::Found;
            out.order = order_;
        } else {
            out.status = timed_out_ ? SearchStatus::Timeout : SearchStatus::NotFound;
        }
        return out;
    }

private:
    // Constraints ending at `pos` hold with x placed there.
    bool fits(int pos, Vertex x) {
        Vertex buf[kMaxUniformity];
        for (const auto& c : by_last_[pos]) {
            for (int j = 0; j < k_; ++j) buf[j] = c[j] == pos ? x : order_[c[j]];
            if (!g_.contains_unsorted(buf)) return false;
        }
        return true;
    }

    bool admissible(int pos, Vertex x) {
        if (used_[x]) return false;
        if (pos == n_ - 1 && x < order_[1]) return false;
        return fits(pos, x);
    }

    int count_next(int pos) {
        int c = 0;
        for (Vertex y = 0; y < static_cast<Vertex>(n_); ++y)
            if (admissible(pos, y)) ++c;
        return c;
    }

    bool descend(int pos) {
        if (pos == n_) return true;
        if (pos >= 2) {
            // The last vertex must exceed order[1].
            bool any = false;
            for (Vertex y = order_[1] + 1; y < static_cast<Vertex>(n_) && !any; ++y) any = !used_[y];
            if (!any) return false;
        }
        std::vector<std::pair<int, Vertex>> cand;
        for (Vertex x = 0; x < static_cast<Vertex>(n_); ++x) {
            if (!admissible(pos, x)) continue;
            int score = 0;
            if (pos + 1 < n_) {
                order_[pos] = x;
                used_[x] = 1;
                score = count_next(pos + 1);
                used_[x] = 0;
                if (score == 0) continue;  // forward check
            }
            cand.emplace_back(score, x);
        }
        std::sort(cand.begin(), cand.end());
        for (const auto& [score, x] : cand) {
            if (++nodes_ > budget_) {
                timed_out_ = true;
                return false;
            }
            order_[pos] = x;
            used_[x] = 1;
            if (descend(pos + 1)) return true;
            used_[x] = 0;
            if (timed_out_) return false;
        }
        return false;
    }

    const KGraph& g_;
    int n_;
    int k_;
    std::uint64_t budget_;
    std::vector<std::vector<std::vector<int>>> by_last_;
    OrderedTuple order_;
    std::vector<char> used_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace

ExactResult contains_power_hamilton(const KGraph& g, int r, std::uint64_t budget) {
    check_order(g, r);
    ExactResult res = HamiltonSearch(g, r, budget).run();
    if (res.status == SearchStatus::Found && !is_power_hamilton_cycle(g, r, res.order))
        throw std::logic_error("contains_power_hamilton: certificate fails verification");
    return res;
}

bool brute_force_oracle(const KGraph& g, int r) {
    check_order(g, r);
    if (g.n() > 9) throw std::invalid_argument("brute_force_oracle: n must be <= 9");
    const std::uint32_t n = g.n();
    OrderedTuple order(n);
    std::iota(order.begin(), order.end(), 0u);
    do {
        if (order[1] < order[n - 1] && is_power_hamilton_cycle(g, r, order)) return true;
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return false;
}

}  // namespace tightpow
