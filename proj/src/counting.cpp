#include "tightpow/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace tightpow {
namespace {

// Inclusion-exclusion tally for vertex sets inside {0..63}: c(S) counts the sets
// containing S, and sum_S (-1)^|S| c(S)^2 is the number of ordered disjoint pairs.
class SubsetTally {
public:
    explicit SubsetTally(std::size_t max_entries) : max_entries_(max_entries) {}

    // False once the table outgrows its limit.
    bool add(std::span<const Vertex> set) {
        std::uint64_t mask = 0;
        for (Vertex v : set) mask |= std::uint64_t{1} << v;
        ++total_;
        for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
            ++counts_[sub];
            if (sub == 0) break;
        }
        return counts_.size() <= max_entries_;
    }

    std::uint64_t overlapping_pairs() const {
        __int128 disjoint_ordered = 0;
        for (const auto& [mask, c] : counts_) {
            const __int128 sq = static_cast<__int128>(c) * c;
            disjoint_ordered += (__builtin_popcountll(mask) & 1) ? -sq : sq;
        }
        const __int128 all = static_cast<__int128>(total_) * (total_ - (total_ > 0 ? 1 : 0)) / 2;
        return static_cast<std::uint64_t>(all - disjoint_ordered / 2);
    }

private:
    std::size_t max_entries_;
    std::uint64_t total_ = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> counts_;
};

std::uint64_t overlapping_pairs_by_buckets(const std::vector<std::vector<Vertex>>& copies) {
    Vertex top = 0;
    for (const auto& c : copies)
        for (Vertex v : c) top = std::max(top, v + 1);
    std::vector<std::vector<std::uint32_t>> bucket(top);
    for (std::size_t i = 0; i < copies.size(); ++i)
        for (Vertex v : copies[i]) bucket[v].push_back(static_cast<std::uint32_t>(i));

    std::vector<std::uint32_t> stamp(copies.size(), ~std::uint32_t{0});
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < copies.size(); ++i) {
        for (Vertex v : copies[i]) {
            for (auto j : bucket[v]) {
                if (j <= i || stamp[j] == i) continue;
                stamp[j] = static_cast<std::uint32_t>(i);
                ++pairs;
            }
        }
    }
    return pairs;
}

constexpr int kMaxPatternOrder = 12;

// Injection search for a fixed pattern. Pattern vertices are placed in `order`;
// at step i the pattern edges whose last vertex (in that order) is order[i]
// are checked, and the first of them drives candidate generation through the
// host neighborhood of the other k-1 images.
class CopySearch {
public:
    CopySearch(const KGraph& pattern, const KGraph& host, std::span<const char> allowed)
        : f_(pattern), g_(host), allowed_(allowed) {
        if (pattern.k() != host.k()) throw std::invalid_argument("pattern and host uniformity differ");
        if (pattern.n() > kMaxPatternOrder)
            throw std::invalid_argument("pattern order exceeds " + std::to_string(kMaxPatternOrder));
        plan();
        image_.assign(f_.n(), 0);
        used_.assign(g_.n(), 0);
    }

    // Visits every complete injection; the callback returns false to stop.
    template <typename Visit>
    void run(std::uint64_t budget, Visit&& visit) {
        budget_ = budget;
        nodes_ = 0;
        truncated_ = false;
        stopped_ = false;
        if (f_.n() > g_.n()) return;
        descend(0, visit);
    }

    std::uint64_t nodes() const { return nodes_; }
    bool truncated() const { return truncated_; }
    const std::vector<Vertex>& image() const { return image_; }

private:
    void plan() {
        const int nf = static_cast<int>(f_.n());
        std::vector<int> degree(nf, 0);
        for (std::size_t e = 0; e < f_.edge_count(); ++e)
            for (Vertex v : f_.edge(e)) ++degree[v];
        std::vector<char> placed(nf, 0);
        std::vector<int> pos(nf, -1);
        for (int step = 0; step < nf; ++step) {
            int best = -1, best_closed = -1;
            for (int v = 0; v < nf; ++v) {
                if (placed[v]) continue;
                int closed = 0;
                for (std::size_t e = 0; e < f_.edge_count(); ++e) {
                    auto ed = f_.edge(e);
                    bool has_v = false, others_placed = true;
                    for (Vertex u : ed) {
                        if (static_cast<int>(u) == v)
                            has_v = true;
                        else if (!placed[u])
                            others_placed = false;
                    }
                    if (has_v && others_placed) ++closed;
                }
                if (closed > best_closed || (closed == best_closed && degree[v] > degree[best])) {
                    best = v;
                    best_closed = closed;
                }
            }
            placed[best] = 1;
            pos[best] = step;
            order_.push_back(static_cast<Vertex>(best));
        }
        closing_.assign(nf, {});
        for (std::size_t e = 0; e < f_.edge_count(); ++e) {
            int last = -1;
            for (Vertex u : f_.edge(e)) last = std::max(last, pos[u]);
            closing_[last].push_back(e);
        }
    }

    bool allowed(Vertex v) const { return allowed_.empty() || allowed_[v]; }

    template <typename Visit>
    void descend(int step, Visit& visit) {
        if (stopped_) return;
        if (step == static_cast<int>(order_.size())) {
            if (!visit(image_)) stopped_ = true;
            return;
        }
        const Vertex fv = order_[step];
        const auto& closing = closing_[step];
        const int k = f_.k();
        Vertex buf[kMaxUniformity];

        auto consistent = [&](Vertex x) {
            for (std::size_t e : closing) {
                auto ed = f_.edge(e);
                for (int j = 0; j < k; ++j) buf[j] = ed[j] == fv ? x : image_[ed[j]];
                if (!g_.contains_unsorted(buf)) return false;
            }
            return true;
        };
        auto try_vertex = [&](Vertex x) {
            if (used_[x] || !allowed(x) || !consistent(x)) return;
            if (++nodes_ > budget_) {
                truncated_ = stopped_ = true;
                return;
            }
            image_[fv] = x;
            used_[x] = 1;
            descend(step + 1, visit);
            used_[x] = 0;
        };

        for (Vertex x = 0; x < g_.n() && !stopped_; ++x) try_vertex(x);
    }

    const KGraph& f_;
    const KGraph& g_;
    std::span<const char> allowed_;
    std::vector<Vertex> order_;
    std::vector<std::vector<std::size_t>> closing_;
    std::vector<Vertex> image_;
    std::vector<char> used_;
    std::uint64_t budget_ = 0;
    std::uint64_t nodes_ = 0;
    bool truncated_ = false;
    bool stopped_ = false;
};

}  // namespace

CopyCountReport count_labelled_copies(const KGraph& pattern, const KGraph& host, const CountOptions& opt) {
    if (opt.budget == 0) throw std::invalid_argument("count budget must be positive");
    CopySearch search(pattern, host, {});
    CopyCountReport rep;
    // Small hosts tally vertex subsets on the fly; larger ones keep the copies.
    const bool use_tally = host.n() <= 64;
    SubsetTally tally(opt.max_stored_copies);
    std::vector<std::vector<Vertex>> stored;
    bool track = opt.count_overlaps;
    search.run(opt.budget, [&](const std::vector<Vertex>& img) {
        ++rep.labelled_count;
        if (!track) return true;
        if (use_tally) {
            track = tally.add(img);
        } else if (stored.size() >= opt.max_stored_copies) {
            track = false;
            stored.clear();
            stored.shrink_to_fit();
        } else {
            stored.push_back(img);
        }
        return true;
    });
    rep.nodes = search.nodes();
    rep.truncated = search.truncated();
    if (track) {
        rep.overlapping_pairs = use_tally ? tally.overlapping_pairs() : overlapping_pairs_by_buckets(stored);
        rep.overlaps_counted = true;
    }
    return rep;
}

std::optional<std::vector<Vertex>> find_copy(const KGraph& pattern, const KGraph& host, std::span<const char> allowed,
                                             std::uint64_t budget) {
    if (!allowed.empty() && allowed.size() != host.n()) throw std::invalid_argument("allowed mask size mismatch");
    CopySearch search(pattern, host, allowed);
    std::optional<std::vector<Vertex>> found;
    search.run(budget, [&](const std::vector<Vertex>& img) {
        found = img;
        return false;
    });
    return found;
}

std::uint64_t count_in_family(const KGraph& pattern, const KGraph& host, const std::vector<OrderedTuple>& family) {
    if (pattern.k() != host.k()) throw std::invalid_argument("pattern and host uniformity differ");
    const int k = pattern.k();
    Vertex buf[kMaxUniformity];
    std::uint64_t hits = 0;
    for (const auto& t : family) {
        if (t.size() != pattern.n())
            throw std::invalid_argument("family tuple has length " + std::to_string(t.size()) + ", expected " +
                                        std::to_string(pattern.n()));
        validate_tuple(t, host.n());
        bool ok = true;
        for (std::size_t e = 0; e < pattern.edge_count() && ok; ++e) {
            auto ed = pattern.edge(e);
            for (int j = 0; j < k; ++j) buf[j] = t[ed[j]];
            ok = host.contains_unsorted(buf);
        }
        if (ok) ++hits;
    }
    return hits;
}

InducedCheck induced_contains_everywhere(const KGraph& pattern, const KGraph& host, double gamma,
                                         std::uint64_t sample_count, RngStream& rng) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
    const std::uint32_t n = host.n();
    const auto size = static_cast<std::uint32_t>(std::ceil(gamma * n - 1e-9));
    if (size < pattern.n()) throw std::invalid_argument("ceil(gamma n) is smaller than the pattern order");

    InducedCheck out;
    std::vector<char> mask(n, 0);
    auto check = [&]() {
        ++out.sampled;
        if (!find_copy(pattern, host, mask)) ++out.failures;
    };

    std::uint64_t subsets = 0;
    try {
        subsets = binomial(n, size);
    } catch (const std::overflow_error&) {
        subsets = ~std::uint64_t{0};
    }
    if (subsets <= kExhaustiveSubsetLimit) {
        out.exhaustive = true;
        for_each_combination(static_cast<int>(n), static_cast<int>(size), [&](std::span<const int> idx) {
            std::fill(mask.begin(), mask.end(), 0);
            for (int i : idx) mask[i] = 1;
            check();
            return true;
        });
        return out;
    }
    std::vector<Vertex> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (std::uint64_t s = 0; s < sample_count; ++s) {
        // Partial Fisher-Yates: the first `size` entries form a uniform subset.
        for (std::uint32_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
        std::fill(mask.begin(), mask.end(), 0);
        for (std::uint32_t i = 0; i < size; ++i) mask[perm[i]] = 1;
        check();
    }
    return out;
}

std::uint64_t overlapping_pairs(const std::vector<std::vector<Vertex>>& copies) {
    bool small = true;
    for (const auto& c : copies)
        for (Vertex v : c) small = small && v < 64;
    // Buckets cost about (sum of bucket sizes)^2 / n; the tally is linear in the
    // number of sets, so it wins once there are many.
    if (!small || copies.size() < 2048) return overlapping_pairs_by_buckets(copies);
    SubsetTally tally(~std::size_t{0});
    for (const auto& c : copies) tally.add(c);
    return tally.overlapping_pairs();
}

}  // namespace tightpow
