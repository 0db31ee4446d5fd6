#include "tightpow/power.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace tightpow {
namespace {

void check_kr(int k, int r) {
    if (k < 2 || k > kMaxUniformity) throw std::invalid_argument("k must be in [2, 8]");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
}

// Checks every k-subset of `window` that contains its last element.
bool tail_subsets_are_edges(const KGraph& g, std::span<const Vertex> window) {
    const int k = g.k();
    const int len = static_cast<int>(window.size());
    Vertex buf[kMaxUniformity];
    buf[k - 1] = window[len - 1];
    return for_each_combination(len - 1, k - 1, [&](std::span<const int> idx) {
        for (int j = 0; j < k - 1; ++j) buf[j] = window[idx[j]];
        return g.contains_unsorted(buf);
    });
}

// Path windows: the first h entries form a clique, then each later entry
// forms edges with every (k-1)-subset of the h-1 entries before it.
bool path_windows_ok(const KGraph& g, int h, std::span<const Vertex> tup) {
    const int len = static_cast<int>(tup.size());
    for (int i = g.k() - 1; i < len; ++i) {
        int lo = std::max(0, i - h + 1);
        if (!tail_subsets_are_edges(g, tup.subspan(lo, i - lo + 1))) return false;
    }
    return true;
}

}  // namespace

Parameters Parameters::make(int k, int r) {
    check_kr(k, r);
    if (k + r < 4) throw std::invalid_argument("parameters require k + r >= 4");
    Parameters p;
    p.k = k;
    p.r = r;
    p.h = k + r - 1;
    p.c = threshold_exponent(k, r);
    p.t = g_edges(k, r, 2 * p.h);
    return p;
}

Rational threshold_exponent(int k, int r) {
    check_kr(k, r);
    return Rational(1, static_cast<std::int64_t>(binomial(k + r - 2, k - 1)));
}

std::int64_t g_edges(int k, int r, std::int64_t b) {
    check_kr(k, r);
    const int h = k + r - 1;
    if (b < h) throw std::invalid_argument("g(b) needs b >= h = " + std::to_string(h));
    return static_cast<std::int64_t>(binomial(h, k)) +
           (b - h) * static_cast<std::int64_t>(binomial(h - 1, k - 1));
}

double g_edges_real(int k, int r, double b) {
    check_kr(k, r);
    const int h = k + r - 1;
    return (b - static_cast<double>((k - 1) * h) / k) * static_cast<double>(binomial(h - 1, k - 1));
}

double g_inverse(int k, int r, double y) {
    check_kr(k, r);
    const int h = k + r - 1;
    return y / static_cast<double>(binomial(h - 1, k - 1)) + static_cast<double>((k - 1) * h) / k;
}

std::vector<std::vector<int>> window_constraints(int length, int k, int h, bool cyclic) {
    std::set<std::vector<int>> seen;
    const int starts = cyclic ? length : length - h + 1;
    std::vector<int> window(h), pick(k);
    for (int s = 0; s < starts; ++s) {
        for (int j = 0; j < h; ++j) window[j] = (s + j) % length;
        for_each_combination(h, k, [&](std::span<const int> idx) {
            for (int j = 0; j < k; ++j) pick[j] = window[idx[j]];
            std::vector<int> sorted = pick;
            std::sort(sorted.begin(), sorted.end());
            seen.insert(std::move(sorted));
            return true;
        });
    }
    return {seen.begin(), seen.end()};
}

KGraph power_path(int k, int r, std::uint32_t m) {
    check_kr(k, r);
    const int h = k + r - 1;
    if (static_cast<int>(m) < h) throw std::invalid_argument("power_path needs m >= h = " + std::to_string(h));
    std::vector<std::vector<Vertex>> edges;
    for (const auto& c : window_constraints(static_cast<int>(m), k, h, false))
        edges.emplace_back(c.begin(), c.end());
    return KGraph::build(k, m, edges);
}

KGraph power_cycle(int k, int r, std::uint32_t m) {
    check_kr(k, r);
    const int h = k + r - 1;
    if (static_cast<int>(m) < 2 * h)
        throw std::invalid_argument("power_cycle needs m >= 2h = " + std::to_string(2 * h));
    std::vector<std::vector<Vertex>> edges;
    for (const auto& c : window_constraints(static_cast<int>(m), k, h, true))
        edges.emplace_back(c.begin(), c.end());
    return KGraph::build(k, m, edges);
}

OrderedTuple PowerPathInstance::first_end() const {
    return OrderedTuple(order.begin(), order.begin() + h());
}

OrderedTuple PowerPathInstance::last_end() const {
    return OrderedTuple(order.end() - h(), order.end());
}

bool is_labelled_power_path(const KGraph& g, int r, std::span<const Vertex> tup) {
    check_kr(g.k(), r);
    const int h = g.k() + r - 1;
    if (static_cast<int>(tup.size()) < h)
        throw std::invalid_argument("power path recognition needs at least h = " + std::to_string(h) +
                                    " vertices");
    validate_tuple(tup, g.n());
    return path_windows_ok(g, h, tup);
}

bool is_power_cycle_sequence(const KGraph& g, int r, std::span<const Vertex> tup) {
    check_kr(g.k(), r);
    const int h = g.k() + r - 1;
    const int len = static_cast<int>(tup.size());
    if (len < h)
        throw std::invalid_argument("power cycle recognition needs at least h = " + std::to_string(h) +
                                    " vertices");
    validate_tuple(tup, g.n());
    if (!path_windows_ok(g, h, tup)) return false;
    // Windows that wrap from the tail back to the head.
    std::vector<Vertex> window(h);
    for (int s = len - h + 1; s < len; ++s) {
        for (int j = 0; j < h; ++j) window[j] = tup[(s + j) % len];
        if (!g.spans_clique(window)) return false;
    }
    return true;
}

bool is_power_hamilton_cycle(const KGraph& g, int r, std::span<const Vertex> order) {
    if (order.size() != g.n())
        throw std::invalid_argument("cyclic order must list all " + std::to_string(g.n()) + " vertices");
    validate_tuple(order, g.n());
    return is_power_cycle_sequence(g, r, order);
}

}  // namespace tightpow
