#include "tightpow/probability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tightpow/power.hpp"

namespace tightpow {
namespace {

void check_pattern(const KGraph& f, std::uint64_t n, double p) {
    if (f.edge_count() == 0) throw std::invalid_argument("phi: pattern has no edges");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("phi: p must lie in (0, 1]");
    if (n < f.n()) throw std::invalid_argument("phi: n must be at least the pattern order");
}

PhiReport phi_by_support(const KGraph& f, const std::vector<Vertex>& support, double log_n, double log_p) {
    const int s = static_cast<int>(support.size());
    std::vector<std::uint32_t> edge_masks(f.edge_count());
    std::vector<int> local(f.n(), -1);
    for (int i = 0; i < s; ++i) local[support[i]] = i;
    for (std::size_t e = 0; e < f.edge_count(); ++e)
        for (Vertex v : f.edge(e)) edge_masks[e] |= std::uint32_t{1} << local[v];

    PhiReport rep;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask = 0;
    const std::uint32_t limit = s == 32 ? 0xffffffffu : ((std::uint32_t{1} << s) - 1);
    for (std::uint32_t u = 1; u <= limit && u != 0; ++u) {
        std::size_t e_count = 0;
        for (auto m : edge_masks)
            if ((m & u) == m) ++e_count;
        if (e_count == 0) continue;
        ++rep.candidates_examined;
        double val = std::popcount(u) * log_n + static_cast<double>(e_count) * log_p;
        if (val < best - LogValue::kTolerance) {
            best = val;
            best_mask = u;
        }
    }
    rep.phi = LogValue::from_log(best);
    for (int i = 0; i < s; ++i)
        if (best_mask >> i & 1u) rep.argmin_vertices.push_back(support[i]);
    for (std::size_t e = 0; e < f.edge_count(); ++e)
        if ((edge_masks[e] & best_mask) == edge_masks[e]) rep.argmin_edges.push_back(e);
    return rep;
}

struct EdgeSubsetSearch {
    const KGraph& f;
    double log_n, log_p;
    std::vector<int> cover;  // per vertex: number of chosen edges containing it
    int covered = 0;
    int chosen = 0;
    std::uint32_t mask = 0;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask = 0;
    std::uint64_t examined = 0;

    void run(std::size_t e) {
        if (e == f.edge_count()) {
            if (chosen == 0) return;
            ++examined;
            double val = covered * log_n + chosen * log_p;
            if (val < best - LogValue::kTolerance) {
                best = val;
                best_mask = mask;
            }
            return;
        }
        run(e + 1);
        for (Vertex v : f.edge(e))
            if (cover[v]++ == 0) ++covered;
        ++chosen;
        mask |= std::uint32_t{1} << e;
        run(e + 1);
        mask &= ~(std::uint32_t{1} << e);
        --chosen;
        for (Vertex v : f.edge(e))
            if (--cover[v] == 0) --covered;
    }
};

}  // namespace

PhiReport phi(const KGraph& pattern, std::uint64_t n, double p) {
    check_pattern(pattern, n, p);
    const double log_n = std::log(static_cast<double>(n));
    const double log_p = std::log(p);

    std::vector<Vertex> support;
    {
        std::vector<char> used(pattern.n(), 0);
        for (std::size_t e = 0; e < pattern.edge_count(); ++e)
            for (Vertex v : pattern.edge(e)) used[v] = 1;
        for (Vertex v = 0; v < pattern.n(); ++v)
            if (used[v]) support.push_back(v);
    }
    if (static_cast<int>(support.size()) <= kPhiVertexCap) return phi_by_support(pattern, support, log_n, log_p);

    if (static_cast<int>(pattern.edge_count()) > kPhiEdgeCap)
        throw std::invalid_argument("phi: pattern exceeds the enumeration cap (" + std::to_string(kPhiVertexCap) +
                                    " non-isolated vertices or " + std::to_string(kPhiEdgeCap) + " edges)");
    EdgeSubsetSearch search{pattern, log_n, log_p, std::vector<int>(pattern.n(), 0)};
    search.run(0);
    PhiReport rep;
    rep.phi = LogValue::from_log(search.best);
    rep.candidates_examined = search.examined;
    std::vector<char> in(pattern.n(), 0);
    for (std::size_t e = 0; e < pattern.edge_count(); ++e) {
        if (!(search.best_mask >> e & 1u)) continue;
        rep.argmin_edges.push_back(e);
        for (Vertex v : pattern.edge(e)) in[v] = 1;
    }
    for (Vertex v = 0; v < pattern.n(); ++v)
        if (in[v]) rep.argmin_vertices.push_back(v);
    return rep;
}

LogValue expected_labelled_copies(const KGraph& pattern, std::uint64_t n, double p) {
    if (n < pattern.n()) throw std::invalid_argument("expected copies: n must be at least the pattern order");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("expected copies: p must lie in [0, 1]");
    if (p == 0.0 && pattern.edge_count() > 0) return LogValue::zero();
    return LogValue::from_log(log_falling_factorial(n, pattern.n()) +
                              static_cast<double>(pattern.edge_count()) * std::log(p));
}

LogValue delta_bound(const KGraph& pattern, std::uint64_t n, double p) {
    auto rep = phi(pattern, n, p);
    const double s = pattern.n();
    const double f = static_cast<double>(pattern.edge_count());
    double l = std::lgamma(s + 1) + 2 * s * std::log(2.0) + 2 * s * std::log(static_cast<double>(n)) +
               2 * f * std::log(p);
    return LogValue::from_log(l) / rep.phi;
}

double janson_tail(LogValue lambda, double slack, LogValue delta) {
    if (!(slack >= 0.0)) throw std::invalid_argument("janson_tail: slack must be >= 0");
    if (slack > 0.0 && std::log(slack) > lambda.log() + LogValue::kTolerance)
        throw std::invalid_argument("janson_tail: slack must not exceed lambda");
    if (delta.is_zero()) throw std::invalid_argument("janson_tail: delta must be positive");
    if (slack == 0.0) return 1.0;
    const double exponent = std::exp(2 * std::log(slack) - std::log(2.0) - delta.log());
    return std::clamp(std::exp(-exponent), 0.0, 1.0);
}

double chebyshev_tail(LogValue lambda, LogValue delta) {
    if (lambda.is_zero()) throw std::invalid_argument("chebyshev_tail: lambda must be positive");
    if (delta.is_zero()) return 0.0;
    const double l = delta.log() - 2 * lambda.log();
    return l >= 0.0 ? 1.0 : std::exp(l);
}

Rational epsilon_cap(int k, int r, std::int64_t b) {
    auto params = Parameters::make(k, r);
    if (b < params.h) throw std::invalid_argument("epsilon_cap needs b >= h = " + std::to_string(params.h));
    Rational a(1, 2 * g_edges(k, r, b));
    Rational c(1, 3 * static_cast<std::int64_t>(binomial(params.h, k)));
    return min(a, c);
}

PhiThresholdCheck phi_threshold_check(int k, int r, std::int64_t b, double C, std::uint64_t n, double epsilon) {
    const Rational cap = epsilon_cap(k, r, b);
    if (!(epsilon > 0.0 && epsilon < cap.to_double()))
        throw std::invalid_argument("phi_threshold_check: epsilon must lie strictly inside (0, cap)");
    if (!(C > 0.0)) throw std::invalid_argument("phi_threshold_check: C must be positive");
    auto params = Parameters::make(k, r);
    PhiThresholdCheck out;
    const double log_n = std::log(static_cast<double>(n));
    out.p = std::exp(-(params.c.to_double() + epsilon) * log_n);
    out.phi = phi(power_path(k, r, static_cast<std::uint32_t>(b)), n, out.p);
    out.threshold = LogValue::from_log(std::log(C) + log_n);
    out.holds = out.phi.phi >= out.threshold;
    return out;
}

double first_moment_log(int k, int r, std::uint64_t n, double p, bool cyclic) {
    const int h = k + r - 1;
    if (k < 2 || r < 1) throw std::invalid_argument("first_moment_log: need k >= 2, r >= 1");
    if (n < static_cast<std::uint64_t>(2 * h)) throw std::invalid_argument("first_moment_log: need n >= 2h");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("first_moment_log: p must lie in [0, 1]");
    const double edges = cyclic ? static_cast<double>(n) * static_cast<double>(binomial(h - 1, k - 1))
                                : static_cast<double>(g_edges(k, r, static_cast<std::int64_t>(n)));
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(n) + 1) + edges * std::log(p);
}

double split_probability(double p, int rounds) {
    if (rounds < 1) throw std::invalid_argument("split_probability: rounds must be >= 1");
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("split_probability: p must lie in [0, 1)");
    if (rounds == 1) return p;
    if (rounds == 2) return 1.0 - std::sqrt(1.0 - p);
    return -std::expm1(std::log1p(-p) / rounds);
}

}  // namespace tightpow
