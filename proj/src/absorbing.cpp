#include "tightpow/absorbing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>

#include "tightpow/probability.hpp"
#include "tightpow/random_model.hpp"

namespace tightpow {
namespace {

int window_of(int k, int r) { return k + r - 1; }

std::vector<char> full_mask(std::span<const char> available, std::uint32_t n) {
    if (available.empty()) return std::vector<char>(n, 1);
    if (available.size() != n) throw std::invalid_argument("availability mask size mismatch");
    return {available.begin(), available.end()};
}

std::string show(std::span<const Vertex> t) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
}

OrderedTuple concat(std::span<const Vertex> a, std::span<const Vertex> b, std::span<const Vertex> c) {
    OrderedTuple out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

std::span<const Vertex> head(const OrderedTuple& t, int h) { return {t.data(), static_cast<std::size_t>(h)}; }
std::span<const Vertex> tail(const OrderedTuple& t, int h) {
    return {t.data() + t.size() - static_cast<std::size_t>(h), static_cast<std::size_t>(h)};
}

// Extends `seq` by h vertices past its last end (or before its first end).
std::optional<OrderedTuple> extend_end(const KGraph& g, int r, const OrderedTuple& seq, bool front,
                                       std::vector<char>& avail, RngStream& rng, const SearchBudget& budget) {
    const int h = window_of(g.k(), r);
    OrderedTuple s = seq;
    if (front) std::reverse(s.begin(), s.end());
    auto plan = extension_plan(g.k(), r, tail(s, h), h);
    auto found = embed_sequence(g, plan, avail, rng, budget);
    if (!found) return std::nullopt;
    for (int i = h; i < 2 * h; ++i) {
        s.push_back((*found)[i]);
        avail[(*found)[i]] = 0;
    }
    if (front) std::reverse(s.begin(), s.end());
    return s;
}

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}
    template <typename F>
    auto run(const std::string& stage, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        struct Record {
            std::vector<StageTiming>& out;
            const std::string& stage;
            std::chrono::steady_clock::time_point t0;
            ~Record() {
                const auto dt = std::chrono::steady_clock::now() - t0;
                out.push_back({stage, std::chrono::duration<double, std::milli>(dt).count()});
            }
        } rec{out_, stage, t0};
        return f();
    }

private:
    std::vector<StageTiming>& out_;
};

}  // namespace

void PipelineConfig::validate() const {
    auto in01 = [](double x) { return x > 0.0 && x < 1.0; };
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (!(in01(epsilon) && in01(beta) && in01(zeta) && in01(alpha) && in01(gamma)))
        throw std::invalid_argument("hierarchy constants must lie in (0,1)");
    if (!(epsilon < beta && beta < zeta && zeta < alpha))
        throw std::invalid_argument("hierarchy must satisfy epsilon < beta < zeta < alpha");
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (connector_target < 0 || absorber_target < 0 || cover_segment_length < 0)
        throw std::invalid_argument("targets must be >= 1 (0 selects the default)");
    if (selection_q_override && !(*selection_q_override > 0.0 && *selection_q_override <= 1.0))
        throw std::invalid_argument("selection_q_override must lie in (0,1]");
    if (candidate_limit < 1) throw std::invalid_argument("candidate_limit must be >= 1");
    if (search.attempts < 1 || search.nodes_per_attempt < 1) throw std::invalid_argument("search budget must be positive");
    if (n_floor_factor < 2) throw std::invalid_argument("n_floor_factor must be >= 2");
}

int PipelineConfig::resolved_connector_target(std::uint32_t n, int h) const {
    if (connector_target > 0) return connector_target;
    const double x = beta * beta * n / (4.0 * h * h);
    return std::max(2, static_cast<int>(std::ceil(x - 1e-12)));
}

int PipelineConfig::resolved_absorber_target(std::uint32_t n, int h) const {
    if (absorber_target > 0) return absorber_target;
    const double x = zeta * zeta * n / (4.0 * h * h);
    return std::max(1, static_cast<int>(std::ceil(x - 1e-12)));
}

int PipelineConfig::resolved_segment_length(int k, int h) const {
    if (cover_segment_length > 0) {
        if (cover_segment_length < 2 * h) throw std::invalid_argument("cover_segment_length must be >= 2h");
        return cover_segment_length;
    }
    const int r = h - k + 1;
    const double m = g_inverse(k, r, 1.0 / (2.0 * epsilon));
    return std::max(2 * h, static_cast<int>(std::llround(m)));
}

void PathSystem::add(PowerPathInstance p) {
    for (Vertex v : p.order)
        if (used[v]) throw std::logic_error("path system: vertex " + std::to_string(v) + " already used");
    for (Vertex v : p.order) used[v] = 1;
    paths.push_back(std::move(p));
}

std::size_t PathSystem::vertex_count() const {
    std::size_t s = 0;
    for (const auto& p : paths) s += p.size();
    return s;
}

void VertexLedger::claim(std::span<const Vertex> vs, const std::string& stage) {
    for (Vertex v : vs) {
        if (!owner_[v].empty())
            throw std::logic_error("vertex " + std::to_string(v) + " claimed by " + stage + " but owned by " +
                                   owner_[v]);
        owner_[v] = stage;
    }
}

void VertexLedger::release(std::span<const Vertex> vs) {
    for (Vertex v : vs) owner_[v].clear();
}

bool is_absorber_for(const KGraph& g, int r, std::span<const Vertex> tuple, Vertex v) {
    const int h = window_of(g.k(), r);
    if (static_cast<int>(tuple.size()) != 2 * h) throw std::invalid_argument("absorber must have 2h vertices");
    if (std::find(tuple.begin(), tuple.end(), v) != tuple.end()) return false;
    if (!is_labelled_power_path(g, r, tuple)) return false;
    OrderedTuple with(tuple.begin(), tuple.begin() + h);
    with.push_back(v);
    with.insert(with.end(), tuple.begin() + h, tuple.end());
    return is_labelled_power_path(g, r, with);
}

std::vector<OrderedTuple> find_absorbers(const KGraph& work, int r, Vertex v, int limit, RngStream& rng,
                                         std::span<const char> available, const SearchBudget& budget) {
    if (v >= work.n()) throw std::invalid_argument("find_absorbers: vertex out of range");
    const int h = window_of(work.k(), r);
    auto avail = full_mask(available, work.n());
    avail[v] = 0;
    const auto plan = absorber_plan(work.k(), r, v);
    std::set<OrderedTuple> seen;
    std::vector<OrderedTuple> out;
    for (int call = 0; call < 4 * limit && static_cast<int>(out.size()) < limit; ++call) {
        auto s = embed_sequence(work, plan, avail, rng, budget);
        if (!s) break;
        OrderedTuple t(s->begin(), s->begin() + h);
        t.insert(t.end(), s->begin() + h + 1, s->end());
        if (!seen.insert(t).second) continue;
        if (!is_absorber_for(work, r, t, v)) throw std::logic_error("find_absorbers: embedded tuple fails verification");
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<OrderedTuple> find_connectors(const KGraph& work, int r, std::span<const Vertex> a,
                                          std::span<const Vertex> b, int limit, RngStream& rng,
                                          std::span<const char> available, const SearchBudget& budget) {
    const int h = window_of(work.k(), r);
    if (static_cast<int>(a.size()) != h || static_cast<int>(b.size()) != h)
        throw std::invalid_argument("find_connectors: ends must have h vertices");
    OrderedTuple ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    validate_tuple(ab, work.n());
    if (!work.spans_clique(a) || !work.spans_clique(b))
        throw std::invalid_argument("find_connectors: ends " + show(a) + " and " + show(b) + " must span cliques");
    auto avail = full_mask(available, work.n());
    const auto plan = connector_plan(work.k(), r, a, b);
    std::set<OrderedTuple> seen;
    std::vector<OrderedTuple> out;
    for (int call = 0; call < 4 * limit && static_cast<int>(out.size()) < limit; ++call) {
        auto s = embed_sequence(work, plan, avail, rng, budget);
        if (!s) break;
        OrderedTuple c(s->begin() + h, s->begin() + 3 * h);
        if (!seen.insert(c).second) continue;
        if (!is_labelled_power_path(work, r, *s)) throw std::logic_error("find_connectors: result fails verification");
        out.push_back(std::move(c));
    }
    return out;
}

PathSystem build_connector_reservoir(const KGraph& work, int r, std::span<const char> available, int target,
                                     double p, const PipelineConfig& cfg, RngStream& rng) {
    if (target < 1) throw std::invalid_argument("reservoir target must be >= 1");
    const int k = work.k();
    const int h = window_of(k, r);
    const std::uint32_t n = work.n();
    auto avail = full_mask(available, n);
    const auto plan = power_path_plan(k, r, 2 * h);

    std::set<OrderedTuple> seen;
    std::vector<OrderedTuple> cand;
    for (int call = 0; call < 4 * cfg.candidate_limit && static_cast<int>(cand.size()) < cfg.candidate_limit; ++call) {
        auto s = embed_sequence(work, plan, avail, rng, cfg.search);
        if (!s) break;
        if (seen.insert(*s).second) cand.push_back(std::move(*s));
    }

    double q = 1.0;
    if (cfg.selection_q_override) {
        q = *cfg.selection_q_override;
    } else if (p > 0.0) {
        const double t = static_cast<double>(g_edges(k, r, 2 * h));
        const double lq = std::log(cfg.beta) - std::log(2.0) - 2.0 * std::log(2.0 * h) -
                          (2.0 * h - 1.0) * std::log(static_cast<double>(n)) - t * std::log(p);
        q = lq >= 0.0 ? 1.0 : std::exp(lq);
    }

    PathSystem sys(n);
    std::vector<char> kept(cand.size(), 0);
    auto disjoint = [&](const OrderedTuple& t) {
        return std::none_of(t.begin(), t.end(), [&](Vertex v) { return sys.used[v] != 0; });
    };
    for (std::size_t i = 0; i < cand.size(); ++i)
        if (rng.bernoulli(q)) kept[i] = 1;
    // Overlap deletion: a kept candidate meeting an earlier kept one is dropped.
    for (std::size_t i = 0; i < cand.size() && static_cast<int>(sys.paths.size()) < target; ++i)
        if (kept[i] && disjoint(cand[i])) sys.add({k, r, cand[i]});
    for (std::size_t i = 0; i < cand.size() && static_cast<int>(sys.paths.size()) < target; ++i)
        if (!kept[i] && disjoint(cand[i])) sys.add({k, r, cand[i]});
    while (static_cast<int>(sys.paths.size()) < target) {
        for (Vertex v = 0; v < n; ++v)
            if (sys.used[v]) avail[v] = 0;
        auto s = embed_sequence(work, plan, avail, rng, cfg.search);
        if (!s) break;
        sys.add({k, r, std::move(*s)});
    }
    if (static_cast<int>(sys.paths.size()) < target)
        throw StageFailure("reservoir", "found " + std::to_string(sys.paths.size()) + " disjoint connectors, need " +
                                            std::to_string(target));
    return sys;
}

AbsorbingPath build_absorbing_path(const KGraph& work, const PipelineConfig& cfg, RngStream& rng) {
    const int k = work.k();
    const int r = cfg.r;
    const int h = window_of(k, r);
    const std::uint32_t n = work.n();
    const int target = cfg.resolved_absorber_target(n, h);

    std::vector<OrderedTuple> family;
    std::vector<char> in_family(n, 0);
    std::vector<int> cover(n, 0);
    std::vector<Vertex> queue(n);
    for (Vertex v = 0; v < n; ++v) queue[v] = v;
    rng.shuffle(queue);

    auto deficient = [&](Vertex u) { return !in_family[u] && cover[u] < target; };
    for (Vertex v : queue) {
        while (deficient(v)) {
            std::vector<char> avail(n);
            for (Vertex u = 0; u < n; ++u) avail[u] = !in_family[u];
            auto cand = find_absorbers(work, r, v, cfg.candidate_limit, rng, avail, cfg.search);
            if (cand.empty())
                throw StageFailure("absorber harvest", "vertex " + std::to_string(v) + " has " +
                                                           std::to_string(cover[v]) + " of " + std::to_string(target) +
                                                           " absorbers and no further one was found");
            // Prefer the candidate that serves the most still-deficient vertices.
            std::size_t best = 0;
            int best_score = -1;
            for (std::size_t i = 0; i < cand.size(); ++i) {
                int score = 0;
                for (Vertex u = 0; u < n; ++u)
                    if (deficient(u) && is_absorber_for(work, r, cand[i], u)) ++score;
                if (score > best_score) {
                    best = i;
                    best_score = score;
                }
            }
            const OrderedTuple& t = cand[best];
            for (Vertex u : t) in_family[u] = 1;
            for (Vertex u = 0; u < n; ++u)
                if (!in_family[u] && is_absorber_for(work, r, t, u)) ++cover[u];
            family.push_back(t);
        }
    }

    std::vector<char> avail(n);
    for (Vertex u = 0; u < n; ++u) avail[u] = !in_family[u];

    // Each segment keeps the offset of its absorber.
    struct Segment {
        OrderedTuple seq;
        std::size_t absorber_at = 0;
    };
    std::vector<Segment> segments;
    for (const auto& t : family) {
        Segment s{t, 0};
        if (cfg.extend_absorber_ends) {
            auto back = extend_end(work, r, s.seq, false, avail, rng, cfg.search);
            auto both = back ? extend_end(work, r, *back, true, avail, rng, cfg.search) : std::nullopt;
            if (!both) throw StageFailure("absorber extension", "cannot extend absorber " + show(t));
            s.seq = std::move(*both);
            s.absorber_at = static_cast<std::size_t>(h);
        }
        segments.push_back(std::move(s));
    }

    AbsorbingPath out;
    out.path = {k, r, {}};
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i > 0) {
            const auto& prev = out.path.order;
            auto conn = find_connectors(work, r, tail(prev, h), head(segments[i].seq, h), 1, rng, avail, cfg.search);
            if (conn.empty())
                throw StageFailure("absorber chaining", "no connector between " + show(tail(prev, h)) + " and " +
                                                            show(head(segments[i].seq, h)));
            for (Vertex u : conn[0]) avail[u] = 0;
            out.path.order.insert(out.path.order.end(), conn[0].begin(), conn[0].end());
        }
        const std::size_t base = out.path.order.size();
        out.registry.absorbers.push_back({family[i], base + segments[i].absorber_at});
        out.path.order.insert(out.path.order.end(), segments[i].seq.begin(), segments[i].seq.end());
    }

    std::vector<char> on_path(n, 0);
    for (Vertex u : out.path.order) on_path[u] = 1;
    out.registry.by_vertex.assign(n, {});
    for (std::size_t a = 0; a < out.registry.absorbers.size(); ++a)
        for (Vertex u = 0; u < n; ++u)
            if (!on_path[u] && is_absorber_for(work, r, out.registry.absorbers[a].tuple, u))
                out.registry.by_vertex[u].push_back(a);

    if (!is_labelled_power_path(work, r, out.path.order))
        throw std::logic_error("build_absorbing_path: result is not a power path");
    for (Vertex u = 0; u < n; ++u)
        if (!on_path[u] && static_cast<int>(out.registry.by_vertex[u].size()) < target)
            throw std::logic_error("build_absorbing_path: registry below target at vertex " + std::to_string(u));
    return out;
}

CoverResult greedy_path_cover(const KGraph& work, int r, std::span<const char> forbidden, int m, int max_paths,
                              const PipelineConfig& cfg, RngStream& rng) {
    const int k = work.k();
    const int h = window_of(k, r);
    const std::uint32_t n = work.n();
    if (m < 2 * h) throw std::invalid_argument("greedy_path_cover: m must be >= 2h");
    if (!forbidden.empty() && forbidden.size() != n) throw std::invalid_argument("forbidden mask size mismatch");
    std::vector<char> avail(n, 1);
    if (!forbidden.empty())
        for (Vertex v = 0; v < n; ++v) avail[v] = !forbidden[v];

    CoverResult out{PathSystem(n), {}};
    const auto plan = power_path_plan(k, r, m);
    while (max_paths < 0 || static_cast<int>(out.system.paths.size()) < max_paths) {
        if (std::count(avail.begin(), avail.end(), 1) < m) break;
        auto s = embed_sequence(work, plan, avail, rng, cfg.search);
        if (!s) break;
        for (Vertex v : *s) avail[v] = 0;
        out.system.add({k, r, std::move(*s)});
    }
    for (Vertex v = 0; v < n; ++v)
        if (avail[v]) out.leftover.push_back(v);
    return out;
}

std::vector<Vertex> insert_into_cycle(const KGraph& g, int r, OrderedTuple& cycle, std::size_t protect,
                                      std::vector<Vertex> leftover) {
    const int k = g.k();
    const int h = window_of(k, r);
    Vertex buf[kMaxUniformity];
    // Inserting x after position i: every window through x must be a clique.
    auto fits = [&](std::size_t i, Vertex x) {
        const auto len = static_cast<std::ptrdiff_t>(cycle.size());
        for (int before = 0; before < h; ++before) {
            std::vector<Vertex> others;
            for (int j = before - 1; j >= 0; --j)
                others.push_back(cycle[((static_cast<std::ptrdiff_t>(i) - j) % len + len) % len]);
            for (int j = 0; j < h - 1 - before; ++j)
                others.push_back(cycle[(static_cast<std::ptrdiff_t>(i) + 1 + j) % len]);
            bool ok = true;
            for_each_combination(h - 1, k - 1, [&](std::span<const int> idx) {
                for (int j = 0; j < k - 1; ++j) buf[j] = others[idx[j]];
                buf[k - 1] = x;
                ok = g.contains_unsorted(buf);
                return ok;
            });
            if (!ok) return false;
        }
        return true;
    };

    bool progress = true;
    while (progress && !leftover.empty()) {
        progress = false;
        std::vector<Vertex> rest;
        for (Vertex x : leftover) {
            bool placed = false;
            if (cycle.size() + 1 > static_cast<std::size_t>(h))
                for (std::size_t i = protect == 0 ? 0 : protect - 1; i < cycle.size(); ++i)
                    if (fits(i, x)) {
                        cycle.insert(cycle.begin() + static_cast<std::ptrdiff_t>(i) + 1, x);
                        placed = progress = true;
                        break;
                    }
            if (!placed) rest.push_back(x);
        }
        leftover = std::move(rest);
    }
    return leftover;
}

OrderedTuple close_cycle(const KGraph& g, int r, const PowerPathInstance& p_abs, const PathSystem& paths,
                         PathSystem& reservoir) {
    const int h = window_of(g.k(), r);
    if (static_cast<int>(p_abs.size()) < h) throw std::invalid_argument("close_cycle: absorbing path shorter than h");
    std::vector<char> spent(reservoir.paths.size(), 0);

    auto connect = [&](std::span<const Vertex> a, std::span<const Vertex> b) -> std::optional<OrderedTuple> {
        for (std::size_t i = 0; i < reservoir.paths.size(); ++i) {
            if (spent[i]) continue;
            OrderedTuple c = reservoir.paths[i].order;
            for (int orient = 0; orient < 2; ++orient) {
                if (orient == 1) std::reverse(c.begin(), c.end());
                if (is_labelled_power_path(g, r, concat(a, c, b))) {
                    spent[i] = 1;
                    return c;
                }
            }
        }
        return std::nullopt;
    };
    auto exhausted = [&](std::span<const Vertex> a, std::span<const Vertex> b) {
        return StageFailure("connector exhaustion", "no unused connector joins " + show(a) + " to " + show(b));
    };

    OrderedTuple cycle = p_abs.order;
    for (const auto& path : paths.paths) {
        OrderedTuple seg = path.order;
        auto c = connect(tail(cycle, h), head(seg, h));
        if (!c) {
            std::reverse(seg.begin(), seg.end());
            c = connect(tail(cycle, h), head(seg, h));
        }
        if (!c) throw exhausted(tail(cycle, h), head(path.order, h));
        cycle.insert(cycle.end(), c->begin(), c->end());
        cycle.insert(cycle.end(), seg.begin(), seg.end());
    }
    auto c = connect(tail(cycle, h), head(p_abs.order, h));
    if (!c) throw exhausted(tail(cycle, h), head(p_abs.order, h));
    cycle.insert(cycle.end(), c->begin(), c->end());

    PathSystem rest(g.n());
    for (std::size_t i = 0; i < reservoir.paths.size(); ++i)
        if (!spent[i]) rest.add(reservoir.paths[i]);
    reservoir = std::move(rest);

    if (!is_power_cycle_sequence(g, r, cycle)) throw std::logic_error("close_cycle: result is not a power cycle");
    return cycle;
}

PowerPathInstance absorb_leftover(const KGraph& g, const AbsorbingPath& p_abs, std::span<const Vertex> leftover) {
    const auto& reg = p_abs.registry;
    const int h = p_abs.path.h();
    if (leftover.empty()) return p_abs.path;

    // Kuhn's augmenting paths: leftover vertices on one side, absorbers on the other.
    std::vector<int> owner(reg.absorbers.size(), -1);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
        const Vertex v = leftover[i];
        for (std::size_t a : reg.by_vertex[v]) {
            if (seen[a]) continue;
            seen[a] = 1;
            if (owner[a] < 0 || augment(static_cast<std::size_t>(owner[a]))) {
                owner[a] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < leftover.size(); ++i) {
        const Vertex v = leftover[i];
        if (v >= reg.by_vertex.size()) throw std::invalid_argument("absorb_leftover: vertex out of range");
        seen.assign(reg.absorbers.size(), 0);
        if (!augment(i))
            throw StageFailure("absorb leftover", "vertex " + std::to_string(v) + " has no unused absorber (" +
                                                      std::to_string(reg.by_vertex[v].size()) + " registered)");
    }

    std::vector<int> insert_before(p_abs.path.size() + 1, -1);
    for (std::size_t a = 0; a < owner.size(); ++a)
        if (owner[a] >= 0) insert_before[reg.absorbers[a].offset + static_cast<std::size_t>(h)] = owner[a];
    PowerPathInstance out{p_abs.path.k, p_abs.path.r, {}};
    out.order.reserve(p_abs.path.size() + leftover.size());
    for (std::size_t i = 0; i < p_abs.path.size(); ++i) {
        if (insert_before[i] >= 0) out.order.push_back(leftover[insert_before[i]]);
        out.order.push_back(p_abs.path.order[i]);
    }
    if (out.first_end() != p_abs.path.first_end() || out.last_end() != p_abs.path.last_end())
        throw std::logic_error("absorb_leftover: ends changed");
    if (!is_labelled_power_path(g, out.r, out.order))
        throw std::logic_error("absorb_leftover: spliced path is not a power path");
    return out;
}

PipelineResult run_pipeline(const KGraph& host, double p, const PipelineConfig& cfg, RngStream& rng) {
    cfg.validate();
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    const int k = host.k();
    const int r = cfg.r;
    const int h = window_of(k, r);
    const std::uint32_t n = host.n();
    if (n < static_cast<std::uint32_t>(cfg.n_floor_factor * h))
        throw std::invalid_argument("run_pipeline: n = " + std::to_string(n) + " is below the floor " +
                                    std::to_string(cfg.n_floor_factor) + "h = " + std::to_string(cfg.n_floor_factor * h));

    PipelineResult res;
    StageClock clock(res.timings);
    auto count = [&](const std::string& key, std::int64_t v) { res.counters.emplace_back(key, v); };
    const int connector_target = cfg.resolved_connector_target(n, h);
    const int absorber_target = cfg.resolved_absorber_target(n, h);
    const int m = cfg.resolved_segment_length(k, h);
    count("n", n);
    count("h", h);
    count("absorber_target", absorber_target);
    count("connector_target", connector_target);
    count("segment_length", m);

    RngStream round_rng = rng.derive(hash_string("rounds"));
    const auto rounds = clock.run("rounds", [&] { return sample_rounds(k, n, p, cfg.rounds, round_rng); });
    std::vector<KGraph> work;
    KGraph all = host;
    for (const auto& g : rounds) {
        work.push_back(graph_union(host, g));
        all = graph_union(all, g);
    }
    auto work_for = [&](int stage) -> const KGraph& { return work[std::min(stage, cfg.rounds - 1)]; };
    std::int64_t round_edges = 0;
    for (const auto& g : rounds) round_edges += static_cast<std::int64_t>(g.edge_count());
    count("round_edges", round_edges);
    const double p_round = p == 1.0 ? 1.0 : split_probability(p, cfg.rounds);

    VertexLedger ledger(n);
    try {
        RngStream abs_rng = rng.derive(hash_string("absorbing path"));
        AbsorbingPath abs = clock.run("absorbing path", [&] { return build_absorbing_path(work_for(0), cfg, abs_rng); });
        ledger.claim(abs.path.order, "absorbing path");
        count("absorbers", static_cast<std::int64_t>(abs.registry.absorbers.size()));

        if (cfg.extend_path_ends) {
            std::vector<char> avail(n);
            for (Vertex v = 0; v < n; ++v) avail[v] = ledger.free(v);
            RngStream ext_rng = rng.derive(hash_string("path extension"));
            auto grown = clock.run("path extension", [&] {
                auto back = extend_end(host, r, abs.path.order, false, avail, ext_rng, cfg.search);
                return back ? extend_end(host, r, *back, true, avail, ext_rng, cfg.search) : std::nullopt;
            });
            if (!grown) throw StageFailure("path extension", "cannot extend the absorbing path ends inside H");
            std::vector<Vertex> added;
            for (std::size_t i = 0; i < static_cast<std::size_t>(h); ++i) added.push_back((*grown)[i]);
            for (std::size_t i = grown->size() - h; i < grown->size(); ++i) added.push_back((*grown)[i]);
            ledger.claim(added, "path extension");
            abs.path.order = std::move(*grown);
            for (auto& a : abs.registry.absorbers) a.offset += static_cast<std::size_t>(h);
            for (Vertex v : added) abs.registry.by_vertex[v].clear();
        }
        count("absorbing_path_length", static_cast<std::int64_t>(abs.path.size()));

        std::vector<char> avail(n);
        for (Vertex v = 0; v < n; ++v) avail[v] = ledger.free(v);
        RngStream res_rng = rng.derive(hash_string("reservoir"));
        PathSystem reservoir = clock.run("reservoir", [&] {
            return build_connector_reservoir(work_for(1), r, avail, connector_target, p_round, cfg, res_rng);
        });
        for (const auto& c : reservoir.paths) ledger.claim(c.order, "reservoir");
        count("reservoir_size", static_cast<std::int64_t>(reservoir.paths.size()));

        std::vector<char> forbidden(n);
        int free_count = 0;
        for (Vertex v = 0; v < n; ++v) {
            forbidden[v] = !ledger.free(v);
            free_count += !forbidden[v];
        }
        // At desk scale the default segment length can exceed what is left.
        const int m_used = cfg.cover_segment_length == 0 ? std::max(2 * h, std::min(m, free_count)) : m;
        count("segment_length_used", m_used);
        RngStream cover_rng = rng.derive(hash_string("cover"));
        CoverResult cover = clock.run("cover", [&] {
            return greedy_path_cover(work_for(2), r, forbidden, m_used, static_cast<int>(reservoir.paths.size()) - 1, cfg,
                                     cover_rng);
        });
        for (const auto& c : cover.system.paths) ledger.claim(c.order, "cover");
        count("cover_paths", static_cast<std::int64_t>(cover.system.paths.size()));
        count("cover_leftover", static_cast<std::int64_t>(cover.leftover.size()));

        const std::size_t reservoir_before = reservoir.paths.size();
        OrderedTuple cycle = clock.run("close cycle", [&] { return close_cycle(all, r, abs.path, cover.system, reservoir); });
        count("connectors_used", static_cast<std::int64_t>(reservoir_before - reservoir.paths.size()));
        for (const auto& c : reservoir.paths) ledger.release(c.order);

        std::vector<char> on_cycle(n, 0);
        for (Vertex v : cycle) on_cycle[v] = 1;
        std::vector<Vertex> leftover;
        for (Vertex v = 0; v < n; ++v)
            if (!on_cycle[v]) leftover.push_back(v);
        const std::vector<Vertex> before = leftover;
        if (cfg.insert_leftover)
            leftover = clock.run("insert leftover",
                                 [&] { return insert_into_cycle(all, r, cycle, abs.path.size(), leftover); });
        std::vector<Vertex> inserted;
        std::set_difference(before.begin(), before.end(), leftover.begin(), leftover.end(),
                            std::back_inserter(inserted));
        ledger.claim(inserted, "insert leftover");
        count("inserted", static_cast<std::int64_t>(inserted.size()));

        PowerPathInstance absorbed = clock.run("absorb leftover", [&] { return absorb_leftover(all, abs, leftover); });
        ledger.claim(leftover, "absorb leftover");
        count("absorbed", static_cast<std::int64_t>(leftover.size()));

        OrderedTuple order = absorbed.order;
        order.insert(order.end(), cycle.begin() + static_cast<std::ptrdiff_t>(abs.path.size()), cycle.end());
        const bool ok = clock.run("verification", [&] { return is_power_hamilton_cycle(all, r, order); });
        if (!ok) throw StageFailure("verification", "final order is not a spanning power cycle");
        res.success = true;
        res.order = std::move(order);
    } catch (const StageFailure& f) {
        res.success = false;
        res.failed_stage = f.stage();
        res.message = f.detail();
    }
    return res;
}

}  // namespace tightpow
