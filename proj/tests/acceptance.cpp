// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tightpow/absorbing.hpp"
#include "tightpow/counting.hpp"
#include "tightpow/exact_search.hpp"
#include "tightpow/harness.hpp"
#include "tightpow/hosts.hpp"
#include "tightpow/power.hpp"
#include "tightpow/probability.hpp"
#include "tightpow/random_model.hpp"
#include "tightpow/svg_plot.hpp"

using namespace tightpow;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- 1 -------------------------------------------------------------------

Verdict edge_count_identity() {
    Verdict v;
    const auto t0 = Clock::now();
    int checked = 0;
    for (int k = 2; k <= 4; ++k)
        for (int r = 1; r <= 3; ++r) {
            if (k + r < 4) continue;
            const int h = k + r - 1;
            for (int m = h; m <= 12; ++m) {
                const auto e = static_cast<std::int64_t>(power_path(k, r, m).edge_count());
                // Independent count: k-sets of {0..m-1} whose span fits in a window.
                const auto want = static_cast<std::int64_t>(oracle::power_edges(k, r, m, false).size());
                v.require(e == g_edges(k, r, m) && e == want,
                          "k=" + std::to_string(k) + " r=" + std::to_string(r) + " m=" + std::to_string(m));
                ++checked;
            }
        }
    const double s = seconds_since(t0);
    v.require(s < 1.0, "runtime " + fmt("%.3f", s) + " s");
    v.note(std::to_string(checked) + " cases, " + fmt("%.3f", s) + " s");
    return v;
}

// ---- 2 -------------------------------------------------------------------

Verdict constant_cross_check() {
    Verdict v;
    v.require(threshold_exponent(2, 1) == Rational(1, 1), "c(2,1)");
    v.require(threshold_exponent(2, 2) == Rational(1, 2), "c(2,2)");
    v.require(threshold_exponent(3, 2) == Rational(1, 3), "c(3,2)");
    v.note("c(2,1)=1 c(2,2)=1/2 c(3,2)=1/3");
    return v;
}

// ---- 3 -------------------------------------------------------------------

Verdict oracle_equivalence() {
    Verdict v;
    const auto t0 = Clock::now();
    std::size_t instances = 0, agree = 0, timeouts = 0;
    RngStream rng(2718, 3);
    const std::vector<std::pair<int, int>> kr = {{2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}};
    for (auto [k, r] : kr) {
        const int h = k + r - 1;
        std::vector<KGraph> corpus;
        for (std::uint32_t n = 2 * h; n <= 8; ++n) {
            corpus.push_back(KGraph::complete(k, n));
            corpus.push_back(KGraph(k, n));
            corpus.push_back(power_cycle(k, r, n));
            // Power cycle with one edge removed.
            auto edges = power_cycle(k, r, n).edges();
            edges.erase(edges.begin() + static_cast<long>(rng.below(edges.size())));
            corpus.push_back(KGraph::build(k, n, edges));
            if (n >= 4) {
                corpus.push_back(split_host(k, n, 0.3));
                corpus.push_back(split_host(k, n, 0.45));
            }
        }
        for (int i = 0; i < 200; ++i) {
            const std::uint32_t n = static_cast<std::uint32_t>(2 * h + rng.below(9 - 2 * h));
            const double p = 0.3 + 0.6 * (i % 7) / 6.0;
            corpus.push_back(oracle::random_graph(k, n, p, rng));
        }
        for (const auto& g : corpus) {
            ++instances;
            const auto res = contains_power_hamilton(g, r, 100'000'000);
            if (res.status == SearchStatus::Timeout) {
                ++timeouts;
                continue;
            }
            const bool fast = res.status == SearchStatus::Found;
            bool ok = fast == brute_force_oracle(g, r);
            if (fast) ok = ok && oracle::power_cycle_ok(g, r, res.order);
            agree += ok;
        }
    }
    const double s = seconds_since(t0);
    v.require(agree == instances, std::to_string(instances - agree) + " disagreements");
    v.require(timeouts == 0, std::to_string(timeouts) + " timeouts");
    v.require(s < 300.0, "runtime " + fmt("%.1f", s) + " s");
    v.note(std::to_string(agree) + "/" + std::to_string(instances) + " agree, " + fmt("%.1f", s) + " s");
    return v;
}

// ---- 4 -------------------------------------------------------------------

Verdict phi_correctness() {
    Verdict v;
    RngStream rng(31415, 4);
    std::vector<KGraph> patterns;
    // Structured patterns with at most five edges.
    for (int k = 2; k <= 4; ++k)
        for (int r = 1; r <= 3; ++r)
            for (int m = k + r - 1; m <= 10; ++m) {
                KGraph p = power_path(k, r, m);
                if (p.edge_count() <= 5) patterns.push_back(p);
            }
    patterns.push_back(power_cycle(2, 1, 5));
    patterns.push_back(KGraph::complete(2, 3));
    patterns.push_back(KGraph::build(2, 6, {{0, 1}, {2, 3}}));  // two disjoint edges, two isolated vertices
    patterns.push_back(KGraph::build(3, 7, {{0, 1, 2}}));       // one edge and four isolated vertices
    // Random patterns, isolated vertices allowed.
    for (int i = 0; i < 60; ++i) {
        const int k = 2 + i % 3;
        const std::uint32_t nv = static_cast<std::uint32_t>(k + rng.below(5));
        const int e = 1 + static_cast<int>(rng.below(5));
        std::vector<std::vector<Vertex>> edges;
        for (int j = 0; j < e; ++j) {
            std::vector<Vertex> all(nv);
            std::iota(all.begin(), all.end(), 0u);
            rng.shuffle(all);
            edges.emplace_back(all.begin(), all.begin() + k);
        }
        patterns.push_back(KGraph::build(k, nv, edges));
    }
    double worst = 0.0;
    std::size_t evals = 0;
    for (int pair = 0; pair < 100; ++pair) {
        const std::uint64_t n = 12 + rng.below(100000);
        const double p = std::exp(-12.0 * rng.uniform());  // spans 6e-6 .. 1
        for (const auto& f : patterns) {
            const double got = phi(f, n, p).phi.log();
            const double want = oracle::log_phi_all_subgraphs(f, static_cast<double>(n), p);
            worst = std::max(worst, std::fabs(got - want));
            ++evals;
        }
    }
    v.require(worst <= 1e-9, "max log error " + fmt("%.3g", worst));

    // Threshold verdicts against the direct comparison.
    std::size_t verdicts = 0, mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const int k = 2 + static_cast<int>(rng.below(2));
        const int r = 4 - k + static_cast<int>(rng.below(2));
        const int h = k + r - 1;
        const std::int64_t b = h + static_cast<std::int64_t>(rng.below(3));
        if (g_edges(k, r, b) > 24) continue;
        const double cap = epsilon_cap(k, r, b).to_double();
        const double eps = cap * (0.01 + 0.98 * rng.uniform());
        const std::uint64_t n = 20 + rng.below(100000);
        const double C = std::exp(8.0 * rng.uniform() - 4.0);
        const auto res = phi_threshold_check(k, r, b, C, n, eps);
        const double direct = oracle::log_phi_all_subgraphs(power_path(k, r, b), static_cast<double>(n), res.p);
        ++verdicts;
        mismatches += res.holds != (direct >= std::log(C) + std::log(static_cast<double>(n)));
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " verdict mismatches");
    v.note(std::to_string(evals) + " evaluations, max |dlog| " + fmt("%.2g", worst) + ", " +
           std::to_string(verdicts) + " threshold verdicts");
    return v;
}

// ---- 5 -------------------------------------------------------------------

Verdict concentration() {
    Verdict v;
    const auto t0 = Clock::now();
    const KGraph f = power_path(2, 2, 4);
    const std::uint32_t n = 30;
    const double p = 0.3;
    const int trials = 400;
    const LogValue lambda = expected_labelled_copies(f, n, p);
    const double lam = lambda.linear();
    const double lam_direct = 30.0 * 29 * 28 * 27 * std::pow(p, 5);
    const LogValue delta = delta_bound(f, n, p);
    const double cheb = chebyshev_tail(lambda, delta);
    const double jans = janson_tail(lambda, lam / 2, delta);

    std::vector<double> xs;
    int upper = 0, lower = 0;
    for (int t = 0; t < trials; ++t) {
        RngStream rng(55, static_cast<std::uint64_t>(t));
        const KGraph g = sample_gnp(2, n, p, rng);
        CountOptions opt;
        opt.count_overlaps = false;
        const double x = static_cast<double>(count_labelled_copies(f, g, opt).labelled_count);
        xs.push_back(x);
        upper += x >= 2 * lam;
        lower += x <= lam / 2;
    }
    double mean = 0, var = 0;
    for (double x : xs) mean += x;
    mean /= trials;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= trials - 1;
    const double se = std::sqrt(var / trials);
    v.require(std::fabs(lam - lam_direct) < 1e-9 * lam_direct, "lambda formula");
    v.require(std::fabs(mean - lam) <= 4 * se, "mean off by " + fmt("%.2f", (mean - lam) / se) + " SE");
    auto bin_se = [&](double q) { return std::sqrt(std::max(q * (1 - q), 1.0 / trials) / trials); };
    const double fu = upper / double(trials), fl = lower / double(trials);
    v.require(fu <= cheb + 3 * bin_se(cheb), "upper tail " + fmt("%.4f", fu));
    v.require(fl <= jans + 3 * bin_se(jans), "lower tail " + fmt("%.4f", fl));
    const double s = seconds_since(t0);
    v.require(s < 600.0, "runtime");
    v.note("lambda=" + fmt("%.2f", lam) + " mean=" + fmt("%.2f", mean) + " se=" + fmt("%.2f", se) +
           " P(X>=2l)=" + fmt("%.4f", fu) + "<=cheb " + fmt("%.4g", cheb) + " P(X<=l/2)=" + fmt("%.4f", fl) +
           "<=janson " + fmt("%.4g", jans) + ", " + fmt("%.1f", s) + " s");
    return v;
}

// ---- 6 -------------------------------------------------------------------

Verdict splitting() {
    Verdict v;
    const double q = split_probability(0.75, 2);
    v.require(q == 0.5, "split_probability(0.75,2) = " + fmt("%.17g", q));
    const double p = 0.35;
    const int trials = 10000;
    int hits = 0;
    RngStream rng(66, 6);
    for (int t = 0; t < trials; ++t) {
        const auto rounds = sample_rounds(3, 5, p, 3, rng);
        bool in = false;
        for (const auto& g : rounds) in = in || g.contains_rank(7);
        hits += in;
    }
    const double freq = hits / double(trials);
    const double se = std::sqrt(p * (1 - p) / trials);
    v.require(std::fabs(freq - p) <= 3 * se, "marginal " + fmt("%.4f", freq));
    v.note("q=0.5 exactly, union marginal " + fmt("%.4f", freq) + " vs " + fmt("%.2f", p) + " (" +
           fmt("%.2f", (freq - p) / se) + " SE)");
    return v;
}

// ---- 7 -------------------------------------------------------------------

Verdict pipeline_sanity() {
    Verdict v;
    PipelineConfig cfg;
    std::size_t runs = 0, wins = 0, verified = 0;
    const std::vector<std::pair<int, int>> kr = {{2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}};
    for (auto [k, r] : kr) {
        cfg.r = r;
        const int h = k + r - 1;
        for (int n = 8 * h; n <= 10 * h; ++n) {
            const KGraph host = KGraph::complete(k, n);
            RngStream rng(77, static_cast<std::uint64_t>(k * 1000 + r * 100 + n));
            const auto res = run_pipeline(host, 0.0, cfg, rng);
            ++runs;
            if (!res.success) {
                v.require(false, "complete k=" + std::to_string(k) + " r=" + std::to_string(r) + " n=" +
                                     std::to_string(n) + " failed at " + res.failed_stage);
                continue;
            }
            ++wins;
            verified += is_power_hamilton_cycle(host, r, res.order) && oracle::power_cycle_ok(host, r, res.order);
        }
        RngStream rng(78, static_cast<std::uint64_t>(k * 10 + r));
        const auto bad = run_pipeline(KGraph(k, 8 * h), 0.0, cfg, rng);
        v.require(!bad.success && !bad.failed_stage.empty(),
                  "empty host k=" + std::to_string(k) + " r=" + std::to_string(r) + " did not fail with a stage");
    }
    v.require(verified == wins, "unverified certificate");
    v.note(std::to_string(wins) + "/" + std::to_string(runs) + " complete-host runs succeed and re-verify");

    // Exact-search success rate on split host plus G(n,p).
    const std::uint32_t n = 30;
    const KGraph host = split_host(2, n, 0.3);
    const int seeds = 40;
    std::vector<double> rate;
    std::string rates;
    for (double p : {0.0, 0.1, 0.3, 0.6}) {
        int found = 0;
        for (int s = 0; s < seeds; ++s) {
            RngStream rng(700 + s, 7);
            const KGraph g = graph_union(host, sample_gnp(2, n, p, rng));
            const auto res = contains_power_hamilton(g, 1);
            v.require(res.status != SearchStatus::Timeout, "exact search timeout");
            found += res.status == SearchStatus::Found;
        }
        rate.push_back(found / double(seeds));
        rates += (rates.empty() ? "" : " ") + fmt("%.2f", rate.back());
    }
    for (std::size_t i = 1; i < rate.size(); ++i) {
        const double se =
            std::sqrt((rate[i] * (1 - rate[i]) + rate[i - 1] * (1 - rate[i - 1])) / seeds);
        v.require(rate[i] >= rate[i - 1] - 2 * se - 1e-12, "rate drops between p rows");
    }
    v.require(rate[0] == 0.0, "rate at p=0 is " + fmt("%.2f", rate[0]) +
                                  ", not 0 (split host with |A|=9 <= |B|=21 already has a Hamilton cycle)");
    v.note("split-host exact rates over p {0,0.1,0.3,0.6}: " + rates);
    return v;
}

// ---- 8 -------------------------------------------------------------------

double stirling_log_factorial(double n) {
    // Asymptotic series; terms through n^-5 give well under 1e-10 for n >= 6.
    const double pi = 3.14159265358979323846;
    return n * std::log(n) - n + 0.5 * std::log(2 * pi * n) + 1 / (12 * n) - 1 / (360 * n * n * n) +
           1 / (1260 * std::pow(n, 5));
}

double path_edges_direct(int k, int r, std::uint64_t n) {
    // Each edge counted at its first vertex: the other k-1 lie among the next h-1 positions.
    const int h = k + r - 1;
    double e = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t ahead = std::min<std::uint64_t>(h - 1, n - 1 - i);
        e += static_cast<double>(binomial(ahead, k - 1));
    }
    return e;
}

Verdict first_moment() {
    Verdict v;
    RngStream rng(88, 8);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int k = 2 + static_cast<int>(rng.below(3));
        const int r = 1 + static_cast<int>(rng.below(3));
        const int h = k + r - 1;
        const std::uint64_t n = 2 * h + rng.below(300);
        const double p = 0.001 + 0.999 * rng.uniform();
        const bool cyc = i % 2 == 1;
        const double edges = cyc ? static_cast<double>(n) * static_cast<double>(binomial(h - 1, k - 1))
                                 : path_edges_direct(k, r, n);
        const double want = stirling_log_factorial(static_cast<double>(n)) + edges * std::log(p);
        const double got = first_moment_log(k, r, n, p, cyc);
        worst = std::max(worst, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
    }
    v.require(worst <= 1e-6, "relative error " + fmt("%.3g", worst));

    bool increasing = true;
    for (auto [k, r] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {4, 1}}) {
        double prev = -INFINITY;
        for (int j = 1; j <= 100; ++j) {
            const double cur = first_moment_log(k, r, 60, j / 100.0);
            increasing = increasing && cur > prev;
            prev = cur;
        }
    }
    v.require(increasing, "not strictly increasing in p");

    const double n = 50;
    const double p_star = std::pow((1 - 0.1) * std::exp(1.0) / n, threshold_exponent(2, 1).to_double());
    const double cyc = first_moment_log(2, 1, 50, p_star, true);
    const double path = first_moment_log(2, 1, 50, p_star, false);
    v.require(cyc < 0, "cycle first moment " + fmt("%.4f", cyc) + " at the bound");
    v.note("max rel err " + fmt("%.2g", worst) + ", ln E[cycles]=" + fmt("%.4f", cyc) +
           " (path count " + fmt("%.4f", path) + ") at p=" + fmt("%.5f", p_star));
    return v;
}

// ---- 9 -------------------------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Verdict determinism() {
    Verdict v;
    namespace fs = std::filesystem;
    const std::string dir = "acceptance_work";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto cfg = ConfigFile::parse_string(
        "[sweep]\n"
        "k = 2\n"
        "r = 2\n"
        "n = 24, 27\n"
        "p = 0.1, 0.4\n"
        "host = split, codegree\n"
        "mode = exact, pipeline, count, lemma-check\n"
        "trials = 2\n"
        "alpha = 0.2\n"
        "exact_budget = 2000000\n"
        "pattern_length = 5\n"
        "samples = 30\n"
        "threads = 2\n");
    const SweepConfig sc = load_sweep_config(cfg);
    const std::string rec_path = dir + "/records.jsonl";
    const auto rep = run_sweep(sc, rec_path);
    v.require(rep.errored == 0, std::to_string(rep.errored) + " errored trials");

    const auto records = read_records_file(rec_path);
    std::size_t replayed = 0;
    for (const auto& rec : records) replayed += same_outcome(run_trial(rec.spec), rec.outcome);
    v.require(replayed == records.size(), std::to_string(records.size() - replayed) + " records did not replay");

    auto emit = [&](const std::string& tag) {
        const std::string csv = dir + "/summary_" + tag + ".csv";
        {
            std::ofstream out(csv, std::ios::binary);
            write_summary_csv(out, summarize(read_records_file(rec_path)));
        }
        PlotSpec spec;
        spec.title = "success rate";
        const std::string svg = render_svg(parse_csv_file(csv), spec);
        std::ofstream(dir + "/plot_" + tag + ".svg", std::ios::binary) << svg;
    };
    emit("a");
    emit("b");
    v.require(slurp(dir + "/summary_a.csv") == slurp(dir + "/summary_b.csv"), "CSV differs");
    v.require(slurp(dir + "/plot_a.svg") == slurp(dir + "/plot_b.svg"), "SVG differs");
    v.note(std::to_string(replayed) + "/" + std::to_string(records.size()) +
           " records replay, CSV and SVG byte-identical");
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"edge-count identity", edge_count_identity},
        {"constant cross-check", constant_cross_check},
        {"oracle equivalence", oracle_equivalence},
        {"phi correctness", phi_correctness},
        {"concentration suite", concentration},
        {"probability splitting", splitting},
        {"pipeline soundness and sanity", pipeline_sanity},
        {"first-moment calculator", first_moment},
        {"determinism and replay", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += !v.pass;
        std::printf("criterion %zu %s: %s -- %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
