// Command-line front end: generators, calculators, searches and the sweep harness.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tightpow/absorbing.hpp"
#include "tightpow/config.hpp"
#include "tightpow/counting.hpp"
#include "tightpow/exact_search.hpp"
#include "tightpow/graph_io.hpp"
#include "tightpow/harness.hpp"
#include "tightpow/hosts.hpp"
#include "tightpow/power.hpp"
#include "tightpow/probability.hpp"
#include "tightpow/random_model.hpp"
#include "tightpow/svg_plot.hpp"

using namespace tightpow;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

std::string g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void kv(const std::string& key, const std::string& value) { std::cout << key << '=' << value << '\n'; }
void kv(const std::string& key, double value) { kv(key, g12(value)); }

void emit_graph(const KGraph& g, const std::string& out) {
    if (out.empty() || out == "-")
        write_graph(std::cout, g);
    else
        write_graph_file(out, g);
}

// Pattern from a file, or the power path P_b^r.
struct PatternOpts {
    std::string file;
    int k = 2;
    int r = 1;
    int b = 0;

    void add(CLI::App* app) {
        app->add_option("--pattern", file, "pattern graph file");
        app->add_option("--k", k, "uniformity of the power-path pattern");
        app->add_option("--r", r, "power of the power-path pattern");
        app->add_option("--b", b, "order of the power-path pattern (default 2h)");
    }
    KGraph load() const {
        if (!file.empty()) return read_graph_file(file);
        const int h = k + r - 1;
        return power_path(k, r, static_cast<std::uint32_t>(b > 0 ? b : 2 * h));
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamilton power cycles in dense hosts plus random k-graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write a power path, power cycle or G(n,p) sample");
    std::string gen_kind = "path", gen_out;
    int gen_k = 2, gen_r = 1;
    std::uint32_t gen_n = 0;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind, "path | cycle | gnp")->check(CLI::IsMember({"path", "cycle", "gnp"}));
    gen->add_option("--k", gen_k)->required();
    gen->add_option("--r", gen_r);
    gen->add_option("--n,--m", gen_n, "number of vertices")->required();
    gen->add_option("--p", gen_p);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out, "output file (stdout when omitted)");

    // host
    auto* host = app.add_subcommand("host", "write a deterministic host graph");
    std::string host_kind = "complete", host_out;
    int host_k = 2;
    std::uint32_t host_n = 0;
    double host_alpha = 0.3;
    std::size_t host_delta = 0;
    std::uint64_t host_seed = 1;
    host->add_option("--kind", host_kind, "complete | split | codegree | empty")
        ->check(CLI::IsMember({"complete", "split", "codegree", "empty"}));
    host->add_option("--k", host_k)->required();
    host->add_option("--n", host_n)->required();
    host->add_option("--alpha", host_alpha, "split: small class fraction");
    host->add_option("--delta", host_delta, "codegree: minimum codegree target");
    host->add_option("--seed", host_seed);
    host->add_option("--out", host_out);

    // phi
    auto* phi_cmd = app.add_subcommand("phi", "minimum of n^v p^e over subgraphs with an edge");
    PatternOpts phi_pat;
    double phi_n = 0, phi_p = 0;
    phi_pat.add(phi_cmd);
    phi_cmd->add_option("--n", phi_n)->required();
    phi_cmd->add_option("--p", phi_p)->required();

    // phi-check
    auto* pcheck = app.add_subcommand("phi-check", "check Phi(P_b^r) >= C n at p = n^(-c - eps)");
    int pc_k = 2, pc_r = 1;
    std::int64_t pc_b = 0;
    double pc_C = 1.0, pc_eps = 0.01;
    std::uint64_t pc_n = 0;
    pcheck->add_option("--k", pc_k)->required();
    pcheck->add_option("--r", pc_r)->required();
    pcheck->add_option("--b", pc_b)->required();
    pcheck->add_option("--C", pc_C);
    pcheck->add_option("--n", pc_n)->required();
    pcheck->add_option("--eps", pc_eps);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "expectation, second-moment bound and tail bounds");
    PatternOpts b_pat;
    double b_n = 0, b_p = 0, b_slack = -1;
    b_pat.add(bounds);
    bounds->add_option("--n", b_n)->required();
    bounds->add_option("--p", b_p)->required();
    bounds->add_option("--slack", b_slack, "lower-tail slack t (default lambda/2)");

    // first-moment
    auto* fm = app.add_subcommand("first-moment", "log of the expected number of spanning power paths or cycles");
    int fm_k = 2, fm_r = 1;
    std::uint64_t fm_n = 0;
    double fm_p = 0;
    bool fm_cyclic = false;
    fm->add_option("--k", fm_k)->required();
    fm->add_option("--r", fm_r)->required();
    fm->add_option("--n", fm_n)->required();
    fm->add_option("--p", fm_p)->required();
    fm->add_flag("--cyclic", fm_cyclic, "count Hamilton power cycles instead of paths");

    // split
    auto* split = app.add_subcommand("split", "per-round probability for multi-round exposure");
    double sp_p = 0;
    int sp_rounds = 3;
    split->add_option("--p", sp_p)->required();
    split->add_option("--rounds", sp_rounds);

    // count
    auto* count = app.add_subcommand("count", "count labelled copies of a pattern in a host");
    PatternOpts c_pat;
    std::string c_host;
    std::uint64_t c_budget = 10'000'000;
    c_pat.add(count);
    count->add_option("--host", c_host)->required();
    count->add_option("--budget", c_budget);

    // exact
    auto* exact = app.add_subcommand("exact", "exact search for a Hamilton power cycle");
    std::string e_host;
    int e_r = 1;
    std::uint64_t e_budget = kDefaultExactBudget;
    exact->add_option("--host", e_host)->required();
    exact->add_option("--r", e_r)->required();
    exact->add_option("--budget", e_budget);

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "absorbing construction on H plus G(n,p)");
    std::string pl_host, pl_config;
    double pl_p = 0;
    std::uint64_t pl_seed = 1;
    std::optional<int> pl_r;
    pipe->add_option("--host", pl_host)->required();
    pipe->add_option("--p", pl_p)->required();
    pipe->add_option("--seed", pl_seed);
    pipe->add_option("--config", pl_config, "config file with a [pipeline] section");
    pipe->add_option("--r", pl_r, "overrides r from the config");

    // sweep / summarize / plot
    auto* sweep = app.add_subcommand("sweep", "run a grid of trials, appending JSONL records");
    std::string sw_config, sw_out;
    sweep->add_option("--config", sw_config)->required();
    sweep->add_option("--out", sw_out)->required();

    auto* summ = app.add_subcommand("summarize", "aggregate records into a CSV table");
    std::string su_in, su_out;
    summ->add_option("--in", su_in)->required();
    summ->add_option("--out", su_out)->required();

    auto* plot = app.add_subcommand("plot", "render a CSV table as SVG");
    std::string pt_in, pt_spec, pt_out;
    plot->add_option("--in", pt_in)->required();
    plot->add_option("--spec", pt_spec, "plot spec file ([plot] section)");
    plot->add_option("--out", pt_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*gen) {
            if (gen_kind == "path")
                emit_graph(power_path(gen_k, gen_r, gen_n), gen_out);
            else if (gen_kind == "cycle")
                emit_graph(power_cycle(gen_k, gen_r, gen_n), gen_out);
            else {
                RngStream rng(gen_seed, 0);
                emit_graph(sample_gnp(gen_k, gen_n, gen_p, rng), gen_out);
            }
        } else if (*host) {
            KGraph g;
            if (host_kind == "complete")
                g = complete_host(host_k, host_n);
            else if (host_kind == "empty")
                g = KGraph(host_k, host_n);
            else if (host_kind == "split")
                g = split_host(host_k, host_n, host_alpha);
            else {
                RngStream rng(host_seed, 0);
                g = codegree_host(host_k, host_n, host_delta, rng).graph;
            }
            emit_graph(g, host_out);
        } else if (*phi_cmd) {
            const KGraph f = phi_pat.load();
            const PhiReport rep = phi(f, static_cast<std::uint64_t>(phi_n), phi_p);
            kv("log_phi", rep.phi.log());
            kv("phi", rep.phi.linear());
            kv("argmin_vertices", static_cast<double>(rep.argmin_vertices.size()));
            kv("argmin_edges", static_cast<double>(rep.argmin_edges.size()));
            kv("candidates_examined", static_cast<double>(rep.candidates_examined));
        } else if (*pcheck) {
            const auto res = phi_threshold_check(pc_k, pc_r, pc_b, pc_C, pc_n, pc_eps);
            kv("holds", res.holds ? "true" : "false");
            kv("p", res.p);
            kv("log_phi", res.phi.phi.log());
            kv("log_threshold", res.threshold.log());
        } else if (*bounds) {
            const KGraph f = b_pat.load();
            const auto n = static_cast<std::uint64_t>(b_n);
            const LogValue lambda = expected_labelled_copies(f, n, b_p);
            const LogValue delta = delta_bound(f, n, b_p);
            const double slack = b_slack >= 0 ? b_slack : lambda.linear() / 2.0;
            kv("log_lambda", lambda.log());
            kv("lambda", lambda.linear());
            kv("log_delta_bound", delta.log());
            kv("delta_bound", delta.linear());
            kv("log_phi", phi(f, n, b_p).phi.log());
            kv("slack", slack);
            kv("janson_tail", janson_tail(lambda, slack, delta));
            kv("chebyshev_tail", chebyshev_tail(lambda, delta));
        } else if (*fm) {
            const double lg = first_moment_log(fm_k, fm_r, fm_n, fm_p, fm_cyclic);
            kv("log_expectation", lg);
            kv("expectation", std::exp(lg));
        } else if (*split) {
            kv("p_round", split_probability(sp_p, sp_rounds));
        } else if (*count) {
            const KGraph f = c_pat.load();
            const KGraph g = read_graph_file(c_host);
            CountOptions opt;
            opt.budget = c_budget;
            const auto rep = count_labelled_copies(f, g, opt);
            json j = {{"labelled_count", rep.labelled_count},
                      {"truncated", rep.truncated},
                      {"nodes", rep.nodes}};
            j["overlapping_pairs"] = rep.overlaps_counted ? json(rep.overlapping_pairs) : json(nullptr);
            std::cout << j.dump() << '\n';
        } else if (*exact) {
            const KGraph g = read_graph_file(e_host);
            const ExactResult res = contains_power_hamilton(g, e_r, e_budget);
            json j = {{"status", to_string(res.status)}, {"nodes", res.nodes}};
            if (res.status == SearchStatus::Found) j["order"] = res.order;
            std::cout << j.dump() << '\n';
        } else if (*pipe) {
            const KGraph g = read_graph_file(pl_host);
            PipelineConfig cfg;
            if (!pl_config.empty()) cfg = pipeline_config_from(ConfigFile::load(pl_config));
            if (pl_r) cfg.r = *pl_r;
            RngStream rng(pl_seed, 0);
            const PipelineResult res = run_pipeline(g, pl_p, cfg, rng);
            json timings = json::object(), counters = json::object();
            for (const auto& t : res.timings) timings[t.stage] = t.ms;
            for (const auto& [key, v] : res.counters) counters[key] = v;
            json j = {{"outcome", res.success ? "success" : "failure"},
                      {"stage", res.failed_stage},
                      {"message", res.message},
                      {"timings_ms", timings},
                      {"counters", counters}};
            if (res.success) j["order"] = res.order;
            std::cout << j.dump() << '\n';
        } else if (*sweep) {
            const SweepConfig cfg = load_sweep_config(ConfigFile::load(sw_config));
            const SweepReport rep = run_sweep(cfg, sw_out);
            std::cerr << "trials=" << rep.total << " skipped=" << rep.skipped << " ran=" << rep.ran
                      << " errored=" << rep.errored << '\n';
            return rep.errored > 0 ? kExitPartial : 0;
        } else if (*summ) {
            const auto rows = summarize(read_records_file(su_in));
            std::ofstream out(su_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + su_out);
            write_summary_csv(out, rows);
        } else if (*plot) {
            PlotSpec spec;
            if (!pt_spec.empty()) spec = plot_spec_from(ConfigFile::load(pt_spec));
            const std::string svg = render_svg(parse_csv_file(pt_in), spec);
            std::ofstream out(pt_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + pt_out);
            out << svg;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
