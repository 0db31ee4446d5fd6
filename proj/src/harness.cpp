#include "tightpow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "tightpow/counting.hpp"
#include "tightpow/exact_search.hpp"
#include "tightpow/hosts.hpp"
#include "tightpow/power.hpp"
#include "tightpow/random_model.hpp"

namespace tightpow {

using nlohmann::json;

std::string artifact_version() { return std::string("tightpow ") + TIGHTPOW_VERSION; }

namespace {

const std::vector<std::string> kHosts = {"complete", "split", "codegree", "empty"};
const std::vector<std::string> kModes = {"exact", "pipeline", "count", "lemma-check"};

std::string fmt(double x, const char* f = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

void check_member(const std::string& value, const std::vector<std::string>& options, const std::string& what) {
    if (std::find(options.begin(), options.end(), value) == options.end())
        throw std::invalid_argument("unknown " + what + " '" + value + "'");
}

void check_spec(const TrialSpec& s) {
    if (s.k < 2 || s.k > kMaxUniformity) throw std::invalid_argument("k must lie in [2, 8]");
    if (s.r < 1) throw std::invalid_argument("r must be >= 1");
    if (!(s.p >= 0.0 && s.p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    check_member(s.host, kHosts, "host");
    check_member(s.mode, kModes, "mode");
}

int pattern_length(const TrialSpec& s) { return s.pattern_length > 0 ? s.pattern_length : 2 * (s.k + s.r - 1); }

json pipeline_json(const PipelineConfig& c) {
    json j = {{"r", c.r},
              {"alpha", c.alpha},
              {"epsilon", c.epsilon},
              {"beta", c.beta},
              {"zeta", c.zeta},
              {"gamma", c.gamma},
              {"rounds", c.rounds},
              {"connector_target", c.connector_target},
              {"absorber_target", c.absorber_target},
              {"cover_segment_length", c.cover_segment_length},
              {"candidate_limit", c.candidate_limit},
              {"search_attempts", c.search.attempts},
              {"search_nodes", c.search.nodes_per_attempt},
              {"n_floor_factor", c.n_floor_factor},
              {"extend_absorber_ends", c.extend_absorber_ends},
              {"extend_path_ends", c.extend_path_ends},
              {"insert_leftover", c.insert_leftover}};
    j["selection_q"] = c.selection_q_override ? json(*c.selection_q_override) : json(nullptr);
    return j;
}

PipelineConfig pipeline_from_json(const json& j) {
    PipelineConfig c;
    c.r = j.at("r").get<int>();
    c.alpha = j.at("alpha").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.beta = j.at("beta").get<double>();
    c.zeta = j.at("zeta").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.rounds = j.at("rounds").get<int>();
    c.connector_target = j.at("connector_target").get<int>();
    c.absorber_target = j.at("absorber_target").get<int>();
    c.cover_segment_length = j.at("cover_segment_length").get<int>();
    c.candidate_limit = j.at("candidate_limit").get<int>();
    c.search.attempts = j.at("search_attempts").get<int>();
    c.search.nodes_per_attempt = j.at("search_nodes").get<std::uint64_t>();
    c.n_floor_factor = j.at("n_floor_factor").get<int>();
    c.extend_absorber_ends = j.at("extend_absorber_ends").get<bool>();
    c.extend_path_ends = j.at("extend_path_ends").get<bool>();
    c.insert_leftover = j.at("insert_leftover").get<bool>();
    if (!j.at("selection_q").is_null()) c.selection_q_override = j.at("selection_q").get<double>();
    return c;
}

}  // namespace

std::string TrialSpec::grid_key() const {
    return "k=" + std::to_string(k) + ";r=" + std::to_string(r) + ";n=" + std::to_string(n) + ";p=" + fmt(p) +
           ";host=" + host_label() + ";mode=" + mode;
}

std::string TrialSpec::host_label() const {
    if (host == "split") return "split(" + fmt(alpha, "%.12g") + ")";
    if (host == "codegree") return "codegree(" + fmt(codegree_fraction, "%.12g") + ")";
    return host;
}

KGraph build_host(const TrialSpec& spec) {
    check_spec(spec);
    if (spec.host == "complete") return complete_host(spec.k, spec.n);
    if (spec.host == "empty") return KGraph(spec.k, spec.n);
    if (spec.host == "split") return split_host(spec.k, spec.n, spec.alpha);
    const double frac = spec.codegree_fraction > 0.0
                            ? spec.codegree_fraction
                            : 1.0 - threshold_exponent(spec.k, spec.r).to_double() + spec.alpha;
    const std::size_t cap = spec.n >= static_cast<std::uint32_t>(spec.k) ? spec.n - spec.k + 1 : 0;
    const auto target = std::min<std::size_t>(cap, static_cast<std::size_t>(std::ceil(frac * spec.n - 1e-9)));
    RngStream rng = RngStream(spec.seed, spec.stream_id).derive(hash_string("host"));
    return codegree_host(spec.k, spec.n, target, rng).graph;
}

Outcome run_trial(const TrialSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        check_spec(spec);
        const KGraph host = build_host(spec);
        RngStream trial(spec.seed, spec.stream_id);
        RngStream grng = trial.derive(hash_string("random graph"));
        if (spec.mode == "pipeline") {
            PipelineConfig cfg = spec.pipeline;
            cfg.r = spec.r;
            const PipelineResult res = run_pipeline(host, spec.p, cfg, grng);
            o.success = res.success;
            o.status = res.success ? "success" : "failure";
            o.stage = res.failed_stage;
            o.count = static_cast<std::int64_t>(res.order.size());
        } else {
            const KGraph g = graph_union(host, sample_gnp(spec.k, spec.n, spec.p, grng));
            if (spec.mode == "exact") {
                const ExactResult e = contains_power_hamilton(g, spec.r, spec.exact_budget);
                o.status = to_string(e.status);
                o.success = e.status == SearchStatus::Found;
                o.nodes = e.nodes;
            } else if (spec.mode == "count") {
                const KGraph pattern = power_path(spec.k, spec.r, static_cast<std::uint32_t>(pattern_length(spec)));
                CountOptions opt;
                opt.budget = spec.count_budget;
                const CopyCountReport rep = count_labelled_copies(pattern, g, opt);
                o.status = rep.truncated ? "truncated" : "ok";
                o.success = rep.labelled_count > 0;
                o.count = static_cast<std::int64_t>(rep.labelled_count);
                o.overlaps = rep.overlaps_counted ? static_cast<std::int64_t>(rep.overlapping_pairs) : -1;
                o.nodes = rep.nodes;
            } else {
                const KGraph pattern = power_path(spec.k, spec.r, static_cast<std::uint32_t>(pattern_length(spec)));
                RngStream lrng = trial.derive(hash_string("lemma"));
                const InducedCheck c = induced_contains_everywhere(pattern, g, spec.gamma, spec.samples, lrng);
                o.status = c.exhaustive ? "exhaustive" : "sampled";
                o.success = c.failures == 0;
                o.count = static_cast<std::int64_t>(c.failures);
                o.nodes = c.sampled;
            }
        }
    } catch (const std::exception& e) {
        o = Outcome{};
        o.status = "error";
        o.error = e.what();
    }
    o.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

bool same_outcome(const Outcome& a, const Outcome& b) {
    return std::tie(a.status, a.success, a.stage, a.count, a.overlaps, a.nodes, a.error) ==
           std::tie(b.status, b.success, b.stage, b.count, b.overlaps, b.nodes, b.error);
}

std::string record_to_json(const RunRecord& rec) {
    const TrialSpec& s = rec.spec;
    const Outcome& o = rec.outcome;
    json j;
    j["version"] = rec.version;
    j["spec"] = {{"k", s.k},
                 {"r", s.r},
                 {"n", s.n},
                 {"p", s.p},
                 {"host", s.host},
                 {"alpha", s.alpha},
                 {"codegree_fraction", s.codegree_fraction},
                 {"mode", s.mode},
                 {"seed", s.seed},
                 {"trial", s.trial},
                 {"stream_id", s.stream_id},
                 {"exact_budget", s.exact_budget},
                 {"count_budget", s.count_budget},
                 {"pattern_length", s.pattern_length},
                 {"gamma", s.gamma},
                 {"samples", s.samples},
                 {"pipeline", pipeline_json(s.pipeline)}};
    j["outcome"] = {{"status", o.status},   {"success", o.success}, {"stage", o.stage},
                    {"count", o.count},     {"overlaps", o.overlaps}, {"nodes", o.nodes},
                    {"runtime_ms", o.runtime_ms}, {"error", o.error}};
    return j.dump();
}

RunRecord record_from_json(const std::string& line) {
    try {
        const json j = json::parse(line);
        RunRecord rec;
        rec.version = j.at("version").get<std::string>();
        const json& s = j.at("spec");
        TrialSpec& t = rec.spec;
        t.k = s.at("k").get<int>();
        t.r = s.at("r").get<int>();
        t.n = s.at("n").get<std::uint32_t>();
        t.p = s.at("p").get<double>();
        t.host = s.at("host").get<std::string>();
        t.alpha = s.at("alpha").get<double>();
        t.codegree_fraction = s.at("codegree_fraction").get<double>();
        t.mode = s.at("mode").get<std::string>();
        t.seed = s.at("seed").get<std::uint64_t>();
        t.trial = s.at("trial").get<int>();
        t.stream_id = s.at("stream_id").get<std::uint64_t>();
        t.exact_budget = s.at("exact_budget").get<std::uint64_t>();
        t.count_budget = s.at("count_budget").get<std::uint64_t>();
        t.pattern_length = s.at("pattern_length").get<int>();
        t.gamma = s.at("gamma").get<double>();
        t.samples = s.at("samples").get<std::uint64_t>();
        t.pipeline = pipeline_from_json(s.at("pipeline"));
        const json& o = j.at("outcome");
        Outcome& out = rec.outcome;
        out.status = o.at("status").get<std::string>();
        out.success = o.at("success").get<bool>();
        out.stage = o.at("stage").get<std::string>();
        out.count = o.at("count").get<std::int64_t>();
        out.overlaps = o.at("overlaps").get<std::int64_t>();
        out.nodes = o.at("nodes").get<std::uint64_t>();
        out.runtime_ms = o.at("runtime_ms").get<double>();
        out.error = o.at("error").get<std::string>();
        return rec;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed record: ") + e.what());
    }
}

std::vector<RunRecord> read_records(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(record_from_json(line));
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<RunRecord> read_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_records(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

SweepConfig load_sweep_config(const ConfigFile& cfg) {
    const std::string sec = "sweep";
    cfg.require_known(sec, {"k", "r", "n", "p", "host", "mode", "trials", "seed", "threads", "alpha",
                            "codegree_fraction", "exact_budget", "count_budget", "pattern_length", "gamma", "samples"});
    cfg.require_known("", {});
    SweepConfig sc;
    TrialSpec& b = sc.base;
    auto wrap = [&](auto&& f) {
        try {
            f();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(cfg.origin(), 0, e.what());
        }
    };
    b.k = static_cast<int>(cfg.get_int(sec, "k", b.k));
    b.r = static_cast<int>(cfg.get_int(sec, "r", b.r));
    b.alpha = cfg.get_double(sec, "alpha", b.alpha);
    b.codegree_fraction = cfg.get_double(sec, "codegree_fraction", b.codegree_fraction);
    b.seed = static_cast<std::uint64_t>(cfg.get_int(sec, "seed", static_cast<long long>(b.seed)));
    b.exact_budget = static_cast<std::uint64_t>(cfg.get_int(sec, "exact_budget", static_cast<long long>(b.exact_budget)));
    b.count_budget = static_cast<std::uint64_t>(cfg.get_int(sec, "count_budget", static_cast<long long>(b.count_budget)));
    b.pattern_length = static_cast<int>(cfg.get_int(sec, "pattern_length", b.pattern_length));
    b.gamma = cfg.get_double(sec, "gamma", b.gamma);
    b.samples = static_cast<std::uint64_t>(cfg.get_int(sec, "samples", static_cast<long long>(b.samples)));
    b.pipeline = pipeline_config_from(cfg, "pipeline");
    b.pipeline.r = b.r;
    sc.trials = static_cast<int>(cfg.get_int(sec, "trials", 1));
    sc.threads = static_cast<int>(cfg.get_int(sec, "threads", 1));
    if (sc.trials < 0) throw ConfigError(cfg.origin(), 0, "trials must be >= 0");
    if (sc.threads < 0) throw ConfigError(cfg.origin(), 0, "threads must be >= 0");
    wrap([&] {
        if (cfg.has(sec, "n"))
            for (const auto& s : cfg.get_list(sec, "n")) {
                const long long v = parse_int(s, "n");
                if (v < 1) throw std::invalid_argument("n must be positive");
                sc.n.push_back(static_cast<std::uint32_t>(v));
            }
        if (cfg.has(sec, "p"))
            for (const auto& s : cfg.get_list(sec, "p")) sc.p.push_back(parse_double(s, "p"));
        sc.hosts = cfg.has(sec, "host") ? cfg.get_list(sec, "host") : std::vector<std::string>{"complete"};
        sc.modes = cfg.has(sec, "mode") ? cfg.get_list(sec, "mode") : std::vector<std::string>{"exact"};
        for (const auto& h : sc.hosts) check_member(h, kHosts, "host");
        for (const auto& m : sc.modes) check_member(m, kModes, "mode");
        for (double p : sc.p)
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
        TrialSpec probe = b;
        check_spec(probe);
    });
    return sc;
}

std::vector<TrialSpec> expand_grid(const SweepConfig& cfg) {
    std::vector<TrialSpec> out;
    for (auto n : cfg.n)
        for (double p : cfg.p)
            for (const auto& host : cfg.hosts)
                for (const auto& mode : cfg.modes)
                    for (int t = 0; t < cfg.trials; ++t) {
                        TrialSpec s = cfg.base;
                        s.n = n;
                        s.p = p;
                        s.host = host;
                        s.mode = mode;
                        s.trial = t;
                        s.stream_id = hash_string(s.grid_key() + "#" + std::to_string(t));
                        out.push_back(std::move(s));
                    }
    return out;
}

SweepReport run_sweep(const SweepConfig& cfg, const std::string& out_path) {
    const auto specs = expand_grid(cfg);
    SweepReport rep;
    rep.total = specs.size();

    std::set<std::string> done;
    namespace fs = std::filesystem;
    if (fs::exists(out_path)) {
        std::ifstream in(out_path, std::ios::binary);
        std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        std::size_t pos = 0, good_end = 0;
        int no = 0;
        while (pos < content.size()) {
            ++no;
            const auto nl = content.find('\n', pos);
            if (nl == std::string::npos) break;  // unterminated tail: re-run it
            const std::string line = content.substr(pos, nl - pos);
            pos = nl + 1;
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                good_end = pos;
                continue;
            }
            try {
                const RunRecord rec = record_from_json(line);
                done.insert(rec.spec.grid_key() + "#" + std::to_string(rec.spec.trial));
                good_end = pos;
            } catch (const std::exception& e) {
                if (pos >= content.size()) break;  // damaged last line
                throw std::runtime_error(out_path + ":" + std::to_string(no) + ": corrupt record: " + e.what());
            }
        }
        if (good_end < content.size()) fs::resize_file(out_path, good_end);
    }

    std::vector<const TrialSpec*> todo;
    for (const auto& s : specs) {
        if (done.count(s.grid_key() + "#" + std::to_string(s.trial)))
            ++rep.skipped;
        else
            todo.push_back(&s);
    }

    std::ofstream out(out_path, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            RunRecord rec{artifact_version(), *todo[i], run_trial(*todo[i])};
            const std::string line = record_to_json(rec);
            std::lock_guard<std::mutex> lock(mu);
            out << line << '\n';
            out.flush();
            ++rep.ran;
            if (rec.outcome.status == "error") ++rep.errored;
        }
    };
    int threads = cfg.threads == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency())) : cfg.threads;
    threads = std::max(1, std::min<int>(threads, static_cast<int>(todo.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (!out) throw std::runtime_error("write to " + out_path + " failed");
    return rep;
}

Wilson wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    if (successes > trials) throw std::invalid_argument("successes exceed trials");
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    using Key = std::tuple<int, int, std::uint32_t, double, std::string, std::string>;
    struct Acc {
        std::uint64_t trials = 0, successes = 0, errors = 0;
        std::vector<double> runtimes, counts;
        std::set<std::string> versions;
    };
    std::map<Key, Acc> groups;
    for (const auto& rec : records) {
        const auto& s = rec.spec;
        Acc& a = groups[{s.k, s.r, s.n, s.p, s.host_label(), s.mode}];
        ++a.trials;
        if (rec.outcome.success) ++a.successes;
        if (rec.outcome.status == "error") ++a.errors;
        a.runtimes.push_back(rec.outcome.runtime_ms);
        a.counts.push_back(static_cast<double>(rec.outcome.count));
        a.versions.insert(rec.version);
    }
    // Sorting before summation keeps the floating-point sums order independent.
    auto mean = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        double s = 0.0;
        for (double x : v) s += x;
        return v.empty() ? 0.0 : s / static_cast<double>(v.size());
    };
    std::vector<SummaryRow> rows;
    for (auto& [key, a] : groups) {
        if (a.trials == 0) continue;
        SummaryRow row;
        std::tie(row.k, row.r, row.n, row.p, row.host, row.mode) = key;
        row.trials = a.trials;
        row.successes = a.successes;
        row.success_rate = static_cast<double>(a.successes) / static_cast<double>(a.trials);
        row.ci = wilson_interval(a.successes, a.trials);
        row.mean_runtime_ms = mean(a.runtimes);
        row.mean_count = mean(a.counts);
        std::string warn;
        if (a.versions.size() > 1) {
            warn = "mixed versions:";
            for (const auto& v : a.versions) warn += " " + v;
        }
        if (a.errors > 0) warn += (warn.empty() ? "" : "; ") + std::to_string(a.errors) + " errored";
        row.warning = warn;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "k,r,n,p,host,mode,trials,successes,success_rate,ci_low,ci_high,mean_runtime_ms,mean_count,warning\n";
    for (const auto& r : rows) {
        out << r.k << ',' << r.r << ',' << r.n << ',' << fmt(r.p, "%.12g") << ',' << csv_field(r.host) << ','
            << csv_field(r.mode) << ',' << r.trials << ',' << r.successes << ',' << fmt(r.success_rate, "%.12g") << ','
            << fmt(r.ci.low, "%.12g") << ',' << fmt(r.ci.high, "%.12g") << ',' << fmt(r.mean_runtime_ms, "%.12g")
            << ',' << fmt(r.mean_count, "%.12g") << ',' << csv_field(r.warning) << '\n';
    }
}

}  // namespace tightpow
