#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "tightpow/absorbing.hpp"
#include "tightpow/config.hpp"
#include "tightpow/kgraph.hpp"

namespace tightpow {

std::string artifact_version();

/// Everything needed to re-run one trial.
struct TrialSpec {
    int k = 2;
    int r = 1;
    std::uint32_t n = 0;
    double p = 0.0;
    std::string host = "complete";  ///< complete | split | codegree | empty
    double alpha = 0.3;             ///< split host: small class fraction
    double codegree_fraction = 0.0; ///< codegree host: target ceil(fraction n); 0 means 1 - c + alpha
    std::string mode = "exact";     ///< exact | pipeline | count | lemma-check
    std::uint64_t seed = 1;
    int trial = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t exact_budget = 100'000'000;
    std::uint64_t count_budget = 10'000'000;
    int pattern_length = 0;  ///< count / lemma-check pattern P_L^r; 0 means 2h
    double gamma = 0.5;      ///< lemma-check subset fraction
    std::uint64_t samples = 200;
    PipelineConfig pipeline;

    /// "k=..;r=..;n=..;p=..;host=..;mode=.." with p printed round-trip exact.
    std::string grid_key() const;
    std::string host_label() const;
};

struct Outcome {
    std::string status;  ///< found, not_found, timeout, success, failure, ok, truncated, error
    bool success = false;
    std::string stage;
    std::int64_t count = 0;
    std::int64_t overlaps = 0;
    std::uint64_t nodes = 0;
    double runtime_ms = 0.0;
    std::string error;
};

struct RunRecord {
    std::string version;
    TrialSpec spec;
    Outcome outcome;
};

/// Host graph for a trial, built from its own derived stream.
KGraph build_host(const TrialSpec& spec);

/// Runs one trial. Everything but runtime_ms is a function of the spec.
Outcome run_trial(const TrialSpec& spec);

/// Outcome fields agree, runtime excluded.
bool same_outcome(const Outcome& a, const Outcome& b);

std::string record_to_json(const RunRecord& rec);
/// Throws std::runtime_error on malformed input.
RunRecord record_from_json(const std::string& line);

/// Reads a JSONL record file. A corrupt line throws std::runtime_error naming
/// its line number; blank lines are skipped.
std::vector<RunRecord> read_records(std::istream& in);
std::vector<RunRecord> read_records_file(const std::string& path);

struct SweepConfig {
    TrialSpec base;
    std::vector<std::uint32_t> n;
    std::vector<double> p;
    std::vector<std::string> hosts;
    std::vector<std::string> modes;
    int trials = 1;
    int threads = 1;
};

/// [sweep] holds the grid and trial settings, [pipeline] the pipeline constants.
SweepConfig load_sweep_config(const ConfigFile& cfg);

/// Grid order: n, p, host, mode, trial. Stream ids hash the grid key and trial.
std::vector<TrialSpec> expand_grid(const SweepConfig& cfg);

struct SweepReport {
    std::size_t total = 0;
    std::size_t skipped = 0;  ///< already present in the output file
    std::size_t ran = 0;
    std::size_t errored = 0;
};

/// Appends one record per completed trial to `out_path`. Records already in
/// the file are skipped; a truncated final line is dropped and re-run.
SweepReport run_sweep(const SweepConfig& cfg, const std::string& out_path);

struct Wilson {
    double low = 0.0;
    double high = 0.0;
};
Wilson wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

struct SummaryRow {
    int k = 0;
    int r = 0;
    std::uint32_t n = 0;
    double p = 0.0;
    std::string host;
    std::string mode;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double success_rate = 0.0;
    Wilson ci;
    double mean_runtime_ms = 0.0;
    double mean_count = 0.0;
    std::string warning;
};

/// One row per grid point, sorted by (k, r, n, p, host, mode). Independent of record order.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace tightpow
