#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tightpow/embedding.hpp"
#include "tightpow/kgraph.hpp"
#include "tightpow/power.hpp"
#include "tightpow/rng.hpp"

namespace tightpow {

struct PipelineConfig {
    int r = 1;
    // Hierarchy constants; only the strict ordering is checked.
    double alpha = 0.3;
    double epsilon = 0.05;
    double beta = 0.1;
    double zeta = 0.2;
    double gamma = 0.5;
    int rounds = 3;
    int connector_target = 0;      ///< 0: max(2, ceil(beta^2 n / (2h)^2))
    int absorber_target = 0;       ///< 0: max(1, ceil(zeta^2 n / (2h)^2))
    int cover_segment_length = 0;  ///< 0: max(2h, round(g^{-1}(1/(2 epsilon))))
    std::optional<double> selection_q_override;
    int candidate_limit = 64;  ///< candidate tuples drawn per search call
    SearchBudget search{};
    int n_floor_factor = 8;  ///< run_pipeline rejects n < factor * h
    bool extend_absorber_ends = false;
    bool extend_path_ends = false;
    bool insert_leftover = true;  ///< greedy insertion into the closed cycle before absorbing

    void validate() const;
    int resolved_connector_target(std::uint32_t n, int h) const;
    int resolved_absorber_target(std::uint32_t n, int h) const;
    int resolved_segment_length(int k, int h) const;
};

/// Raised by pipeline stages; `stage` names where the construction broke.
class StageFailure : public std::runtime_error {
public:
    StageFailure(std::string stage, std::string detail)
        : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)), detail_(std::move(detail)) {}
    const std::string& stage() const { return stage_; }
    const std::string& detail() const { return detail_; }

private:
    std::string stage_;
    std::string detail_;
};

/// Vertex-disjoint power paths.
struct PathSystem {
    std::vector<PowerPathInstance> paths;
    std::vector<char> used;  ///< membership mask over all n vertices

    explicit PathSystem(std::uint32_t n = 0) : used(n, 0) {}
    /// Throws std::logic_error if the path meets a used vertex.
    void add(PowerPathInstance p);
    std::size_t vertex_count() const;
};

struct RegisteredAbsorber {
    OrderedTuple tuple;      ///< (w_1..w_2h)
    std::size_t offset = 0;  ///< position of w_1 in the absorbing path
};

/// Absorbers embedded in the absorbing path and, per vertex, the ones that absorb it.
struct AbsorberRegistry {
    std::vector<RegisteredAbsorber> absorbers;
    std::vector<std::vector<std::size_t>> by_vertex;  ///< indices into absorbers
};

struct AbsorbingPath {
    PowerPathInstance path;
    AbsorberRegistry registry;
};

/// Tracks which stage owns each vertex; claiming an owned vertex is a logic error.
class VertexLedger {
public:
    explicit VertexLedger(std::uint32_t n) : owner_(n) {}
    void claim(std::span<const Vertex> vs, const std::string& stage);
    void release(std::span<const Vertex> vs);
    bool free(Vertex v) const { return owner_[v].empty(); }

private:
    std::vector<std::string> owner_;
};

/// True iff `tuple` (length 2h) spans P_{2h}^r and inserting v after w_h spans P_{2h+1}^r.
bool is_absorber_for(const KGraph& g, int r, std::span<const Vertex> tuple, Vertex v);

/// Up to `limit` distinct v-absorbers on vertices marked in `available` (all
/// vertices when empty; v itself is always excluded).
std::vector<OrderedTuple> find_absorbers(const KGraph& work, int r, Vertex v, int limit, RngStream& rng,
                                         std::span<const char> available = {}, const SearchBudget& budget = {});

/// Up to `limit` distinct 2h-tuples C with ACB spanning P_{4h}^r, drawn from
/// `available` (all when empty). A and B must be disjoint h-cliques.
std::vector<OrderedTuple> find_connectors(const KGraph& work, int r, std::span<const Vertex> a,
                                          std::span<const Vertex> b, int limit, RngStream& rng,
                                          std::span<const char> available = {}, const SearchBudget& budget = {});

/// Vertex-disjoint copies of P_{2h}^r inside `available`: sampled candidates,
/// kept independently with probability q, overlaps deleted, then topped up.
/// Throws StageFailure("reservoir") when fewer than `target` remain.
PathSystem build_connector_reservoir(const KGraph& work, int r, std::span<const char> available, int target,
                                     double p, const PipelineConfig& cfg, RngStream& rng);

/// Absorber harvest, optional end extension, chaining through connectors.
/// Throws StageFailure("absorber harvest" | "absorber chaining").
AbsorbingPath build_absorbing_path(const KGraph& work, const PipelineConfig& cfg, RngStream& rng);

struct CoverResult {
    PathSystem system;
    std::vector<Vertex> leftover;
};

/// Greedy disjoint copies of P_m^r avoiding `forbidden`, at most `max_paths`.
CoverResult greedy_path_cover(const KGraph& work, int r, std::span<const char> forbidden, int m, int max_paths,
                              const PipelineConfig& cfg, RngStream& rng);

/// Inserts leftover vertices into gaps of the cyclic sequence at positions
/// >= `protect` (the prefix holds the absorbing path) whenever every window
/// through the new vertex is a clique. Returns the vertices still unplaced.
std::vector<Vertex> insert_into_cycle(const KGraph& g, int r, OrderedTuple& cycle, std::size_t protect,
                                      std::vector<Vertex> leftover);

/// Joins p_abs and the cover paths into one cyclic sequence through unused
/// reservoir members (either orientation; cover paths may be reversed).
/// Used connectors are removed from `reservoir`. Throws StageFailure("connector exhaustion").
OrderedTuple close_cycle(const KGraph& g, int r, const PowerPathInstance& p_abs, const PathSystem& paths,
                         PathSystem& reservoir);

/// Splices each leftover vertex into a distinct registered absorber (bipartite
/// matching). Ends are unchanged. Throws StageFailure("absorb leftover").
PowerPathInstance absorb_leftover(const KGraph& g, const AbsorbingPath& p_abs, std::span<const Vertex> leftover);

struct StageTiming {
    std::string stage;
    double ms = 0.0;
};

struct PipelineResult {
    bool success = false;
    std::string failed_stage;
    std::string message;
    OrderedTuple order;  ///< cyclic order on success
    std::vector<StageTiming> timings;
    std::vector<std::pair<std::string, std::int64_t>> counters;
};

/// Exposes G(n,p) in cfg.rounds rounds and runs the absorbing construction on
/// H plus the rounds. Success is only reported after is_power_hamilton_cycle
/// passes on H together with every round.
PipelineResult run_pipeline(const KGraph& host, double p, const PipelineConfig& cfg, RngStream& rng);

}  // namespace tightpow
