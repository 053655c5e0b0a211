#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rpd/absorption.hpp"
#include "rpd/almost_embed.hpp"
#include "rpd/digraph.hpp"
#include "rpd/embedding.hpp"
#include "rpd/random_models.hpp"
#include "rpd/stats.hpp"
#include "rpd/tree.hpp"
#include "rpd/tree_gen.hpp"

namespace rpd {

struct TreeSpec {
    std::string kind = "random";  // "random" or a family name

    bool operator==(const TreeSpec&) const = default;
};

struct BaseSpec {
    BaseStyle style = BaseStyle::doubled_bipartite;

    bool operator==(const BaseSpec&) const = default;
};

struct PipelineConfig {
    int n = 0;
    double alpha = 0.0;
    int delta = 0;
    double c = 0.0;
    double epsilon = 0.0;
    double gamma = 0.0;  // 0: default 1/(2*(delta^2+1))
    long tau = -1;       // -1: default 2*ceil(epsilon*n)
    RetryPolicy policy;
    std::uint64_t master_seed = 0;
    TreeSpec tree;
    BaseSpec base;
    int full_sweep_max_n = 400;  // all-triples minimum recorded up to this n

    void validate() const;
    double effective_gamma() const;
    long effective_tau() const;
    int prefix_order() const;  // ceil((1-epsilon)*n)

    bool operator==(const PipelineConfig&) const = default;
};

struct PhaseTimings {
    double ms_random = 0.0, ms_embed = 0.0, ms_pack = 0.0, ms_count = 0.0, ms_complete = 0.0,
           ms_verify = 0.0;
};

// Everything a trial produced. Timings are diagnostics and are excluded from
// the canonical serialization, which is what the determinism contract covers.
struct TrialRecord {
    int trial_index = 0;
    std::uint64_t seed = 0;  // trial-level stream seed derived from the master
    PipelineConfig config;

    bool almost_success = false;
    int almost_depth = 0;
    int restarts_used = 0;

    int pack_full = 0;   // greedy pack size on the prefix tree
    int pack_gamma = 0;  // truncated to ceil(gamma*n), used by completion
    int pack_ncap = 0;   // truncated to min(gamma*n, alpha*n/(6*(delta+1)))

    long min_abs_all = -1;  // over all triples (small-n full sweep), on the ncap pack
    Triple argmin_all;
    long min_abs_unembedded = -1;  // w restricted to unembedded hosts
    Triple argmin_unembedded;
    bool hypothesis_met = false;  // measured minimum >= tau

    bool completion_success = false;
    int completion_fail_step = -1;
    long min_step_count = -1;  // smallest per-step absorbing count consumed

    bool verified = false;
    bool prefix_random_only = false;  // almost-embedding verifies against R alone

    std::optional<Embedding> witness;
    std::optional<Embedding> prefix_witness;  // in original tree ids

    PhaseTimings timings;

    bool success() const { return completion_success && verified; }

    // Deterministic text form of every semantic field (timings excluded);
    // equality of canonical strings is the replay contract.
    std::string canonical_string() const;

    static std::string csv_header();
    std::string csv_row() const;
};

// Instance generators. Seeds are derived from the master seed and the shape
// parameters only, so sweep cells that differ only in c share the same tree
// and base graph.
OrientedTree make_tree(const PipelineConfig& cfg);
Digraph make_base(const PipelineConfig& cfg);

// The trial's random part; resampling it from the config replays the trial's
// R bit-identically.
Digraph trial_random_part(const PipelineConfig& cfg, int trial_index);

// One end-to-end trial: valid ordering from root 0, prefix on
// ceil((1-eps)*n) vertices, almost-embedding into R only, greedy star pack
// (gamma-truncated for completion, N-capped for the measured minimum),
// absorbing minima in base-union-R, completion, final verification. All
// phase outcomes are recorded even when an early phase fails.
TrialRecord run_trial(const PipelineConfig& cfg, const OrientedTree& t, const Digraph& d_base,
                      int trial_index);

struct SweepCellResult {
    PipelineConfig cfg;
    std::string status = "ok";  // or "invalid: <reason>"
    int trials = 0;
    int successes = 0;
    WilsonInterval wilson;
    bool monotone_violation = false;
    std::vector<TrialRecord> records;
};

struct SweepResult {
    std::vector<SweepCellResult> cells;

    std::string cells_csv() const;
    std::string trials_csv() const;
};

// Runs every cell of the grid; trials are independent tasks over immutable
// inputs and the output order is canonical regardless of scheduling. Cells
// whose instance generation or validation fails are marked invalid. Cells
// that differ only in c are compared for monotonicity: a violation is
// flagged when a lower-c cell's Wilson interval lies entirely above a
// higher-c cell's.
SweepResult sweep(const std::vector<PipelineConfig>& grid, int trials_per_cell, int parallelism);

}  // namespace rpd
