#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netbandit/bounds.hpp"
#include "netbandit/policy.hpp"

namespace netbandit {

// One labelled simulation run inside an experiment.
struct SeriesSpec {
    std::string label;
    SimulationConfig config;
};

// A parsed experiment file: global parameters plus one or more series.
struct ExperimentSpec {
    std::string name = "experiment";
    double delta = 0.1;  // lower-bound parameter
    double beta = 0.5;   // upper-bound parameter
    // Globals kept for commands that take no series (table1, bounds):
    ProblemInstance instance;
    std::int64_t horizon = 0;
    int replications = 0;
    std::uint64_t seed = 0;
    std::optional<Topology> global_topology;  // set when the global section names one
    std::vector<SeriesSpec> series;
};

// Parses the flat key=value format (see the CLI help or README for the key
// list).  `base_dir` resolves relative edge-list paths.  config_error with
// line numbers for malformed input.
ExperimentSpec parse_experiment_text(const std::string& text, const std::string& base_dir);
ExperimentSpec parse_experiment_file(const std::string& path);

// Replication-averaged results of one series.  Means and standard deviations
// are folded in replication order regardless of worker count, so output bytes
// never depend on --jobs.
struct AggregateResult {
    int m = 0;
    int num_arms = 0;
    std::int64_t horizon = 0;
    int replications = 0;
    std::vector<double> mean_regret;            // per round
    std::vector<double> std_regret;             // per round (sample std)
    std::vector<double> mean_percent_optimal;   // per round
    std::vector<double> final_regrets;          // per replication
    double mean_final_regret = 0.0;
    double std_final_regret = 0.0;
    std::vector<std::vector<double>> mean_own_count;  // [node][arm]
};

// Runs config.replications replications, jobs workers (jobs <= 1: inline).
AggregateResult run_replications(const SimulationConfig& config, int jobs);

// ---- output documents -------------------------------------------------

// One-replication export: replication, round, node, action, reward.
std::string trace_csv(const SimulationTrace& trace, int replication);

// Per-series curve file: round, mean_regret, std_regret, mean_percent_optimal.
std::string curves_csv(const AggregateResult& result);

// One row per (series, node role) with the mean per-arm pull counts.  Roles:
// star topology splits center/leaf, fyl splits leader/follower, everything
// else is a single "node" role.
std::string summary_csv(const std::vector<SeriesSpec>& series,
                        const std::vector<AggregateResult>& results);

// Hub-versus-leaf pull counts of the suboptimal arm on star networks.
struct Table1Row {
    int m = 0;
    double center_mean = 0.0;  // suboptimal pulls of the hub, averaged over reps
    double leaf_mean = 0.0;    // averaged over reps and leaves
    double leaf_max = 0.0;     // worst leaf (by its replication mean)
};
std::string table1_csv(const std::vector<Table1Row>& rows);

std::string bounds_csv(const std::vector<BoundRow>& rows);

// Line chart of the mean-regret curves (log-scaled rounds axis).  Points are
// a geometric subsample of the CSV rows; nothing is plotted that is not in
// the CSV.
std::string chart_svg(const std::string& title, const std::vector<SeriesSpec>& series,
                      const std::vector<AggregateResult>& results);

}  // namespace netbandit
