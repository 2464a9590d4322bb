// netbandit: run collaborative-bandit simulations and evaluate regret bounds.
//
// Subcommands: simulate, table1, bounds, domset.  Exit codes: 0 success,
// 2 configuration error, 3 scale-gate error, 4 I/O error.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "netbandit/errors.hpp"
#include "netbandit/experiment.hpp"
#include "netbandit/textio.hpp"

namespace {

using namespace netbandit;

constexpr const char* kConfigHelp = R"(Config file format (flat key = value; '#' starts a comment):

  Global keys:
    name          bare file-name prefix for outputs (default "experiment")
    means         comma-separated Bernoulli means in [0,1], e.g. 0.7,0.5
    horizon       rounds per replication (n)
    replications  sample paths to average (default 1)
    seed          64-bit RNG seed (default 0)
    delta         lower-bound parameter in (0,1), bounds command only
    beta          upper-bound parameter in (0.25,1), bounds command only

  Series sections ([series <label>], one per curve) inherit the global keys
  and add:
    topology      fully_connected | circular | star | fully_disconnected | custom
    m             node count (canonical topologies)
    edges         edge-list path (custom topology; relative to the config file)
    policy        ucb_network | fyl | isolated_ucb1 | uniform_random
    leaders       comma-separated dominating set for fyl (default: greedy)

Edge-list format: a "nodes <m>" header line, then "u v" pairs (1-based);
whole-line '#' comments allowed.  Self-loops are implicit.
)";

std::string sanitize(const std::string& label) {
    std::string out = label;
    for (char& c : out) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') {
            c = '_';
        }
    }
    return out;
}

std::string out_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

void emit(const std::string& path, const std::string& body) {
    write_text_file(path, body);
    std::printf("wrote %s\n", path.c_str());
}

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void apply_fast(SimulationConfig& config) {
    config.horizon = std::min<std::int64_t>(config.horizon, 10000);
    config.replications = std::min(config.replications, 20);
}

int run_simulate(const std::string& config_path, bool has_seed, std::uint64_t seed,
                 int jobs, bool fast, const std::string& out_dir) {
    ExperimentSpec spec = parse_experiment_file(config_path);
    if (spec.series.empty()) {
        throw config_error("config: simulate needs at least one [series <label>] section");
    }
    for (SeriesSpec& series : spec.series) {
        if (has_seed) series.config.seed = seed;
        if (fast) apply_fast(series.config);
    }

    std::vector<AggregateResult> results;
    results.reserve(spec.series.size());
    for (const SeriesSpec& series : spec.series) {
        std::printf("series %s: %d replications of %lld rounds...\n",
                    series.label.c_str(), series.config.replications,
                    static_cast<long long>(series.config.horizon));
        std::fflush(stdout);
        results.push_back(run_replications(series.config, jobs));
        emit(out_path(out_dir, spec.name + "_" + sanitize(series.label) + "_curves.csv"),
             curves_csv(results.back()));
    }
    emit(out_path(out_dir, spec.name + "_summary.csv"), summary_csv(spec.series, results));
    emit(out_path(out_dir, spec.name + "_chart.svg"),
         chart_svg(spec.name, spec.series, results));
    return 0;
}

int run_table1(const std::string& config_path, const std::vector<int>& m_list,
               bool has_seed, std::uint64_t seed, int jobs, bool fast,
               const std::string& out_dir) {
    ProblemInstance instance = make_instance({0.7, 0.5});
    std::int64_t horizon = 100000;
    int replications = 100;
    std::uint64_t run_seed = 0;

    if (!config_path.empty()) {
        const ExperimentSpec spec = parse_experiment_file(config_path);
        if (!spec.series.empty()) {
            throw config_error("config: table1 takes only global keys, not series sections");
        }
        if (spec.global_topology && *spec.global_topology != Topology::star) {
            throw config_error("config: table1 runs star networks only");
        }
        instance = spec.instance;
        horizon = spec.horizon;
        replications = spec.replications;
        run_seed = spec.seed;
    }
    if (instance.num_arms() != 2) {
        throw config_error("config: table1 needs a two-arm instance");
    }
    if (has_seed) run_seed = seed;

    const int suboptimal = instance.optimal_arm == 1 ? 2 : 1;
    std::vector<Table1Row> rows;
    for (const int m : m_list) {
        if (m < 2) throw config_error("table1: every m must be >= 2");
        SimulationConfig config;
        config.instance = instance;
        config.network = generate(Topology::star, m);
        config.policy = PolicyKind::ucb_network;
        config.horizon = horizon;
        config.replications = replications;
        config.seed = run_seed;
        if (fast) apply_fast(config);

        std::printf("star m=%d: %d replications of %lld rounds...\n", m,
                    config.replications, static_cast<long long>(config.horizon));
        std::fflush(stdout);
        const AggregateResult result = run_replications(config, jobs);

        Table1Row row;
        row.m = m;
        row.center_mean = result.mean_own_count[0][suboptimal - 1];
        double total = 0.0, worst = 0.0;
        for (int v = 2; v <= m; ++v) {
            const double count = result.mean_own_count[v - 1][suboptimal - 1];
            total += count;
            worst = std::max(worst, count);
        }
        row.leaf_mean = total / static_cast<double>(m - 1);
        row.leaf_max = worst;
        rows.push_back(row);
    }
    emit(out_path(out_dir, "table1.csv"), table1_csv(rows));
    return 0;
}

int run_bounds(const std::string& config_path, std::optional<double> delta,
               std::optional<double> beta, const std::string& out_dir) {
    const ExperimentSpec spec = parse_experiment_file(config_path);
    if (spec.series.empty()) {
        throw config_error("config: bounds needs at least one [series <label>] section");
    }
    const double use_delta = delta.value_or(spec.delta);
    const double use_beta = beta.value_or(spec.beta);
    if (!(use_delta > 0.0 && use_delta < 1.0)) {
        throw config_error("bounds: --delta must lie in (0, 1)");
    }
    if (!(use_beta > 0.25 && use_beta < 1.0)) {
        throw config_error("bounds: --beta must lie in (0.25, 1)");
    }
    std::vector<BoundRow> rows;
    for (const SeriesSpec& series : spec.series) {
        std::vector<BoundRow> part =
            compute_bound_rows(series.label, series.config.instance,
                               series.config.network, series.config.horizon,
                               use_delta, use_beta);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(out_path(out_dir, spec.name + "_bounds.csv"), bounds_csv(rows));
    return 0;
}

int run_domset(const std::string& edges_path, const std::string& topology,
               int m) {
    Network net;
    if (!edges_path.empty()) {
        if (!topology.empty() || m > 0) {
            throw config_error("domset: give either --edges or --topology/--m, not both");
        }
        net = read_edge_list(edges_path);
    } else {
        if (topology.empty() || m <= 0) {
            throw config_error("domset: need --edges PATH or --topology NAME with --m N");
        }
        net = generate(topology_from_name(topology), m);
    }

    const DominatingSet greedy = greedy_dominating_set(net);
    std::printf("nodes: %d\n", net.m);
    std::printf("topology: %s\n", topology_name(net.topology));
    std::printf("greedy dominating set (%zu nodes):", greedy.members.size());
    for (const int v : greedy.members) std::printf(" %d", v);
    std::printf("\n");
    for (const int leader : greedy.members) {
        std::printf("  leader %d <-", leader);
        for (int v = 1; v <= net.m; ++v) {
            if (greedy.leader_of[v] == leader) std::printf(" %d", v);
        }
        std::printf("\n");
    }
    if (net.m <= 20) {
        const DominatingSet best = brute_force_min_dominating_set(net);
        std::printf("brute-force minimum size: %zu\n", best.members.size());
    } else {
        std::printf("brute-force minimum size: skipped (only computed for m <= 20)\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netbandit: collaborative bandit simulations on user graphs"};
    app.require_subcommand(1);
    app.footer(kConfigHelp);

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 0;
    bool has_seed = false, fast = false;
    int jobs = default_jobs();
    std::vector<int> m_list = {5, 10, 25, 50, 100, 200, 350};
    std::string edges_path, topology;
    int domset_m = 0;

    auto add_run_flags = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", config_path, "experiment config file");
        if (config_required) opt->required();
        cmd->add_option("--seed", seed, "override the config seed")
            ->each([&](const std::string&) { has_seed = true; });
        cmd->add_option("--jobs", jobs, "worker threads for replications")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--fast", fast, "cap runs at horizon 10000, 20 replications");
        cmd->add_option("--out", out_dir, "output directory (default: .)");
    };

    CLI::App* sim = app.add_subcommand(
        "simulate", "run every config series; write curve CSVs, a summary CSV, an SVG");
    add_run_flags(sim, true);

    CLI::App* tab = app.add_subcommand(
        "table1", "hub vs leaf suboptimal-arm pull counts on star networks");
    add_run_flags(tab, false);
    tab->add_option("--m", m_list, "star sizes to sweep")->delimiter(',');

    CLI::App* bnd = app.add_subcommand(
        "bounds", "evaluate regret bounds for every config series");
    bnd->add_option("--config", config_path, "experiment config file")->required();
    std::optional<double> delta, beta;
    bnd->add_option("--delta", delta, "lower-bound parameter in (0,1), default 0.1");
    bnd->add_option("--beta", beta, "upper-bound parameter in (0.25,1), default 0.5");
    bnd->add_option("--out", out_dir, "output directory (default: .)");

    CLI::App* dom = app.add_subcommand(
        "domset", "report greedy and exact dominating sets of a graph");
    dom->add_option("--edges", edges_path, "edge-list file");
    dom->add_option("--topology", topology, "canonical topology name");
    dom->add_option("--m", domset_m, "node count for --topology");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_simulate(config_path, has_seed, seed, jobs, fast, out_dir);
        if (tab->parsed()) {
            return run_table1(config_path, m_list, has_seed, seed, jobs, fast, out_dir);
        }
        if (bnd->parsed()) return run_bounds(config_path, delta, beta, out_dir);
        return run_domset(edges_path, topology, domset_m);
    } catch (const config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const scale_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
