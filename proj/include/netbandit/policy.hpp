#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netbandit/graph.hpp"
#include "netbandit/problem.hpp"
#include "netbandit/rng.hpp"

namespace netbandit {

enum class PolicyKind {
    ucb_network,     // UCB over closed-neighborhood statistics
    fyl,             // follow-your-leader over a dominating-set partition
    isolated_ucb1,   // UCB over own samples only (ignores the graph)
    uniform_random,  // uniform arm each round (baseline)
};

const char* policy_name(PolicyKind p);
PolicyKind policy_from_name(const std::string& name);

// The optimistic index mean_estimate + sqrt(2 ln t / count).
// count must be >= 1 and t >= 1 (the engine never queries an arm before its
// initialization sweep sample exists).  t is real-valued so the formula can
// be evaluated at analytic points as well as integer rounds.
double ucb_index(double mean_estimate, std::int64_t count, double t);

// Per-node running statistics.  neighborhood_* aggregate the samples the node
// can see (its closed neighborhood; for FYL leaders, their component), while
// own_count tracks only the node's own pulls.  Reward sums are stored as
// integers because rewards are Bernoulli, which keeps every derived quantity
// exact and platform-independent.
struct NodeStatistics {
    std::vector<std::int64_t> neighborhood_count;       // per arm
    std::vector<std::int64_t> neighborhood_reward_sum;  // per arm
    std::vector<std::int64_t> own_count;                // per arm

    explicit NodeStatistics(int num_arms = 0)
        : neighborhood_count(num_arms, 0),
          neighborhood_reward_sum(num_arms, 0),
          own_count(num_arms, 0) {}

    double mean_estimate(int arm) const {
        return static_cast<double>(neighborhood_reward_sum[arm - 1]) /
               static_cast<double>(neighborhood_count[arm - 1]);
    }
};

struct SimulationConfig {
    ProblemInstance instance;
    Network network;
    PolicyKind policy = PolicyKind::ucb_network;
    std::int64_t horizon = 0;  // rounds, must be >= num_arms
    int replications = 1;
    std::uint64_t seed = 0;
    // Required by fyl; ignored by the other policies.
    std::optional<DominatingSet> dominating_set;
};

void validate_config(const SimulationConfig& config);

// Everything one replication produced.  actions/rewards are stored
// round-major: entry (t-1)*m + (v-1) belongs to node v in round t.
struct SimulationTrace {
    int m = 0;
    int num_arms = 0;
    std::int64_t horizon = 0;
    std::vector<std::uint8_t> actions;            // 1-based arm ids
    std::vector<std::uint8_t> rewards;            // 0 or 1
    std::vector<double> regret_curve;             // cumulative expected regret
    std::vector<double> percent_optimal_curve;    // optimal-pull share of rounds 1..t
    std::vector<NodeStatistics> final_stats;      // per node
    double final_regret = 0.0;                    // = sum of gaps * final pull counts

    int action(int v, std::int64_t t) const {
        return actions[static_cast<std::size_t>(t - 1) * m + (v - 1)];
    }
    double reward(int v, std::int64_t t) const {
        return rewards[static_cast<std::size_t>(t - 1) * m + (v - 1)];
    }
    // Per-node action sequences in the regret_of_actions layout.
    std::vector<std::vector<int>> action_lists() const;
};

// Runs one replication (1-based index, part of the RNG coordinates).
//
// Round structure: all nodes choose simultaneously, rewards realize, then
// statistics propagate, so a decision in round t+1 sees exactly rounds 1..t.
// Rounds 1..K are an unconditional arm sweep (node plays arm t); from round
// K+1 on, UCB-style policies pick argmax_j ucb_index(mean_j, count_j, t)
// using the statistics available after round t, ties to the lowest arm.
// FYL followers play one uniform arm in round 1 and copy their leader's
// previous action afterwards; leaders run the UCB rule over samples from
// their own component only (adjacent nodes outside it are ignored).
SimulationTrace simulate(const SimulationConfig& config, int replication);

// Cumulative share of optimal pulls: value at index t-1 covers rounds 1..t
// over all nodes.  Validates shapes like regret_of_actions.
std::vector<double> percent_optimal(const ProblemInstance& instance,
                                    const std::vector<std::vector<int>>& actions);

}  // namespace netbandit
