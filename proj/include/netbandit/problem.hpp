#pragma once

#include <cstdint>
#include <vector>

#include "netbandit/rng.hpp"

namespace netbandit {

// A stochastic bandit problem with Bernoulli arms.  Arms are 1-based
// everywhere in the public API, matching the convention used for nodes.
struct ProblemInstance {
    std::vector<double> means;  // means[i] is the mean of arm i+1, in [0, 1]
    std::vector<double> gaps;   // gaps[i] = best mean - means[i], 0 for the best arm
    int optimal_arm = 0;        // 1-based index of the unique best arm

    int num_arms() const { return static_cast<int>(means.size()); }
};

inline constexpr int kMaxArms = 64;

// Validates means (2..64 arms, values in [0,1], unique maximum) and derives
// the gap vector.  Throws config_error on violation.
ProblemInstance make_instance(std::vector<double> means);

// Bernoulli reward for one pull of `arm`: 1.0 with probability means[arm-1],
// else 0.0.  Pure function of the stream coordinates.
double sample_reward(const ProblemInstance& instance, int arm, const RngStream& stream);

// Expected-regret accounting for a finished run.
struct RegretRecord {
    std::vector<double> per_node;                        // expected regret per node
    double network_total = 0.0;                          // sum over nodes
    std::vector<std::vector<std::int64_t>> arm_counts;   // [node][arm-1] pull counts
};

// Computes regret from per-node action sequences (actions[v][t] is the 1-based
// arm node v+1 played in round t+1).  All nodes must have equal-length,
// in-range sequences; throws config_error otherwise.
RegretRecord regret_of_actions(const ProblemInstance& instance,
                               const std::vector<std::vector<int>>& actions);

}  // namespace netbandit
