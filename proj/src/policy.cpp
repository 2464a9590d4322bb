#include "netbandit/policy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "netbandit/errors.hpp"

namespace netbandit {

const char* policy_name(PolicyKind p) {
    switch (p) {
        case PolicyKind::ucb_network: return "ucb_network";
        case PolicyKind::fyl: return "fyl";
        case PolicyKind::isolated_ucb1: return "isolated_ucb1";
        case PolicyKind::uniform_random: return "uniform_random";
    }
    return "?";
}

PolicyKind policy_from_name(const std::string& name) {
    if (name == "ucb_network") return PolicyKind::ucb_network;
    if (name == "fyl") return PolicyKind::fyl;
    if (name == "isolated_ucb1") return PolicyKind::isolated_ucb1;
    if (name == "uniform_random") return PolicyKind::uniform_random;
    throw config_error("unknown policy '" + name +
                       "' (expected ucb_network, fyl, isolated_ucb1 or uniform_random)");
}

double ucb_index(double mean_estimate, std::int64_t count, double t) {
    if (count < 1) throw config_error("ucb_index needs count >= 1");
    if (!(t >= 1.0)) throw config_error("ucb_index needs t >= 1");
    return mean_estimate + std::sqrt(2.0 * std::log(t) / static_cast<double>(count));
}

void validate_config(const SimulationConfig& config) {
    const int k = config.instance.num_arms();
    if (k < 2) throw config_error("instance is not initialized");
    if (config.network.m < 1 || config.network.neighbors.empty()) {
        throw config_error("network is not initialized");
    }
    if (config.horizon < k) {
        throw config_error("horizon " + std::to_string(config.horizon) +
                           " is shorter than the " + std::to_string(k) +
                           "-round initialization sweep");
    }
    if (config.horizon > (std::int64_t{1} << 32)) {
        throw config_error("horizon exceeds the supported 2^32 rounds");
    }
    if (config.replications < 1) throw config_error("replications must be >= 1");
    if (config.policy == PolicyKind::fyl) {
        if (!config.dominating_set) {
            throw config_error("fyl policy needs a dominating set");
        }
        validate_dominating_set(config.network, *config.dominating_set);
    }
}

std::vector<std::vector<int>> SimulationTrace::action_lists() const {
    std::vector<std::vector<int>> lists(m, std::vector<int>(horizon));
    for (std::int64_t t = 1; t <= horizon; ++t) {
        for (int v = 1; v <= m; ++v) lists[v - 1][t - 1] = action(v, t);
    }
    return lists;
}

SimulationTrace simulate(const SimulationConfig& config, int replication) {
    validate_config(config);
    if (replication < 1 || replication > config.replications) {
        throw config_error("replication index " + std::to_string(replication) +
                           " out of range 1.." + std::to_string(config.replications));
    }

    const int m = config.network.m;
    const int k = config.instance.num_arms();
    const std::int64_t n = config.horizon;
    const std::uint64_t seed = config.seed;
    const std::uint64_t rep = static_cast<std::uint64_t>(replication);
    const double* means = config.instance.means.data();
    const double* gaps = config.instance.gaps.data();
    const int optimal = config.instance.optimal_arm;

    // Flat per-(node, arm) counters for the hot loop.
    std::vector<std::int64_t> nbr_cnt(static_cast<std::size_t>(m) * k, 0);
    std::vector<std::int64_t> nbr_sum(static_cast<std::size_t>(m) * k, 0);
    std::vector<std::int64_t> own_cnt(static_cast<std::size_t>(m) * k, 0);

    // absorb_targets[v-1]: the nodes whose statistics record node v's plays.
    // This is the transpose of "which samples does node u see", restricted by
    // the policy: closed neighborhoods for the neighborhood policies, the node
    // itself for isolated UCB, and component membership for FYL leaders
    // (a leader ignores adjacent nodes from other components).
    std::vector<std::vector<int>> absorb_targets(m);
    std::vector<int> leader_of(m + 1, 0);
    std::vector<std::uint8_t> is_leader(m + 1, 0);
    if (config.policy == PolicyKind::fyl) {
        const DominatingSet& ds = *config.dominating_set;
        leader_of = ds.leader_of;
        for (int leader : ds.members) is_leader[leader] = 1;
        for (int v = 1; v <= m; ++v) {
            for (int u : config.network.neighbors[v - 1]) {
                if (!is_leader[u] || leader_of[v] == u) {
                    absorb_targets[v - 1].push_back(u);
                }
            }
        }
    } else if (config.policy == PolicyKind::isolated_ucb1) {
        for (int v = 1; v <= m; ++v) absorb_targets[v - 1] = {v};
    } else {
        for (int v = 1; v <= m; ++v) absorb_targets[v - 1] = config.network.neighbors[v - 1];
    }

    SimulationTrace trace;
    trace.m = m;
    trace.num_arms = k;
    trace.horizon = n;
    trace.actions.resize(static_cast<std::size_t>(m) * n);
    trace.rewards.resize(static_cast<std::size_t>(m) * n);
    trace.regret_curve.resize(n);
    trace.percent_optimal_curve.resize(n);

    std::vector<int> act(m, 0);
    std::vector<int> prev_act(m, 0);
    double cum_regret = 0.0;
    std::int64_t cum_optimal = 0;

    for (std::int64_t t = 1; t <= n; ++t) {
        // Decisions use statistics through round t-1 and exploration ln(t-1).
        const double two_log_prev =
            t > k ? 2.0 * std::log(static_cast<double>(t - 1)) : 0.0;

        auto ucb_choice = [&](int v) -> int {
            if (t <= k) return static_cast<int>(t);  // initialization sweep
            const std::int64_t* cnt = &nbr_cnt[static_cast<std::size_t>(v - 1) * k];
            const std::int64_t* sum = &nbr_sum[static_cast<std::size_t>(v - 1) * k];
            double best = -std::numeric_limits<double>::infinity();
            int arm = 1;
            for (int j = 0; j < k; ++j) {
                const double c = static_cast<double>(cnt[j]);
                const double index =
                    static_cast<double>(sum[j]) / c + std::sqrt(two_log_prev / c);
                if (index > best) {  // ties stay with the lowest arm id
                    best = index;
                    arm = j + 1;
                }
            }
            return arm;
        };
        auto random_arm = [&](int v) -> int {
            const double u = RngStream{seed, rep, static_cast<std::uint64_t>(v),
                                       static_cast<std::uint64_t>(t), 1}
                                 .uniform();
            return 1 + static_cast<int>(u * k);
        };

        for (int v = 1; v <= m; ++v) {
            int arm = 0;
            switch (config.policy) {
                case PolicyKind::ucb_network:
                case PolicyKind::isolated_ucb1:
                    arm = ucb_choice(v);
                    break;
                case PolicyKind::fyl:
                    if (is_leader[v]) {
                        arm = ucb_choice(v);
                    } else {
                        arm = t == 1 ? random_arm(v) : prev_act[leader_of[v] - 1];
                    }
                    break;
                case PolicyKind::uniform_random:
                    arm = random_arm(v);
                    break;
            }
            act[v - 1] = arm;
        }

        // Rewards realize, statistics propagate, accounting updates.
        std::uint8_t* action_row = &trace.actions[static_cast<std::size_t>(t - 1) * m];
        std::uint8_t* reward_row = &trace.rewards[static_cast<std::size_t>(t - 1) * m];
        double round_regret = 0.0;
        for (int v = 1; v <= m; ++v) {
            const int arm = act[v - 1];
            const double u = RngStream{seed, rep, static_cast<std::uint64_t>(v),
                                       static_cast<std::uint64_t>(t), 0}
                                 .uniform();
            const std::int64_t reward = u < means[arm - 1] ? 1 : 0;
            action_row[v - 1] = static_cast<std::uint8_t>(arm);
            reward_row[v - 1] = static_cast<std::uint8_t>(reward);

            ++own_cnt[static_cast<std::size_t>(v - 1) * k + (arm - 1)];
            for (int u_node : absorb_targets[v - 1]) {
                const std::size_t slot = static_cast<std::size_t>(u_node - 1) * k + (arm - 1);
                ++nbr_cnt[slot];
                nbr_sum[slot] += reward;
            }
            round_regret += gaps[arm - 1];
            cum_optimal += arm == optimal ? 1 : 0;
        }
        cum_regret += round_regret;
        trace.regret_curve[t - 1] = cum_regret;
        trace.percent_optimal_curve[t - 1] =
            static_cast<double>(cum_optimal) /
            (static_cast<double>(m) * static_cast<double>(t));
        std::swap(act, prev_act);
    }

    // Final statistics and the exact count-based regret (same summation order
    // as regret_of_actions, so the two agree bit for bit).
    trace.final_stats.assign(m, NodeStatistics(k));
    trace.final_regret = 0.0;
    for (int v = 1; v <= m; ++v) {
        NodeStatistics& stats = trace.final_stats[v - 1];
        double node_regret = 0.0;
        for (int j = 0; j < k; ++j) {
            const std::size_t slot = static_cast<std::size_t>(v - 1) * k + j;
            stats.neighborhood_count[j] = nbr_cnt[slot];
            stats.neighborhood_reward_sum[j] = nbr_sum[slot];
            stats.own_count[j] = own_cnt[slot];
            node_regret += gaps[j] * static_cast<double>(own_cnt[slot]);
        }
        trace.final_regret += node_regret;
    }
    return trace;
}

std::vector<double> percent_optimal(const ProblemInstance& instance,
                                    const std::vector<std::vector<int>>& actions) {
    if (actions.empty()) throw config_error("no action sequences given");
    const std::size_t horizon = actions.front().size();
    const std::size_t m = actions.size();
    const int k = instance.num_arms();
    for (std::size_t v = 0; v < m; ++v) {
        if (actions[v].size() != horizon) {
            throw config_error("node " + std::to_string(v + 1) +
                               " has a different sequence length");
        }
    }
    std::vector<double> curve(horizon);
    std::int64_t cum_optimal = 0;
    for (std::size_t t = 0; t < horizon; ++t) {
        for (std::size_t v = 0; v < m; ++v) {
            const int arm = actions[v][t];
            if (arm < 1 || arm > k) {
                throw config_error("node " + std::to_string(v + 1) + " round " +
                                   std::to_string(t + 1) + ": arm out of range");
            }
            cum_optimal += arm == instance.optimal_arm ? 1 : 0;
        }
        curve[t] = static_cast<double>(cum_optimal) /
                   (static_cast<double>(m) * static_cast<double>(t + 1));
    }
    return curve;
}

}  // namespace netbandit
