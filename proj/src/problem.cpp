#include "netbandit/problem.hpp"

#include <algorithm>
#include <string>

#include "netbandit/errors.hpp"

namespace netbandit {

ProblemInstance make_instance(std::vector<double> means) {
    const int k = static_cast<int>(means.size());
    if (k < 2 || k > kMaxArms) {
        throw config_error("instance needs between 2 and " + std::to_string(kMaxArms) +
                           " arms, got " + std::to_string(k));
    }
    for (int i = 0; i < k; ++i) {
        const double mu = means[i];
        if (!(mu >= 0.0 && mu <= 1.0)) {
            throw config_error("arm " + std::to_string(i + 1) + " mean " +
                               std::to_string(mu) + " is outside [0, 1]");
        }
    }
    const auto best_it = std::max_element(means.begin(), means.end());
    const double best = *best_it;
    if (std::count(means.begin(), means.end(), best) > 1) {
        throw config_error("instance has no unique best arm (tied maximum mean)");
    }

    ProblemInstance instance;
    instance.optimal_arm = static_cast<int>(best_it - means.begin()) + 1;
    instance.gaps.reserve(means.size());
    for (double mu : means) instance.gaps.push_back(best - mu);
    instance.means = std::move(means);
    return instance;
}

double sample_reward(const ProblemInstance& instance, int arm, const RngStream& stream) {
    if (arm < 1 || arm > instance.num_arms()) {
        throw config_error("arm " + std::to_string(arm) + " out of range 1.." +
                           std::to_string(instance.num_arms()));
    }
    return stream.uniform() < instance.means[arm - 1] ? 1.0 : 0.0;
}

RegretRecord regret_of_actions(const ProblemInstance& instance,
                               const std::vector<std::vector<int>>& actions) {
    if (actions.empty()) throw config_error("no action sequences given");
    const std::size_t horizon = actions.front().size();
    if (horizon == 0) throw config_error("action sequences must cover at least one round");
    const int k = instance.num_arms();

    RegretRecord record;
    record.per_node.reserve(actions.size());
    record.arm_counts.reserve(actions.size());
    for (std::size_t v = 0; v < actions.size(); ++v) {
        const auto& seq = actions[v];
        if (seq.size() != horizon) {
            throw config_error("node " + std::to_string(v + 1) +
                               " has a different sequence length (" +
                               std::to_string(seq.size()) + " vs " +
                               std::to_string(horizon) + ")");
        }
        std::vector<std::int64_t> counts(k, 0);
        for (std::size_t t = 0; t < seq.size(); ++t) {
            const int arm = seq[t];
            if (arm < 1 || arm > k) {
                throw config_error("node " + std::to_string(v + 1) + " round " +
                                   std::to_string(t + 1) + ": arm " +
                                   std::to_string(arm) + " out of range 1.." +
                                   std::to_string(k));
            }
            ++counts[arm - 1];
        }
        double regret = 0.0;
        for (int i = 0; i < k; ++i) {
            regret += instance.gaps[i] * static_cast<double>(counts[i]);
        }
        record.per_node.push_back(regret);
        record.network_total += regret;
        record.arm_counts.push_back(std::move(counts));
    }
    return record;
}

}  // namespace netbandit
