#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netbandit/bounds.hpp"
#include "netbandit/errors.hpp"
#include "netbandit/experiment.hpp"
#include "netbandit/graph.hpp"
#include "netbandit/policy.hpp"
#include "netbandit/problem.hpp"
#include "netbandit/rng.hpp"

namespace py = pybind11;
using namespace netbandit;

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Collaborative multi-armed bandit simulations on user graphs";

    py::register_exception<config_error>(mod, "ConfigError", PyExc_ValueError);
    py::register_exception<scale_error>(mod, "ScaleError", PyExc_RuntimeError);
    py::register_exception<io_error>(mod, "IoError", PyExc_OSError);

    // ---- rng ----
    mod.def("philox_block", &philox4x64_block, py::arg("counter"), py::arg("key"),
            "One Philox4x64-10 block: 4 output words from a 4-word counter "
            "and a 2-word key.");

    py::class_<RngStream>(mod, "RngStream")
        .def(py::init([](std::uint64_t seed, std::uint64_t replication,
                         std::uint64_t node, std::uint64_t round, std::uint64_t draw) {
                 return RngStream{seed, replication, node, round, draw};
             }),
             py::arg("seed") = 0, py::arg("replication") = 0, py::arg("node") = 0,
             py::arg("round") = 0, py::arg("draw") = 0)
        .def_readwrite("seed", &RngStream::seed)
        .def_readwrite("replication", &RngStream::replication)
        .def_readwrite("node", &RngStream::node)
        .def_readwrite("round", &RngStream::round)
        .def_readwrite("draw", &RngStream::draw)
        .def("raw", &RngStream::raw)
        .def("uniform", &RngStream::uniform);

    // ---- problem ----
    py::class_<ProblemInstance>(mod, "ProblemInstance")
        .def_readonly("means", &ProblemInstance::means)
        .def_readonly("gaps", &ProblemInstance::gaps)
        .def_readonly("optimal_arm", &ProblemInstance::optimal_arm)
        .def("num_arms", &ProblemInstance::num_arms);

    mod.def("make_instance", &make_instance, py::arg("means"));
    mod.def("sample_reward", &sample_reward, py::arg("instance"), py::arg("arm"),
            py::arg("stream"));

    py::class_<RegretRecord>(mod, "RegretRecord")
        .def_readonly("per_node", &RegretRecord::per_node)
        .def_readonly("network_total", &RegretRecord::network_total)
        .def_readonly("arm_counts", &RegretRecord::arm_counts);

    mod.def("regret_of_actions", &regret_of_actions, py::arg("instance"),
            py::arg("actions"));
    mod.def("percent_optimal", &percent_optimal, py::arg("instance"),
            py::arg("actions"));

    // ---- graph ----
    py::enum_<Topology>(mod, "Topology")
        .value("fully_connected", Topology::fully_connected)
        .value("circular", Topology::circular)
        .value("star", Topology::star)
        .value("fully_disconnected", Topology::fully_disconnected)
        .value("custom", Topology::custom);

    py::class_<Network>(mod, "Network")
        .def_readonly("m", &Network::m)
        .def_readonly("topology", &Network::topology)
        .def("adjacent", &Network::adjacent, py::arg("v"), py::arg("u"))
        .def("closed_neighborhood",
             [](const Network& net, int v) { return closed_neighborhood(net, v); },
             py::arg("v"));

    mod.def("generate", &generate, py::arg("topology"), py::arg("m"));
    mod.def(
        "generate",
        [](const std::string& topology, int m) {
            return generate(topology_from_name(topology), m);
        },
        py::arg("topology"), py::arg("m"));
    mod.def("read_edge_list", &read_edge_list, py::arg("path"));
    mod.def("from_edge_list_text", &from_edge_list_text, py::arg("text"));

    py::class_<DominatingSet>(mod, "DominatingSet")
        .def_readonly("members", &DominatingSet::members)
        .def_readonly("leader_of", &DominatingSet::leader_of)
        .def("component", &DominatingSet::component, py::arg("leader"));

    mod.def("greedy_dominating_set", &greedy_dominating_set, py::arg("network"));
    mod.def("brute_force_min_dominating_set", &brute_force_min_dominating_set,
            py::arg("network"));
    mod.def("is_dominating_set", &is_dominating_set, py::arg("network"),
            py::arg("members"));

    // ---- policy ----
    py::enum_<PolicyKind>(mod, "PolicyKind")
        .value("ucb_network", PolicyKind::ucb_network)
        .value("fyl", PolicyKind::fyl)
        .value("isolated_ucb1", PolicyKind::isolated_ucb1)
        .value("uniform_random", PolicyKind::uniform_random);

    mod.def("ucb_index", &ucb_index, py::arg("mean_estimate"), py::arg("count"),
            py::arg("t"));

    py::class_<NodeStatistics>(mod, "NodeStatistics")
        .def_readonly("neighborhood_count", &NodeStatistics::neighborhood_count)
        .def_readonly("neighborhood_reward_sum",
                      &NodeStatistics::neighborhood_reward_sum)
        .def_readonly("own_count", &NodeStatistics::own_count)
        .def("mean_estimate", &NodeStatistics::mean_estimate, py::arg("arm"));

    py::class_<SimulationConfig>(mod, "SimulationConfig")
        .def(py::init([](const ProblemInstance& instance, const Network& network,
                         PolicyKind policy, std::int64_t horizon, int replications,
                         std::uint64_t seed, std::optional<DominatingSet> dominating_set) {
                 SimulationConfig config;
                 config.instance = instance;
                 config.network = network;
                 config.policy = policy;
                 config.horizon = horizon;
                 config.replications = replications;
                 config.seed = seed;
                 config.dominating_set = std::move(dominating_set);
                 return config;
             }),
             py::arg("instance"), py::arg("network"),
             py::arg("policy") = PolicyKind::ucb_network, py::arg("horizon") = 0,
             py::arg("replications") = 1, py::arg("seed") = 0,
             py::arg("dominating_set") = py::none())
        .def_readwrite("instance", &SimulationConfig::instance)
        .def_readwrite("network", &SimulationConfig::network)
        .def_readwrite("policy", &SimulationConfig::policy)
        .def_readwrite("horizon", &SimulationConfig::horizon)
        .def_readwrite("replications", &SimulationConfig::replications)
        .def_readwrite("seed", &SimulationConfig::seed)
        .def_readwrite("dominating_set", &SimulationConfig::dominating_set);

    mod.def("validate_config", &validate_config, py::arg("config"));

    py::class_<SimulationTrace>(mod, "SimulationTrace")
        .def_readonly("m", &SimulationTrace::m)
        .def_readonly("num_arms", &SimulationTrace::num_arms)
        .def_readonly("horizon", &SimulationTrace::horizon)
        .def_readonly("regret_curve", &SimulationTrace::regret_curve)
        .def_readonly("percent_optimal_curve", &SimulationTrace::percent_optimal_curve)
        .def_readonly("final_stats", &SimulationTrace::final_stats)
        .def_readonly("final_regret", &SimulationTrace::final_regret)
        .def("action", &SimulationTrace::action, py::arg("v"), py::arg("t"))
        .def("reward", &SimulationTrace::reward, py::arg("v"), py::arg("t"))
        .def("action_lists", &SimulationTrace::action_lists);

    mod.def("simulate", &simulate, py::arg("config"), py::arg("replication"),
            py::call_guard<py::gil_scoped_release>());

    py::class_<AggregateResult>(mod, "AggregateResult")
        .def_readonly("m", &AggregateResult::m)
        .def_readonly("num_arms", &AggregateResult::num_arms)
        .def_readonly("horizon", &AggregateResult::horizon)
        .def_readonly("replications", &AggregateResult::replications)
        .def_readonly("mean_regret", &AggregateResult::mean_regret)
        .def_readonly("std_regret", &AggregateResult::std_regret)
        .def_readonly("mean_percent_optimal", &AggregateResult::mean_percent_optimal)
        .def_readonly("final_regrets", &AggregateResult::final_regrets)
        .def_readonly("mean_final_regret", &AggregateResult::mean_final_regret)
        .def_readonly("std_final_regret", &AggregateResult::std_final_regret)
        .def_readonly("mean_own_count", &AggregateResult::mean_own_count);

    mod.def("run_replications", &run_replications, py::arg("config"),
            py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
    mod.def("trace_csv", &trace_csv, py::arg("trace"), py::arg("replication"));
    mod.def("curves_csv", &curves_csv, py::arg("result"));

    // ---- bounds ----
    py::enum_<CgDirection>(mod, "CgDirection")
        .value("maximize", CgDirection::maximize)
        .value("minimize", CgDirection::minimize);

    mod.def("bernoulli_kl", &bernoulli_kl, py::arg("p"), py::arg("q"));
    mod.def("sample_threshold", &sample_threshold, py::arg("gap"), py::arg("n"));
    mod.def(
        "cg_solve_brute",
        [](const Network& network, std::int64_t threshold, CgDirection direction) {
            return cg_solve_brute(CgProblem{network, threshold, direction});
        },
        py::arg("network"), py::arg("threshold"), py::arg("direction"));
    mod.def("cg_closed_form", &cg_closed_form, py::arg("topology"), py::arg("m"),
            py::arg("threshold"), py::arg("direction"));
    mod.def("ucb_network_upper_bound",
            py::overload_cast<const ProblemInstance&, double, int, std::int64_t, double>(
                &ucb_network_upper_bound),
            py::arg("instance"), py::arg("cg"), py::arg("m"), py::arg("n"),
            py::arg("beta"));
    mod.def("ucb_network_upper_bound",
            py::overload_cast<const ProblemInstance&, const std::vector<double>&, int,
                              std::int64_t, double>(&ucb_network_upper_bound),
            py::arg("instance"), py::arg("cg_per_arm"), py::arg("m"), py::arg("n"),
            py::arg("beta"));
    mod.def("universal_lower_bound", &universal_lower_bound, py::arg("instance"),
            py::arg("n"), py::arg("delta"));
    mod.def("naic_lower_bound", &naic_lower_bound, py::arg("instance"), py::arg("lg"),
            py::arg("n"), py::arg("delta"));
    mod.def("star_naic_lower_bound", &star_naic_lower_bound, py::arg("instance"),
            py::arg("m"), py::arg("n"));
    mod.def("fyl_upper_bound", &fyl_upper_bound, py::arg("instance"),
            py::arg("dominating_set_size"), py::arg("m"), py::arg("n"), py::arg("beta"));
}
