#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "netbandit/errors.hpp"
#include "netbandit/graph.hpp"
#include "netbandit/rng.hpp"

using namespace netbandit;

namespace {

void check_symmetric_unit_diagonal(const Network& net) {
    for (int v = 1; v <= net.m; ++v) {
        CHECK(net.adjacent(v, v));
        for (int u = 1; u <= net.m; ++u) {
            CHECK(net.adjacent(v, u) == net.adjacent(u, v));
        }
    }
}

// Random graph on m nodes with i.i.d. edge coin flips (for property tests).
Network random_graph(int m, std::uint64_t seed, double edge_prob) {
    std::string text = "nodes " + std::to_string(m) + "\n";
    std::uint64_t k = 0;
    for (int v = 1; v <= m; ++v) {
        for (int u = v + 1; u <= m; ++u) {
            if (RngStream{seed, 0, 0, ++k, 3}.uniform() < edge_prob) {
                text += std::to_string(v) + " " + std::to_string(u) + "\n";
            }
        }
    }
    return from_edge_list_text(text);
}

}  // namespace

TEST_CASE("canonical generators match their definitions") {
    const Network star = generate(Topology::star, 5);
    for (int leaf = 2; leaf <= 5; ++leaf) {
        CHECK(star.adjacent(1, leaf));
        for (int other = 2; other <= 5; ++other) {
            if (other != leaf) CHECK_FALSE(star.adjacent(leaf, other));
        }
    }

    const Network fd = generate(Topology::fully_disconnected, 4);
    for (int v = 1; v <= 4; ++v) {
        for (int u = 1; u <= 4; ++u) {
            CHECK(fd.adjacent(v, u) == (v == u));
        }
    }

    const Network circ = generate(Topology::circular, 5);
    for (int v = 1; v <= 5; ++v) {
        CHECK(closed_neighborhood(circ, v).size() == 3);
    }

    const Network fc = generate(Topology::fully_connected, 6);
    for (int v = 1; v <= 6; ++v) {
        for (int u = 1; u <= 6; ++u) CHECK(fc.adjacent(v, u));
    }

    for (const Topology t : {Topology::fully_connected, Topology::circular,
                             Topology::star, Topology::fully_disconnected}) {
        check_symmetric_unit_diagonal(generate(t, 7));
    }
}

TEST_CASE("generators reject sizes below the topology minimum") {
    CHECK_THROWS_AS(generate(Topology::circular, 2), config_error);
    CHECK_THROWS_AS(generate(Topology::star, 1), config_error);
    CHECK_THROWS_AS(generate(Topology::fully_connected, 0), config_error);
    CHECK_THROWS_AS(generate(Topology::custom, 3), config_error);
    CHECK_NOTHROW(generate(Topology::fully_disconnected, 1));
}

TEST_CASE("topology names round-trip and accept aliases") {
    for (const Topology t : {Topology::fully_connected, Topology::circular,
                             Topology::star, Topology::fully_disconnected,
                             Topology::custom}) {
        CHECK(topology_from_name(topology_name(t)) == t);
    }
    CHECK(topology_from_name("fc") == Topology::fully_connected);
    CHECK(topology_from_name("fd") == Topology::fully_disconnected);
    CHECK_THROWS_AS(topology_from_name("ring"), config_error);
}

TEST_CASE("closed neighborhoods") {
    const Network fc = generate(Topology::fully_connected, 5);
    CHECK(closed_neighborhood(fc, 2) == std::vector<int>{1, 2, 3, 4, 5});

    const Network star = generate(Topology::star, 5);
    CHECK(closed_neighborhood(star, 3) == std::vector<int>{1, 3});
    CHECK(closed_neighborhood(star, 1) == std::vector<int>{1, 2, 3, 4, 5});

    const Network fd = generate(Topology::fully_disconnected, 4);
    CHECK(closed_neighborhood(fd, 3) == std::vector<int>{3});
    CHECK_THROWS_AS(closed_neighborhood(fd, 0), config_error);
    CHECK_THROWS_AS(closed_neighborhood(fd, 5), config_error);
}

TEST_CASE("edge-list parsing") {
    const Network path = from_edge_list_text(
        "# a path on four nodes\n"
        "nodes 4\n"
        "1 2\n"
        "2 3\n"
        "\n"
        "  # comment lines and blanks are skipped\n"
        "3 4\n"
        "3 4\n");  // duplicate edges are idempotent
    CHECK(path.m == 4);
    CHECK(path.topology == Topology::custom);
    CHECK(path.adjacent(1, 2));
    CHECK(path.adjacent(2, 3));
    CHECK(path.adjacent(3, 4));
    CHECK_FALSE(path.adjacent(1, 3));
    CHECK(path.adjacent(2, 2));  // implicit self-loop
    check_symmetric_unit_diagonal(path);

    CHECK_THROWS_WITH_AS(from_edge_list_text("1 2\n"),
                         doctest::Contains("line 1"), config_error);
    CHECK_THROWS_WITH_AS(from_edge_list_text("nodes 3\n1 9\n"),
                         doctest::Contains("line 2"), config_error);
    CHECK_THROWS_AS(from_edge_list_text("nodes 3\n1\n"), config_error);
    CHECK_THROWS_AS(from_edge_list_text("nodes 3\n1 2 3\n"), config_error);
    CHECK_THROWS_AS(from_edge_list_text("nodes 0\n"), config_error);
    CHECK_THROWS_AS(from_edge_list_text("nodes 3\nx y\n"), config_error);
    CHECK_THROWS_AS(read_edge_list("/nonexistent/edges.txt"), io_error);
}

TEST_CASE("greedy dominating sets on canonical topologies") {
    const DominatingSet star = greedy_dominating_set(generate(Topology::star, 25));
    CHECK(star.members == std::vector<int>{1});
    for (int v = 1; v <= 25; ++v) CHECK(star.leader_of[v] == 1);

    const DominatingSet fd = greedy_dominating_set(generate(Topology::fully_disconnected, 7));
    CHECK(fd.members.size() == 7);

    const DominatingSet circ6 = greedy_dominating_set(generate(Topology::circular, 6));
    CHECK(circ6.members.size() == 2);
}

TEST_CASE("brute-force minimum dominating sets") {
    CHECK(brute_force_min_dominating_set(generate(Topology::star, 10)).members ==
          std::vector<int>{1});
    CHECK(brute_force_min_dominating_set(generate(Topology::circular, 9)).members.size() == 3);
    CHECK(brute_force_min_dominating_set(generate(Topology::fully_connected, 4)).members ==
          std::vector<int>{1});
    CHECK_THROWS_AS(brute_force_min_dominating_set(generate(Topology::fully_connected, 21)),
                    scale_error);
}

TEST_CASE("partition soundness and the earliest-leader rule") {
    const Network path3 = from_edge_list_text("nodes 3\n1 2\n2 3\n");
    // Node 2 is adjacent to both leaders; it goes to the earlier-selected one.
    CHECK(dominating_set_from_members(path3, {1, 3}).leader_of[2] == 1);
    CHECK(dominating_set_from_members(path3, {3, 1}).leader_of[2] == 3);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Network net = random_graph(9, seed, 0.3);
        const DominatingSet ds = greedy_dominating_set(net);
        CHECK(is_dominating_set(net, ds.members));
        std::set<int> leaders(ds.members.begin(), ds.members.end());
        CHECK(leaders.size() == ds.members.size());
        for (int v = 1; v <= net.m; ++v) {
            const int leader = ds.leader_of[v];
            CHECK(leaders.count(leader) == 1);
            CHECK(net.adjacent(v, leader));
            if (leaders.count(v)) CHECK(leader == v);  // leaders lead themselves
        }
        // Components cover V exactly once (leader_of is a total map).
        std::size_t covered = 0;
        for (const int leader : ds.members) covered += ds.component(leader).size();
        CHECK(covered == static_cast<std::size_t>(net.m));
    }
}

TEST_CASE("greedy quality against the exact minimum") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const int m = 4 + static_cast<int>(seed % 9);  // 4..12
        const Network net = random_graph(m, seed, 0.35);
        const std::size_t greedy = greedy_dominating_set(net).members.size();
        const std::size_t minimum = brute_force_min_dominating_set(net).members.size();
        CHECK(greedy >= minimum);
        std::size_t max_nbhd = 0;
        for (int v = 1; v <= m; ++v) {
            max_nbhd = std::max(max_nbhd, closed_neighborhood(net, v).size());
        }
        CHECK(static_cast<double>(greedy) <=
              static_cast<double>(minimum) *
                  (1.0 + std::log(static_cast<double>(max_nbhd))) + 1e-9);
    }
}

TEST_CASE("dominating-set validation rejects bad inputs") {
    const Network star = generate(Topology::star, 5);
    CHECK_THROWS_AS(dominating_set_from_members(star, {}), config_error);
    CHECK_THROWS_AS(dominating_set_from_members(star, {0}), config_error);
    CHECK_THROWS_AS(dominating_set_from_members(star, {6}), config_error);
    CHECK_THROWS_AS(dominating_set_from_members(star, {1, 1}), config_error);
    CHECK_THROWS_AS(dominating_set_from_members(star, {2}), config_error);  // not dominating
    CHECK_NOTHROW(dominating_set_from_members(star, {1}));
    CHECK_FALSE(is_dominating_set(star, {2, 3}));
    CHECK(is_dominating_set(star, {1}));
    CHECK(is_dominating_set(star, {2, 3, 4, 5, 1}));
}
