#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netbandit {

enum class Topology {
    fully_connected,
    circular,
    star,
    fully_disconnected,
    custom,
};

const char* topology_name(Topology t);
// Accepts the canonical names plus the short aliases fc / fd.
Topology topology_from_name(const std::string& name);

// An undirected user graph.  The adjacency matrix always carries self-loops
// (A[v][v] = 1) so that row v is exactly the closed neighborhood of v; the
// learning policies and the coverage solvers both work with closed
// neighborhoods, never the open ones.
struct Network {
    int m = 0;                                // number of nodes, 1-based ids 1..m
    Topology topology = Topology::custom;
    std::vector<std::uint8_t> adj;            // m*m row-major incl. self-loops
    std::vector<std::vector<int>> neighbors;  // neighbors[v-1]: sorted closed nbhd of v

    bool adjacent(int v, int u) const {
        return adj[static_cast<std::size_t>(v - 1) * m + (u - 1)] != 0;
    }
};

// Canonical generators.  Requirements: m >= 1 (fully_connected,
// fully_disconnected), m >= 3 (circular), m >= 2 (star, node 1 is the hub).
Network generate(Topology topology, int m);

// Builds a custom network from an undirected edge list in text form:
//   - lines starting with '#' and blank lines are ignored
//   - the first payload line is the header "nodes <m>"
//   - every other payload line is "<u> <v>" with 1-based endpoints
// Self-loops are added automatically and duplicate edges are idempotent.
// Malformed input raises config_error with the offending line number.
Network from_edge_list_text(const std::string& text);

// Reads an edge-list file; io_error if the file cannot be read.
Network read_edge_list(const std::string& path);

// Sorted closed neighborhood of v (always contains v itself).
std::vector<int> closed_neighborhood(const Network& net, int v);

// A dominating set plus the partition it induces: every node is assigned to
// exactly one leader it is adjacent to (leaders are assigned to themselves,
// and a node adjacent to several leaders joins the earliest-selected one).
struct DominatingSet {
    std::vector<int> members;    // leaders in selection order
    std::vector<int> leader_of;  // size m+1, leader_of[v] for v in 1..m

    int size() const { return static_cast<int>(members.size()); }
    // Nodes led by `leader`, including the leader itself, ascending.
    std::vector<int> component(int leader) const;
};

bool is_dominating_set(const Network& net, const std::vector<int>& members);

// Builds the partition for an explicit member list (earliest-listed adjacent
// leader wins); throws config_error if the members do not dominate the graph.
DominatingSet dominating_set_from_members(const Network& net, std::vector<int> members);

// Classic greedy cover: repeatedly select the node that dominates the most
// not-yet-dominated nodes, breaking ties toward the lowest node id.
DominatingSet greedy_dominating_set(const Network& net);

// Exact minimum-cardinality dominating set, lexicographically smallest among
// the minimums.  Gated at m <= 20 (scale_error above).
DominatingSet brute_force_min_dominating_set(const Network& net);

// Structural checks (membership range, domination, partition coherence);
// throws config_error describing the first violation.
void validate_dominating_set(const Network& net, const DominatingSet& ds);

}  // namespace netbandit
