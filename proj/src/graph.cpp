#include "netbandit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "netbandit/errors.hpp"

namespace netbandit {

const char* topology_name(Topology t) {
    switch (t) {
        case Topology::fully_connected: return "fully_connected";
        case Topology::circular: return "circular";
        case Topology::star: return "star";
        case Topology::fully_disconnected: return "fully_disconnected";
        case Topology::custom: return "custom";
    }
    return "?";
}

Topology topology_from_name(const std::string& name) {
    if (name == "fully_connected" || name == "fc") return Topology::fully_connected;
    if (name == "circular") return Topology::circular;
    if (name == "star") return Topology::star;
    if (name == "fully_disconnected" || name == "fd") return Topology::fully_disconnected;
    if (name == "custom") return Topology::custom;
    throw config_error("unknown topology '" + name +
                       "' (expected fully_connected, circular, star, "
                       "fully_disconnected or custom)");
}

namespace {

Network empty_network(Topology topology, int m) {
    Network net;
    net.m = m;
    net.topology = topology;
    net.adj.assign(static_cast<std::size_t>(m) * m, 0);
    for (int v = 1; v <= m; ++v) {
        net.adj[static_cast<std::size_t>(v - 1) * m + (v - 1)] = 1;  // self-loop
    }
    return net;
}

void add_edge(Network& net, int u, int v) {
    net.adj[static_cast<std::size_t>(u - 1) * net.m + (v - 1)] = 1;
    net.adj[static_cast<std::size_t>(v - 1) * net.m + (u - 1)] = 1;
}

void finalize_neighbors(Network& net) {
    net.neighbors.assign(net.m, {});
    for (int v = 1; v <= net.m; ++v) {
        auto& row = net.neighbors[v - 1];
        for (int u = 1; u <= net.m; ++u) {
            if (net.adjacent(v, u)) row.push_back(u);
        }
    }
}

}  // namespace

Network generate(Topology topology, int m) {
    if (m < 1) throw config_error("network needs at least 1 node");
    switch (topology) {
        case Topology::fully_connected: {
            Network net = empty_network(topology, m);
            std::fill(net.adj.begin(), net.adj.end(), std::uint8_t{1});
            finalize_neighbors(net);
            return net;
        }
        case Topology::circular: {
            if (m < 3) throw config_error("circular topology needs m >= 3");
            Network net = empty_network(topology, m);
            for (int v = 1; v <= m; ++v) add_edge(net, v, v % m + 1);
            finalize_neighbors(net);
            return net;
        }
        case Topology::star: {
            if (m < 2) throw config_error("star topology needs m >= 2");
            Network net = empty_network(topology, m);
            for (int v = 2; v <= m; ++v) add_edge(net, 1, v);  // node 1 is the hub
            finalize_neighbors(net);
            return net;
        }
        case Topology::fully_disconnected: {
            Network net = empty_network(topology, m);
            finalize_neighbors(net);
            return net;
        }
        case Topology::custom:
            throw config_error("custom topology requires an edge list");
    }
    throw config_error("unknown topology");
}

namespace {

bool parse_int_token(const std::string& token, long long& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

Network from_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    Network net;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);

        if (!have_header) {
            long long m = 0;
            if (tokens.size() != 2 || tokens[0] != "nodes" || !parse_int_token(tokens[1], m)) {
                throw config_error("edge list line " + std::to_string(line_no) +
                                   ": expected header 'nodes <m>'");
            }
            if (m < 1 || m > 100000) {
                throw config_error("edge list line " + std::to_string(line_no) +
                                   ": node count " + std::to_string(m) + " out of range");
            }
            net = empty_network(Topology::custom, static_cast<int>(m));
            have_header = true;
            continue;
        }

        long long u = 0, v = 0;
        if (tokens.size() != 2 || !parse_int_token(tokens[0], u) ||
            !parse_int_token(tokens[1], v)) {
            throw config_error("edge list line " + std::to_string(line_no) +
                               ": expected '<u> <v>' with integer endpoints");
        }
        if (u < 1 || u > net.m || v < 1 || v > net.m) {
            throw config_error("edge list line " + std::to_string(line_no) +
                               ": endpoint out of range 1.." + std::to_string(net.m));
        }
        add_edge(net, static_cast<int>(u), static_cast<int>(v));
    }
    if (!have_header) throw config_error("edge list has no 'nodes <m>' header");
    finalize_neighbors(net);
    return net;
}

Network read_edge_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open edge list '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw io_error("failed reading edge list '" + path + "'");
    return from_edge_list_text(buffer.str());
}

std::vector<int> closed_neighborhood(const Network& net, int v) {
    if (v < 1 || v > net.m) {
        throw config_error("node " + std::to_string(v) + " out of range 1.." +
                           std::to_string(net.m));
    }
    return net.neighbors[v - 1];
}

std::vector<int> DominatingSet::component(int leader) const {
    std::vector<int> nodes;
    for (int v = 1; v < static_cast<int>(leader_of.size()); ++v) {
        if (leader_of[v] == leader) nodes.push_back(v);
    }
    return nodes;
}

bool is_dominating_set(const Network& net, const std::vector<int>& members) {
    std::vector<char> covered(net.m + 1, 0);
    for (int leader : members) {
        if (leader < 1 || leader > net.m) return false;
        for (int u : net.neighbors[leader - 1]) covered[u] = 1;
    }
    for (int v = 1; v <= net.m; ++v) {
        if (!covered[v]) return false;
    }
    return true;
}

namespace {

// Assigns every node to its earliest-selected adjacent leader.  `members`
// must already dominate the graph.
std::vector<int> build_partition(const Network& net, const std::vector<int>& members) {
    std::vector<int> leader_of(net.m + 1, 0);
    for (int leader : members) leader_of[leader] = leader;
    for (int leader : members) {
        for (int u : net.neighbors[leader - 1]) {
            if (leader_of[u] == 0) leader_of[u] = leader;
        }
    }
    return leader_of;
}

}  // namespace

DominatingSet dominating_set_from_members(const Network& net, std::vector<int> members) {
    DominatingSet ds;
    ds.members = std::move(members);
    for (int leader : ds.members) {
        if (leader < 1 || leader > net.m) {
            throw config_error("leader " + std::to_string(leader) +
                               " out of range 1.." + std::to_string(net.m));
        }
    }
    ds.leader_of = build_partition(net, ds.members);
    validate_dominating_set(net, ds);
    return ds;
}

DominatingSet greedy_dominating_set(const Network& net) {
    std::vector<char> covered(net.m + 1, 0);
    int uncovered = net.m;
    DominatingSet ds;
    while (uncovered > 0) {
        int best_node = 0, best_gain = -1;
        for (int v = 1; v <= net.m; ++v) {
            int gain = 0;
            for (int u : net.neighbors[v - 1]) gain += covered[u] ? 0 : 1;
            if (gain > best_gain) {  // strict '>' keeps the lowest id on ties
                best_gain = gain;
                best_node = v;
            }
        }
        ds.members.push_back(best_node);
        for (int u : net.neighbors[best_node - 1]) {
            if (!covered[u]) {
                covered[u] = 1;
                --uncovered;
            }
        }
    }
    ds.leader_of = build_partition(net, ds.members);
    return ds;
}

DominatingSet brute_force_min_dominating_set(const Network& net) {
    if (net.m > 20) {
        throw scale_error("exact dominating set is gated at m <= 20, got m = " +
                          std::to_string(net.m));
    }
    // Closed neighborhoods as bitmasks; subset S dominates iff the union of
    // its members' masks covers all m bits.
    std::vector<std::uint32_t> mask(net.m + 1, 0);
    for (int v = 1; v <= net.m; ++v) {
        for (int u : net.neighbors[v - 1]) mask[v] |= 1u << (u - 1);
    }
    const std::uint32_t full = (1u << net.m) - 1;  // m <= 20, so this is safe

    // Scan subsets in (cardinality, lexicographic-by-member-list) order so the
    // first hit is the lexicographically smallest minimum.
    std::vector<int> pick;
    std::vector<int> found;
    auto search = [&](auto&& self, int next, int remaining, std::uint32_t covered) -> bool {
        if (covered == full) {
            found = pick;
            return true;
        }
        if (remaining == 0 || next > net.m) return false;
        if (net.m - next + 1 < remaining) return false;  // not enough nodes left
        for (int v = next; v <= net.m; ++v) {
            pick.push_back(v);
            if (self(self, v + 1, remaining - 1, covered | mask[v])) return true;
            pick.pop_back();
        }
        return false;
    };
    for (int size = 1; size <= net.m; ++size) {
        if (search(search, 1, size, 0)) break;
    }

    DominatingSet ds;
    ds.members = std::move(found);
    ds.leader_of = build_partition(net, ds.members);
    return ds;
}

void validate_dominating_set(const Network& net, const DominatingSet& ds) {
    if (ds.members.empty()) throw config_error("dominating set is empty");
    std::vector<char> is_member(net.m + 1, 0);
    for (int leader : ds.members) {
        if (leader < 1 || leader > net.m) {
            throw config_error("dominating-set member " + std::to_string(leader) +
                               " out of range 1.." + std::to_string(net.m));
        }
        if (is_member[leader]) {
            throw config_error("dominating-set member " + std::to_string(leader) +
                               " listed twice");
        }
        is_member[leader] = 1;
    }
    if (ds.leader_of.size() != static_cast<std::size_t>(net.m) + 1) {
        throw config_error("partition size mismatch");
    }
    for (int v = 1; v <= net.m; ++v) {
        const int leader = ds.leader_of[v];
        if (leader < 1 || leader > net.m || !is_member[leader]) {
            throw config_error("node " + std::to_string(v) +
                               " is not assigned to a dominating-set member");
        }
        if (!net.adjacent(v, leader)) {
            throw config_error("node " + std::to_string(v) +
                               " is not adjacent to its leader " + std::to_string(leader));
        }
    }
    for (int leader : ds.members) {
        if (ds.leader_of[leader] != leader) {
            throw config_error("leader " + std::to_string(leader) +
                               " must be assigned to itself");
        }
    }
}

}  // namespace netbandit
