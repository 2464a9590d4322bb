#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <sstream>
#include <vector>

#include "netbandit/errors.hpp"
#include "netbandit/experiment.hpp"
#include "netbandit/textio.hpp"

namespace netbandit {

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

using RawSection = std::map<std::string, RawEntry>;

const std::vector<std::string> kGlobalOnlyKeys = {"name", "delta", "beta"};
const std::vector<std::string> kSharedKeys = {
    "means", "horizon", "replications", "seed",
    "topology", "m", "policy", "edges", "leaders",
};

bool known_key(const std::string& key, bool global) {
    if (std::find(kSharedKeys.begin(), kSharedKeys.end(), key) != kSharedKeys.end()) {
        return true;
    }
    return global && std::find(kGlobalOnlyKeys.begin(), kGlobalOnlyKeys.end(), key) !=
                         kGlobalOnlyKeys.end();
}

[[noreturn]] void fail_line(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return parsed;
    } catch (const std::exception&) {
        fail_line(line, "key '" + key + "': '" + value + "' is not a number");
    }
}

std::int64_t parse_int(const std::string& value, int line, const std::string& key) {
    std::int64_t parsed = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc() || ptr != end) {
        fail_line(line, "key '" + key + "': '" + value + "' is not an integer");
    }
    return parsed;
}

std::uint64_t parse_u64(const std::string& value, int line, const std::string& key) {
    std::uint64_t parsed = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc() || ptr != end) {
        fail_line(line, "key '" + key + "': '" + value +
                            "' is not an unsigned integer");
    }
    return parsed;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) items.push_back(strip(item));
    return items;
}

// A section merged over the global defaults.
class Resolved {
  public:
    Resolved(const RawSection& globals, const RawSection* section)
        : globals_(globals), section_(section) {}

    const RawEntry* find(const std::string& key) const {
        if (section_) {
            auto it = section_->find(key);
            if (it != section_->end()) return &it->second;
        }
        auto it = globals_.find(key);
        if (it != globals_.end()) return &it->second;
        return nullptr;
    }

    const RawEntry& require(const std::string& key, const std::string& where) const {
        const RawEntry* entry = find(key);
        if (!entry) {
            throw config_error("config: " + where + " is missing required key '" +
                               key + "'");
        }
        return *entry;
    }

  private:
    const RawSection& globals_;
    const RawSection* section_;
};

ProblemInstance instance_from(const Resolved& r, const std::string& where) {
    const RawEntry& entry = r.require("means", where);
    std::vector<double> means;
    for (const std::string& item : split_list(entry.value)) {
        if (item.empty()) fail_line(entry.line, "key 'means': empty list item");
        means.push_back(parse_double(item, entry.line, "means"));
    }
    return make_instance(std::move(means));
}

Network network_from(const Resolved& r, const std::string& where,
                     const std::string& base_dir) {
    const RawEntry& topo_entry = r.require("topology", where);
    const Topology topology = topology_from_name(topo_entry.value);
    if (topology == Topology::custom) {
        const RawEntry& edges = r.require("edges", where);
        std::filesystem::path path(edges.value);
        if (path.is_relative() && !base_dir.empty()) {
            path = std::filesystem::path(base_dir) / path;
        }
        Network net = read_edge_list(path.string());
        if (const RawEntry* m_entry = r.find("m")) {
            const std::int64_t m = parse_int(m_entry->value, m_entry->line, "m");
            if (m != net.m) {
                fail_line(m_entry->line,
                          "key 'm': " + std::to_string(m) + " does not match the " +
                              std::to_string(net.m) + "-node edge list");
            }
        }
        return net;
    }
    const RawEntry& m_entry = r.require("m", where);
    const std::int64_t m = parse_int(m_entry.value, m_entry.line, "m");
    if (m < 1 || m > 100000) fail_line(m_entry.line, "key 'm': out of range");
    return generate(topology, static_cast<int>(m));
}

SimulationConfig config_from(const Resolved& r, const std::string& where,
                             const std::string& base_dir) {
    SimulationConfig config;
    config.instance = instance_from(r, where);
    config.network = network_from(r, where, base_dir);

    const RawEntry& horizon = r.require("horizon", where);
    config.horizon = parse_int(horizon.value, horizon.line, "horizon");
    if (config.horizon < 1) fail_line(horizon.line, "key 'horizon': must be >= 1");

    if (const RawEntry* reps = r.find("replications")) {
        const std::int64_t parsed = parse_int(reps->value, reps->line, "replications");
        if (parsed < 1 || parsed > 100000) {
            fail_line(reps->line, "key 'replications': out of range 1..100000");
        }
        config.replications = static_cast<int>(parsed);
    }
    if (const RawEntry* seed = r.find("seed")) {
        config.seed = parse_u64(seed->value, seed->line, "seed");
    }

    const RawEntry& policy = r.require("policy", where);
    config.policy = policy_from_name(policy.value);

    if (config.policy == PolicyKind::fyl) {
        if (const RawEntry* leaders = r.find("leaders")) {
            std::vector<int> members;
            for (const std::string& item : split_list(leaders->value)) {
                members.push_back(
                    static_cast<int>(parse_int(item, leaders->line, "leaders")));
            }
            config.dominating_set =
                dominating_set_from_members(config.network, std::move(members));
        } else {
            config.dominating_set = greedy_dominating_set(config.network);
        }
    }

    validate_config(config);
    return config;
}

}  // namespace

ExperimentSpec parse_experiment_text(const std::string& text,
                                     const std::string& base_dir) {
    RawSection globals;
    std::vector<std::pair<std::string, RawSection>> sections;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    RawSection* current = &globals;
    bool in_section = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string payload = strip(line);
        if (payload.empty() || payload[0] == '#') continue;

        if (payload.front() == '[') {
            if (payload.back() != ']') fail_line(line_no, "unterminated section header");
            std::istringstream header(payload.substr(1, payload.size() - 2));
            std::string kind, label, extra;
            header >> kind >> label;
            if (kind != "series" || label.empty() || (header >> extra)) {
                fail_line(line_no, "expected '[series <label>]'");
            }
            for (const auto& [existing, _] : sections) {
                if (existing == label) {
                    fail_line(line_no, "duplicate series label '" + label + "'");
                }
            }
            sections.emplace_back(label, RawSection{});
            current = &sections.back().second;
            in_section = true;
            continue;
        }

        const auto eq = payload.find('=');
        if (eq == std::string::npos) {
            fail_line(line_no, "expected 'key = value' or '[series <label>]'");
        }
        const std::string key = strip(payload.substr(0, eq));
        const std::string value = strip(payload.substr(eq + 1));
        if (key.empty()) fail_line(line_no, "empty key");
        if (value.empty()) fail_line(line_no, "key '" + key + "' has no value");
        if (!known_key(key, !in_section)) {
            fail_line(line_no, in_section
                                   ? "unknown series key '" + key + "'"
                                   : "unknown key '" + key + "'");
        }
        if (current->count(key)) {
            fail_line(line_no, "key '" + key + "' set twice in the same scope");
        }
        (*current)[key] = RawEntry{value, line_no};
    }

    ExperimentSpec spec;
    if (auto it = globals.find("name"); it != globals.end()) {
        spec.name = it->second.value;
        if (spec.name.find_first_of("/\\ \t") != std::string::npos) {
            fail_line(it->second.line, "key 'name': must be a bare file-name prefix");
        }
    }
    if (auto it = globals.find("delta"); it != globals.end()) {
        spec.delta = parse_double(it->second.value, it->second.line, "delta");
        if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
            fail_line(it->second.line, "key 'delta': must lie in (0, 1)");
        }
    }
    if (auto it = globals.find("beta"); it != globals.end()) {
        spec.beta = parse_double(it->second.value, it->second.line, "beta");
        if (!(spec.beta > 0.25 && spec.beta < 1.0)) {
            fail_line(it->second.line, "key 'beta': must lie in (0.25, 1)");
        }
    }

    const Resolved global_view(globals, nullptr);
    spec.instance = instance_from(global_view, "the global section");
    const RawEntry& horizon = global_view.require("horizon", "the global section");
    spec.horizon = parse_int(horizon.value, horizon.line, "horizon");
    if (spec.horizon < 1) fail_line(horizon.line, "key 'horizon': must be >= 1");
    spec.replications = 1;
    if (const RawEntry* reps = global_view.find("replications")) {
        const std::int64_t parsed = parse_int(reps->value, reps->line, "replications");
        if (parsed < 1 || parsed > 100000) {
            fail_line(reps->line, "key 'replications': out of range 1..100000");
        }
        spec.replications = static_cast<int>(parsed);
    }
    if (const RawEntry* seed = global_view.find("seed")) {
        spec.seed = parse_u64(seed->value, seed->line, "seed");
    }
    if (const RawEntry* topo = global_view.find("topology")) {
        spec.global_topology = topology_from_name(topo->value);
    }

    for (const auto& [label, section] : sections) {
        const Resolved view(globals, &section);
        SeriesSpec series;
        series.label = label;
        series.config = config_from(view, "series '" + label + "'", base_dir);
        spec.series.push_back(std::move(series));
    }
    return spec;
}

ExperimentSpec parse_experiment_file(const std::string& path) {
    const std::string text = read_text_file(path);
    return parse_experiment_text(
        text, std::filesystem::path(path).parent_path().string());
}

}  // namespace netbandit
