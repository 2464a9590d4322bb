#include "netbandit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "netbandit/errors.hpp"
#include "netbandit/textio.hpp"

namespace netbandit {

namespace {

struct Accumulators {
    std::vector<double> regret_mean, regret_m2, pct_mean;
    std::vector<std::int64_t> own_count_sum;  // exact integer totals
};

void fold_replication(Accumulators& acc, AggregateResult& agg, int rep,
                      const SimulationTrace& trace) {
    const double r = static_cast<double>(rep);
    const std::int64_t n = trace.horizon;
    for (std::int64_t i = 0; i < n; ++i) {
        const double x = trace.regret_curve[i];
        const double d = x - acc.regret_mean[i];
        acc.regret_mean[i] += d / r;
        acc.regret_m2[i] += d * (x - acc.regret_mean[i]);
        acc.pct_mean[i] +=
            (trace.percent_optimal_curve[i] - acc.pct_mean[i]) / r;
    }
    const int k = trace.num_arms;
    for (int v = 0; v < trace.m; ++v) {
        for (int j = 0; j < k; ++j) {
            acc.own_count_sum[static_cast<std::size_t>(v) * k + j] +=
                trace.final_stats[v].own_count[j];
        }
    }
    agg.final_regrets[rep - 1] = trace.final_regret;
}

}  // namespace

AggregateResult run_replications(const SimulationConfig& config, int jobs) {
    validate_config(config);
    const int reps = config.replications;
    const int m = config.network.m;
    const int k = config.instance.num_arms();
    const std::int64_t n = config.horizon;

    AggregateResult agg;
    agg.m = m;
    agg.num_arms = k;
    agg.horizon = n;
    agg.replications = reps;
    agg.final_regrets.assign(reps, 0.0);

    Accumulators acc;
    acc.regret_mean.assign(n, 0.0);
    acc.regret_m2.assign(n, 0.0);
    acc.pct_mean.assign(n, 0.0);
    acc.own_count_sum.assign(static_cast<std::size_t>(m) * k, 0);

    if (jobs <= 1 || reps == 1) {
        for (int rep = 1; rep <= reps; ++rep) {
            const SimulationTrace trace = simulate(config, rep);
            fold_replication(acc, agg, rep, trace);
        }
    } else {
        // Workers simulate replications; the calling thread folds them in
        // replication order, so the aggregate (and every byte derived from
        // it) is independent of the worker count and scheduling.
        std::atomic<int> next{1};
        std::mutex mu;
        std::condition_variable cv;
        std::map<int, SimulationTrace> ready;
        std::exception_ptr failure;

        auto worker = [&]() {
            try {
                while (true) {
                    const int rep = next.fetch_add(1);
                    if (rep > reps) return;
                    SimulationTrace trace = simulate(config, rep);
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        ready.emplace(rep, std::move(trace));
                    }
                    cv.notify_all();
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                cv.notify_all();
            }
        };

        std::vector<std::thread> pool;
        const int workers = std::min(jobs, reps);
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);

        for (int rep = 1; rep <= reps; ++rep) {
            SimulationTrace trace;
            {
                std::unique_lock<std::mutex> lock(mu);
                cv.wait(lock, [&] { return ready.count(rep) || failure; });
                if (failure) break;
                trace = std::move(ready.at(rep));
                ready.erase(rep);
            }
            fold_replication(acc, agg, rep, trace);
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    agg.mean_regret = std::move(acc.regret_mean);
    agg.mean_percent_optimal = std::move(acc.pct_mean);
    agg.std_regret.assign(n, 0.0);
    if (reps > 1) {
        for (std::int64_t i = 0; i < n; ++i) {
            agg.std_regret[i] = std::sqrt(acc.regret_m2[i] / (reps - 1));
        }
    }

    double final_mean = 0.0, final_m2 = 0.0;
    for (int rep = 1; rep <= reps; ++rep) {
        const double x = agg.final_regrets[rep - 1];
        const double d = x - final_mean;
        final_mean += d / rep;
        final_m2 += d * (x - final_mean);
    }
    agg.mean_final_regret = final_mean;
    agg.std_final_regret = reps > 1 ? std::sqrt(final_m2 / (reps - 1)) : 0.0;

    agg.mean_own_count.assign(m, std::vector<double>(k, 0.0));
    for (int v = 0; v < m; ++v) {
        for (int j = 0; j < k; ++j) {
            agg.mean_own_count[v][j] =
                static_cast<double>(acc.own_count_sum[static_cast<std::size_t>(v) * k + j]) /
                static_cast<double>(reps);
        }
    }
    return agg;
}

// ---- CSV writers --------------------------------------------------------

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string opt_real(const std::optional<double>& value) {
    return value ? format_real(*value) : std::string();
}

}  // namespace

std::string trace_csv(const SimulationTrace& trace, int replication) {
    std::string out = "replication,round,node,action,reward\n";
    const std::string rep = std::to_string(replication);
    for (std::int64_t t = 1; t <= trace.horizon; ++t) {
        for (int v = 1; v <= trace.m; ++v) {
            out += rep;
            out += ',';
            out += std::to_string(t);
            out += ',';
            out += std::to_string(v);
            out += ',';
            out += std::to_string(trace.action(v, t));
            out += ',';
            out += std::to_string(static_cast<int>(trace.reward(v, t)));
            out += '\n';
        }
    }
    return out;
}

std::string curves_csv(const AggregateResult& result) {
    std::string out = "round,mean_regret,std_regret,mean_percent_optimal\n";
    for (std::int64_t t = 1; t <= result.horizon; ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_real(result.mean_regret[t - 1]);
        out += ',';
        out += format_real(result.std_regret[t - 1]);
        out += ',';
        out += format_real(result.mean_percent_optimal[t - 1]);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const std::vector<SeriesSpec>& series,
                        const std::vector<AggregateResult>& results) {
    int max_arms = 0;
    for (const auto& result : results) max_arms = std::max(max_arms, result.num_arms);

    std::string out = "series,policy,topology,m,role,nodes,mean_final_regret,std_final_regret";
    for (int j = 1; j <= max_arms; ++j) out += ",count_arm_" + std::to_string(j);
    out += '\n';

    for (std::size_t s = 0; s < series.size(); ++s) {
        const SimulationConfig& config = series[s].config;
        const AggregateResult& result = results[s];

        // Node roles: fyl splits leader/follower, star splits center/leaf,
        // anything else is one symmetric role.
        std::vector<std::pair<std::string, std::vector<int>>> roles;
        if (config.policy == PolicyKind::fyl) {
            roles = {{"leader", {}}, {"follower", {}}};
            const DominatingSet& ds = *config.dominating_set;
            std::vector<char> is_leader(config.network.m + 1, 0);
            for (int leader : ds.members) is_leader[leader] = 1;
            for (int v = 1; v <= config.network.m; ++v) {
                roles[is_leader[v] ? 0 : 1].second.push_back(v);
            }
        } else if (config.network.topology == Topology::star && config.network.m >= 2) {
            roles = {{"center", {1}}, {"leaf", {}}};
            for (int v = 2; v <= config.network.m; ++v) roles[1].second.push_back(v);
        } else {
            roles = {{"node", {}}};
            for (int v = 1; v <= config.network.m; ++v) roles[0].second.push_back(v);
        }

        for (const auto& [role, nodes] : roles) {
            if (nodes.empty()) continue;
            out += csv_escape(series[s].label);
            out += ',';
            out += policy_name(config.policy);
            out += ',';
            out += topology_name(config.network.topology);
            out += ',';
            out += std::to_string(config.network.m);
            out += ',';
            out += role;
            out += ',';
            out += std::to_string(nodes.size());
            out += ',';
            out += format_real(result.mean_final_regret);
            out += ',';
            out += format_real(result.std_final_regret);
            for (int j = 0; j < max_arms; ++j) {
                out += ',';
                if (j < result.num_arms) {
                    double total = 0.0;
                    for (int v : nodes) total += result.mean_own_count[v - 1][j];
                    out += format_real(total / static_cast<double>(nodes.size()));
                }
            }
            out += '\n';
        }
    }
    return out;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
    std::string out = "m,center_mean,leaf_mean,leaf_max\n";
    for (const Table1Row& row : rows) {
        out += std::to_string(row.m);
        out += ',';
        out += format_real(row.center_mean);
        out += ',';
        out += format_real(row.leaf_mean);
        out += ',';
        out += format_real(row.leaf_max);
        out += '\n';
    }
    return out;
}

std::string bounds_csv(const std::vector<BoundRow>& rows) {
    std::string out =
        "network,m,topology,arm,delta,beta,n,C_G,L_G,domset_size,"
        "ucb_upper,universal_lower,naic_lower,star_lower,fyl_upper,reason\n";
    for (const BoundRow& row : rows) {
        out += csv_escape(row.network);
        out += ',';
        out += std::to_string(row.m);
        out += ',';
        out += topology_name(row.topology);
        out += ',';
        out += std::to_string(row.arm);
        out += ',';
        out += format_real(row.delta);
        out += ',';
        out += format_real(row.beta);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += opt_real(row.cg);
        out += ',';
        out += opt_real(row.lg);
        out += ',';
        out += row.domset_size ? std::to_string(*row.domset_size) : std::string();
        out += ',';
        out += opt_real(row.ucb_upper);
        out += ',';
        out += opt_real(row.universal_lower);
        out += ',';
        out += opt_real(row.naic_lower);
        out += ',';
        out += opt_real(row.star_lower);
        out += ',';
        out += opt_real(row.fyl_upper);
        out += ',';
        out += csv_escape(row.reason);
        out += '\n';
    }
    return out;
}

// ---- SVG chart ----------------------------------------------------------

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Smallest "nice" value (1/2/5 times a power of ten) >= v.
double nice_ceiling(double v) {
    if (v <= 0.0) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double step : {1.0, 2.0, 5.0, 10.0}) {
        if (step * mag >= v) return step * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string chart_svg(const std::string& title, const std::vector<SeriesSpec>& series,
                      const std::vector<AggregateResult>& results) {
    const double width = 960, height = 600;
    const double left = 75, right = 770, top = 60, bottom = 540;

    std::int64_t max_round = 1;
    double max_regret = 0.0;
    for (const auto& result : results) {
        max_round = std::max(max_round, result.horizon);
        if (!result.mean_regret.empty()) {
            max_regret = std::max(max_regret, result.mean_regret.back());
        }
    }
    const double y_top = nice_ceiling(max_regret);
    const double log_max = std::log10(static_cast<double>(std::max<std::int64_t>(max_round, 2)));

    auto x_of = [&](std::int64_t t) {
        return left + (right - left) * std::log10(static_cast<double>(t)) / log_max;
    };
    auto y_of = [&](double regret) {
        return bottom - (bottom - top) * regret / y_top;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"30\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"18\">" << title << "</text>\n";

    // Decade ticks on the log-scaled round axis.
    for (std::int64_t tick = 1; tick <= max_round; tick *= 10) {
        const double x = x_of(tick);
        svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << top << "\" x2=\"" << fmt2(x)
            << "\" y2=\"" << bottom << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << fmt2(x) << "\" y=\"" << bottom + 22
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick << "</text>\n";
    }
    // Five horizontal gridlines.
    for (int i = 0; i <= 5; ++i) {
        const double value = y_top * i / 5.0;
        const double y = y_of(value);
        svg << "<line x1=\"" << left << "\" y1=\"" << fmt2(y) << "\" x2=\"" << right
            << "\" y2=\"" << fmt2(y) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << fmt2(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << format_real(value) << "</text>\n";
    }
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 45
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << "round</text>\n";
    svg << "<text x=\"20\" y=\"" << (top + bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        << "transform=\"rotate(-90 20 " << (top + bottom) / 2 << ")\">mean regret</text>\n";

    for (std::size_t s = 0; s < results.size(); ++s) {
        const AggregateResult& result = results[s];
        const char* color = kPalette[s % kPaletteSize];

        // Geometric subsample of the curve (a subset of the CSV rows).
        std::vector<std::int64_t> rounds;
        const int samples = 240;
        const double span = std::log10(static_cast<double>(std::max<std::int64_t>(result.horizon, 2)));
        for (int i = 0; i <= samples; ++i) {
            auto t = static_cast<std::int64_t>(std::llround(std::pow(10.0, span * i / samples)));
            t = std::min(std::max<std::int64_t>(t, 1), result.horizon);
            if (rounds.empty() || t > rounds.back()) rounds.push_back(t);
        }
        if (rounds.back() != result.horizon) rounds.push_back(result.horizon);

        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        for (std::int64_t t : rounds) {
            svg << fmt2(x_of(t)) << ',' << fmt2(y_of(result.mean_regret[t - 1])) << ' ';
        }
        svg << "\"/>\n";

        const double ly = top + 20 + 22 * static_cast<double>(s);
        svg << "<line x1=\"790\" y1=\"" << fmt2(ly) << "\" x2=\"820\" y2=\"" << fmt2(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
        svg << "<text x=\"828\" y=\"" << fmt2(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"13\">" << series[s].label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace netbandit
