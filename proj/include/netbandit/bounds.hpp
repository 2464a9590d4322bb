#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netbandit/graph.hpp"
#include "netbandit/problem.hpp"

namespace netbandit {

// KL divergence between Bernoulli(p) and Bernoulli(q), with 0 ln 0 = 0.
// Requires p in [0,1] and q in (0,1).
double bernoulli_kl(double p, double q);

// ceil(8 ln n / gap^2): the per-arm sample level at which the optimistic
// index stops preferring a gap-suboptimal arm with high probability.
std::int64_t sample_threshold(double gap, std::int64_t n);

// The coverage game behind the graph-dependent constants.  Starting from an
// all-zero count vector, repeatedly increment any still-active node; a node
// deactivates permanently once the counts in its closed neighborhood reach
// `threshold`.  The total number of increments at termination depends on the
// order; `maximize` asks for the adversarial order (upper-bound constant),
// `minimize` for the most efficient one (lower-bound constant).
enum class CgDirection { maximize, minimize };

struct CgProblem {
    Network network;
    std::int64_t threshold = 0;
    CgDirection direction = CgDirection::maximize;
};

// Exact optimum by memoized search over clamped coverage states.
// Scale gates: m <= 8 and threshold <= 12 (scale_error above).
std::int64_t cg_solve_brute(const CgProblem& problem);

// Closed forms for the canonical topologies:
//   maximize: fully_connected t, circular floor(m/2)*t, star (m-1)*t,
//             fully_disconnected m*t
//   minimize: fully_connected t, circular ceil(m*t/3), star t,
//             fully_disconnected m*t
// (cg_solve_brute reproduces these exactly; see the unit tests.)
std::int64_t cg_closed_form(Topology topology, int m, std::int64_t threshold,
                            CgDirection direction);

// Regret upper bound for the neighborhood-UCB policy:
//   sum_i cg_i * (8 ln n / gap_i + gap_i) + b(m, beta)
// with b = m * (2/(4b-1) + 2/((4b-1)^2 ln(1/b))) * sum_j gap_j and
// beta in (0.25, 1).  cg coefficients are dimensionless (solution/threshold);
// the vector overload takes one per arm (optimal-arm entry ignored).
double ucb_network_upper_bound(const ProblemInstance& instance,
                               const std::vector<double>& cg_per_arm, int m,
                               std::int64_t n, double beta);
double ucb_network_upper_bound(const ProblemInstance& instance, double cg, int m,
                               std::int64_t n, double beta);

// Graph-free asymptotic lower bound for consistent policies:
//   sum_j gap_j * (1-delta)/(1+delta) * ln n / kl(mu_j, mu*), delta in (0,1).
double universal_lower_bound(const ProblemInstance& instance, std::int64_t n,
                             double delta);

// Neighborhood-aware lower bound: the universal form scaled by the
// graph coefficient lg (the minimize-direction coverage coefficient).
double naic_lower_bound(const ProblemInstance& instance, double lg, std::int64_t n,
                        double delta);

// Star-specific refinement for two-arm instances: expected pulls of the
// suboptimal arm across the network are at least (m-1) ln n / kl(mu_b, mu_a).
// Requires K = 2 and m >= 2 ln n / kl(mu_b, mu_a); returned in pull scale
// (multiply by the gap for regret scale).
double star_naic_lower_bound(const ProblemInstance& instance, int m, std::int64_t n);

// Regret upper bound for follow-your-leader with dominating set size d:
//   sum_i 8 d ln n / gap_i + c(m, beta) * sum_j gap_j
// with c = 2m - 1 + (2m/(4b-1)) * (1 + 1/((4b-1) ln(1/b))).
double fyl_upper_bound(const ProblemInstance& instance, int dominating_set_size,
                       int m, std::int64_t n, double beta);

// One bound-report row per suboptimal arm.  Bound columns hold the
// network-level totals for the (instance, network, n) triple; inapplicable
// entries stay empty and the reason column says why.
struct BoundRow {
    std::string network;  // series label
    int m = 0;
    Topology topology = Topology::custom;
    int arm = 0;  // 1-based suboptimal arm this row annotates
    double delta = 0.0;
    double beta = 0.0;
    std::int64_t n = 0;
    std::optional<double> cg;           // maximize-direction coefficient
    std::optional<double> lg;           // minimize-direction coefficient
    std::optional<int> domset_size;     // greedy dominating-set size
    std::optional<double> ucb_upper;
    std::optional<double> universal_lower;
    std::optional<double> naic_lower;
    std::optional<double> star_lower;   // regret scale (pulls * gap)
    std::optional<double> fyl_upper;
    std::string reason;
};

std::vector<BoundRow> compute_bound_rows(const std::string& label,
                                         const ProblemInstance& instance,
                                         const Network& network, std::int64_t n,
                                         double delta, double beta);

}  // namespace netbandit
