#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "netbandit/bounds.hpp"
#include "netbandit/errors.hpp"
#include "netbandit/graph.hpp"
#include "netbandit/problem.hpp"

using namespace netbandit;

namespace {

const ProblemInstance kPaperInstance = make_instance({0.7, 0.5});

}  // namespace

TEST_CASE("bernoulli_kl values and domain") {
    CHECK(bernoulli_kl(0.5, 0.5) == 0.0);
    CHECK(bernoulli_kl(0.5, 0.7) == doctest::Approx(0.0871767).epsilon(1e-5));
    CHECK(bernoulli_kl(0.7, 0.5) == doctest::Approx(0.0822829).epsilon(1e-5));
    CHECK(bernoulli_kl(0.0, 0.3) == doctest::Approx(std::log(1.0 / 0.7)).epsilon(1e-12));
    CHECK(bernoulli_kl(1.0, 0.3) == doctest::Approx(std::log(1.0 / 0.3)).epsilon(1e-12));

    for (double p : {0.1, 0.3, 0.6, 0.9}) {
        for (double q : {0.2, 0.5, 0.8}) {
            if (p == q) continue;
            CHECK(bernoulli_kl(p, q) > 0.0);  // positivity off the diagonal
        }
        CHECK(bernoulli_kl(p, p) == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(bernoulli_kl(0.5, 0.0), config_error);
    CHECK_THROWS_AS(bernoulli_kl(0.5, 1.0), config_error);
    CHECK_THROWS_AS(bernoulli_kl(-0.1, 0.5), config_error);
}

TEST_CASE("sample_threshold") {
    CHECK(sample_threshold(0.2, 100000) == 2303);
    CHECK(sample_threshold(1.0, 3) == 9);  // ceil(8 ln 3)
    for (double gap : {0.1, 0.25, 0.5, 1.0}) {
        for (std::int64_t n : {2, 100, 100000}) {
            const double raw = 8.0 * std::log(static_cast<double>(n)) / (gap * gap);
            CHECK(sample_threshold(gap, n) == static_cast<std::int64_t>(std::ceil(raw)));
        }
    }
    CHECK_THROWS_AS(sample_threshold(0.0, 100), config_error);
    CHECK_THROWS_AS(sample_threshold(0.2, 1), config_error);
}

TEST_CASE("coverage game closed forms") {
    CHECK(cg_closed_form(Topology::circular, 6, 10, CgDirection::maximize) == 30);
    CHECK(cg_closed_form(Topology::fully_disconnected, 3, 7, CgDirection::minimize) == 21);
    CHECK(cg_closed_form(Topology::circular, 6, 9, CgDirection::minimize) == 18);
    CHECK(cg_closed_form(Topology::star, 5, 3, CgDirection::maximize) == 12);
    CHECK(cg_closed_form(Topology::fully_connected, 5, 3, CgDirection::maximize) == 3);
    CHECK(cg_closed_form(Topology::star, 5, 3, CgDirection::minimize) == 3);
    CHECK_THROWS_AS(cg_closed_form(Topology::custom, 5, 3, CgDirection::maximize),
                    config_error);
    CHECK_THROWS_AS(cg_closed_form(Topology::circular, 2, 3, CgDirection::maximize),
                    config_error);
}

TEST_CASE("brute-force coverage search equals the closed forms") {
    for (const Topology topology : {Topology::fully_connected, Topology::circular,
                                    Topology::star, Topology::fully_disconnected}) {
        for (int m = 3; m <= 8; ++m) {
            const Network net = generate(topology, m);
            for (std::int64_t threshold = 1; threshold <= 3; ++threshold) {
                for (const CgDirection dir : {CgDirection::maximize, CgDirection::minimize}) {
                    const std::int64_t brute = cg_solve_brute({net, threshold, dir});
                    CHECK(brute == cg_closed_form(topology, m, threshold, dir));
                    CHECK(brute >= threshold);
                    CHECK(brute <= m * threshold);
                }
            }
        }
    }
}

TEST_CASE("coverage search scale gates") {
    CHECK_THROWS_AS(
        cg_solve_brute({generate(Topology::fully_connected, 9), 2, CgDirection::maximize}),
        scale_error);
    CHECK_THROWS_AS(
        cg_solve_brute({generate(Topology::fully_connected, 4), 13, CgDirection::maximize}),
        scale_error);
    CHECK_THROWS_AS(
        cg_solve_brute({generate(Topology::fully_connected, 4), 0, CgDirection::maximize}),
        config_error);
}

TEST_CASE("maximize solutions grow as edges are removed") {
    // FC -> circular -> FD is an edge-removal chain at fixed m.
    for (int m : {4, 5, 6}) {
        const std::int64_t fc =
            cg_solve_brute({generate(Topology::fully_connected, m), 2, CgDirection::maximize});
        const std::int64_t circ =
            cg_solve_brute({generate(Topology::circular, m), 2, CgDirection::maximize});
        const std::int64_t fd = cg_solve_brute(
            {generate(Topology::fully_disconnected, m), 2, CgDirection::maximize});
        CHECK(fc <= circ);
        CHECK(circ <= fd);
    }
    // Single-edge removals from a 5-cycle.
    std::vector<std::string> chain = {
        "nodes 5\n1 2\n2 3\n3 4\n4 5\n5 1\n",
        "nodes 5\n1 2\n2 3\n3 4\n4 5\n",
        "nodes 5\n1 2\n2 3\n4 5\n",
        "nodes 5\n1 2\n4 5\n",
        "nodes 5\n1 2\n",
    };
    std::int64_t previous = 0;
    for (const std::string& text : chain) {
        const std::int64_t value =
            cg_solve_brute({from_edge_list_text(text), 2, CgDirection::maximize});
        CHECK(value >= previous);
        previous = value;
    }
}

TEST_CASE("neighborhood-UCB upper bound values") {
    // Single agent: 8 ln(1e5)/0.2 + 0.2 + (2 + 2/ln 2) * 0.2.
    const double single = ucb_network_upper_bound(kPaperInstance, 1.0, 1, 100000, 0.5);
    CHECK(single == doctest::Approx(461.694).epsilon(1e-4));

    // Star m=5: coefficient (m-1)=4 on the main term plus b at m=5.
    const double star5 = ucb_network_upper_bound(kPaperInstance, 4.0, 5, 100000, 0.5);
    CHECK(star5 == doctest::Approx(1847.75).epsilon(1e-4));

    // Vector overload with a uniform coefficient agrees with the scalar one.
    CHECK(ucb_network_upper_bound(kPaperInstance, {4.0, 4.0}, 5, 100000, 0.5) == star5);

    CHECK_THROWS_AS(ucb_network_upper_bound(kPaperInstance, 1.0, 1, 100000, 0.25),
                    config_error);
    CHECK_THROWS_AS(ucb_network_upper_bound(kPaperInstance, 1.0, 1, 100000, 1.0),
                    config_error);
    CHECK_THROWS_AS(
        ucb_network_upper_bound(kPaperInstance, std::vector<double>{1.0}, 1, 100000, 0.5),
        config_error);
}

TEST_CASE("universal and neighborhood-aware lower bounds") {
    const double universal = universal_lower_bound(kPaperInstance, 100000, 0.1);
    CHECK(universal == doctest::Approx(21.611).epsilon(1e-3));

    // The (1-delta)/(1+delta) factor is exactly 1/3 at delta = 0.5.
    const double at_half = universal_lower_bound(kPaperInstance, 100000, 0.5);
    const double shrinkless = universal * 1.1 / 0.9;  // undo the delta=0.1 factor
    CHECK(at_half == doctest::Approx(shrinkless / 3.0).epsilon(1e-12));

    CHECK(naic_lower_bound(kPaperInstance, 1.0, 100000, 0.1) == universal);
    CHECK(naic_lower_bound(kPaperInstance, 5.0, 100000, 0.1) ==
          doctest::Approx(5.0 * universal).epsilon(1e-12));
    CHECK(naic_lower_bound(kPaperInstance, 2.0, 100000, 0.1) ==
          doctest::Approx(2.0 * universal).epsilon(1e-12));  // circular m=6: m/3 = 2

    CHECK_THROWS_AS(universal_lower_bound(kPaperInstance, 100000, 0.0), config_error);
    CHECK_THROWS_AS(universal_lower_bound(kPaperInstance, 100000, 1.0), config_error);
    CHECK_THROWS_AS(universal_lower_bound(make_instance({1.0, 0.5}), 100000, 0.1),
                    config_error);
    CHECK_NOTHROW(universal_lower_bound(make_instance({0.7, 0.0}), 100000, 0.1));
}

TEST_CASE("star refinement of the lower bound") {
    // Needs m >= 2 ln n / kl(0.5, 0.7) = 264.128... at n = 1e5.
    const double kl = bernoulli_kl(0.5, 0.7);
    const double log_n = std::log(1e5);
    CHECK(2.0 * log_n / kl == doctest::Approx(264.13).epsilon(1e-3));

    const double pulls = star_naic_lower_bound(kPaperInstance, 350, 100000);
    CHECK(pulls == doctest::Approx(349.0 * log_n / kl).epsilon(1e-12));
    CHECK(std::abs(pulls - 46088.0) < 10.0);

    CHECK_NOTHROW(star_naic_lower_bound(kPaperInstance, 265, 100000));
    CHECK_THROWS_AS(star_naic_lower_bound(kPaperInstance, 264, 100000), config_error);
    CHECK_THROWS_AS(star_naic_lower_bound(kPaperInstance, 10, 100000), config_error);
    CHECK_THROWS_AS(star_naic_lower_bound(make_instance({0.7, 0.5, 0.3}), 350, 100000),
                    config_error);
}

TEST_CASE("follow-your-leader upper bound values") {
    const double star25 = fyl_upper_bound(kPaperInstance, 1, 25, 100000, 0.5);
    CHECK(star25 == doctest::Approx(494.744).epsilon(1e-4));

    // The ln n term has no m factor for |D| = 1: growing m only grows the
    // additive constant, so the m=50 minus m=25 difference is n-independent.
    const double star50 = fyl_upper_bound(kPaperInstance, 1, 50, 100000, 0.5);
    CHECK(star50 - star25 ==
          doctest::Approx((fyl_upper_bound(kPaperInstance, 1, 50, 10, 0.5) -
                           fyl_upper_bound(kPaperInstance, 1, 25, 10, 0.5)))
              .epsilon(1e-9));

    // |D| = m scales the main term by m relative to a single agent.
    const double single_main = fyl_upper_bound(kPaperInstance, 1, 1, 100000, 0.5);
    const double fd4 = fyl_upper_bound(kPaperInstance, 4, 4, 100000, 0.5);
    const double c1 = 1.0 + (2.0 / 1.0) * (1.0 + 1.0 / std::log(2.0));  // m=1 constant
    const double c4 = 7.0 + 8.0 * (1.0 + 1.0 / std::log(2.0));          // m=4 constant
    CHECK(fd4 - c4 * 0.2 == doctest::Approx(4.0 * (single_main - c1 * 0.2)).epsilon(1e-9));

    CHECK_THROWS_AS(fyl_upper_bound(kPaperInstance, 0, 5, 100000, 0.5), config_error);
    CHECK_THROWS_AS(fyl_upper_bound(kPaperInstance, 6, 5, 100000, 0.5), config_error);
    CHECK_THROWS_AS(fyl_upper_bound(kPaperInstance, 1, 5, 100000, 0.2), config_error);
}

TEST_CASE("bound sandwich on canonical topologies") {
    for (const Topology topology : {Topology::fully_connected, Topology::circular,
                                    Topology::star, Topology::fully_disconnected}) {
        for (const int m : {4, 7, 10}) {
            const Network net = generate(topology, m);
            for (const std::int64_t n : {1000, 10000, 100000}) {
                const auto rows = compute_bound_rows("net", kPaperInstance, net, n, 0.1, 0.5);
                REQUIRE(rows.size() == 1);
                const BoundRow& row = rows[0];
                REQUIRE(row.naic_lower.has_value());
                REQUIRE(row.ucb_upper.has_value());
                REQUIRE(row.universal_lower.has_value());
                REQUIRE(row.fyl_upper.has_value());
                CHECK(*row.naic_lower <= *row.ucb_upper);
                CHECK(*row.universal_lower <= *row.fyl_upper);
            }
        }
    }
}

TEST_CASE("follow-your-leader dominates neighborhood UCB on large stars") {
    for (int m = 3; m <= 60; m += 3) {
        for (const std::int64_t n : {1000, 100000, 1000000}) {
            const double fyl = fyl_upper_bound(kPaperInstance, 1, m, n, 0.5);
            const double ucb =
                ucb_network_upper_bound(kPaperInstance, static_cast<double>(m - 1), m, n, 0.5);
            CHECK(fyl < ucb);
        }
    }
}

TEST_CASE("bound rows: star refinement gating") {
    const auto big = compute_bound_rows("star350", kPaperInstance,
                                        generate(Topology::star, 350), 100000, 0.1, 0.5);
    REQUIRE(big.size() == 1);
    REQUIRE(big[0].star_lower.has_value());
    CHECK(*big[0].star_lower ==
          doctest::Approx(0.2 * star_naic_lower_bound(kPaperInstance, 350, 100000))
              .epsilon(1e-12));
    CHECK(big[0].cg == doctest::Approx(349.0));
    CHECK(big[0].domset_size == 1);
    CHECK(big[0].reason.empty());

    const auto small = compute_bound_rows("star10", kPaperInstance,
                                          generate(Topology::star, 10), 100000, 0.1, 0.5);
    REQUIRE(small.size() == 1);
    CHECK_FALSE(small[0].star_lower.has_value());
    CHECK(small[0].reason.find("m >= 2 ln n / kl") != std::string::npos);
}

TEST_CASE("bound rows: disconnected coefficient and per-arm layout") {
    const ProblemInstance three = make_instance({0.7, 0.5, 0.4});
    const auto rows = compute_bound_rows("fd5", three,
                                         generate(Topology::fully_disconnected, 5),
                                         100000, 0.1, 0.5);
    REQUIRE(rows.size() == 2);  // one row per suboptimal arm
    CHECK(rows[0].arm == 2);
    CHECK(rows[1].arm == 3);
    for (const BoundRow& row : rows) {
        CHECK(row.lg == doctest::Approx(5.0));
        REQUIRE(row.naic_lower.has_value());
        REQUIRE(row.universal_lower.has_value());
        CHECK(*row.naic_lower == doctest::Approx(5.0 * *row.universal_lower).epsilon(1e-12));
        CHECK(row.domset_size == 5);
    }
}

TEST_CASE("bound rows: custom graphs beyond the exact gate") {
    // Means 0.7/0.5 put the sample threshold far beyond the search gate.
    std::string text = "nodes 9\n";
    for (int v = 1; v < 9; ++v) {
        text += std::to_string(v) + " " + std::to_string(v + 1) + "\n";
    }
    const auto rows = compute_bound_rows("path9", kPaperInstance,
                                         from_edge_list_text(text), 100000, 0.1, 0.5);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].cg.has_value());
    CHECK_FALSE(rows[0].ucb_upper.has_value());
    CHECK_FALSE(rows[0].naic_lower.has_value());
    CHECK(rows[0].universal_lower.has_value());  // graph-free, still computable
    CHECK(rows[0].fyl_upper.has_value());
    CHECK(rows[0].reason.find("too large") != std::string::npos);
}

TEST_CASE("bound rows: degenerate best mean disables the kl-based bounds") {
    const auto rows = compute_bound_rows("fc3", make_instance({1.0, 0.5}),
                                         generate(Topology::fully_connected, 3),
                                         100000, 0.1, 0.5);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ucb_upper.has_value());
    CHECK(rows[0].fyl_upper.has_value());
    CHECK_FALSE(rows[0].universal_lower.has_value());
    CHECK_FALSE(rows[0].naic_lower.has_value());
    CHECK_FALSE(rows[0].star_lower.has_value());
    CHECK(rows[0].reason.find("kl") != std::string::npos);
}

TEST_CASE("bound rows: small custom graphs get exact coefficients") {
    // Gap 1.0 keeps the sample threshold inside the brute-force gate at n=4.
    const Network path3 = from_edge_list_text("nodes 3\n1 2\n2 3\n");
    const auto rows =
        compute_bound_rows("path3", make_instance({1.0, 0.0}), path3, 4, 0.1, 0.5);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].cg.has_value());
    CHECK(*rows[0].cg >= 1.0);
    CHECK(rows[0].ucb_upper.has_value());
}
