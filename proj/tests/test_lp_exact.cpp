#include <doctest.h>

#include <cmath>

#include "faircut/exact.hpp"
#include "faircut/lp.hpp"
#include "faircut/rng.hpp"

using namespace faircut;

namespace {

Graph named(const std::string& text) {
    return build_named(*GraphFamily::parse(text));
}

void check_witness(const LpReport& r, const Graph& g) {
    const auto probs = edge_cut_probabilities(r.witness, g);
    CHECK(std::abs(probs.min_value - r.value) < 1e-8);
    double qsum = 0.0;
    for (double q : r.dual_weights) {
        CHECK(q >= -1e-12);
        qsum += q;
    }
    CHECK(qsum == doctest::Approx(1.0).epsilon(1e-9));
}

}  // namespace

TEST_CASE("simplex core solves a textbook LP") {
    // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
    lp::Problem p;
    p.num_vars = 2;
    p.objective = {3.0, 5.0};
    p.rows.push_back({{1.0, 0.0}, lp::Sense::LessEqual, 4.0});
    p.rows.push_back({{0.0, 2.0}, lp::Sense::LessEqual, 12.0});
    p.rows.push_back({{3.0, 2.0}, lp::Sense::LessEqual, 18.0});
    const auto sol = lp::solve(p);
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective == doctest::Approx(36.0));
    CHECK(sol.x[0] == doctest::Approx(2.0));
    CHECK(sol.x[1] == doctest::Approx(6.0));
    // duals: y = (0, 3/2, 1), objective = y.b
    CHECK(sol.duals[0] == doctest::Approx(0.0));
    CHECK(sol.duals[1] == doctest::Approx(1.5));
    CHECK(sol.duals[2] == doctest::Approx(1.0));
}

TEST_CASE("simplex handles equality and >= rows with duals") {
    // min x + 2y st x + y = 1, x - y >= 0, x,y >= 0 -> min at (0.5, 0.5)? no:
    // maximize -(x + 2y): best is y = 0, x = 1 -> objective -1
    lp::Problem p;
    p.num_vars = 2;
    p.objective = {-1.0, -2.0};
    p.rows.push_back({{1.0, 1.0}, lp::Sense::Equal, 1.0});
    p.rows.push_back({{1.0, -1.0}, lp::Sense::GreaterEqual, 0.0});
    const auto sol = lp::solve(p);
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective == doctest::Approx(-1.0));
    CHECK(sol.x[0] == doctest::Approx(1.0));
    CHECK(sol.x[1] == doctest::Approx(0.0));
    const double dual_obj = sol.duals[0] * 1.0 + sol.duals[1] * 0.0;
    CHECK(dual_obj == doctest::Approx(sol.objective));
}

TEST_CASE("simplex reports infeasible and unbounded problems") {
    lp::Problem inf;
    inf.num_vars = 1;
    inf.objective = {1.0};
    inf.rows.push_back({{1.0}, lp::Sense::LessEqual, 1.0});
    inf.rows.push_back({{1.0}, lp::Sense::GreaterEqual, 2.0});
    CHECK(lp::solve(inf).status == lp::Status::Infeasible);

    lp::Problem unb;
    unb.num_vars = 1;
    unb.objective = {1.0};
    unb.rows.push_back({{-1.0}, lp::Sense::LessEqual, 1.0});
    CHECK(lp::solve(unb).status == lp::Status::Unbounded);
}

TEST_CASE("primal enumeration on closed-form graphs") {
    SUBCASE("K_4 gives 2/3") {
        const auto r = solve_primal_enumeration(named("complete:4"));
        CHECK(r.value == doctest::Approx(2.0 / 3).epsilon(1e-9));
        check_witness(r, named("complete:4"));
    }
    SUBCASE("petersen gives 4/5") {
        const auto r = solve_primal_enumeration(named("petersen"));
        CHECK(r.value == doctest::Approx(0.8).epsilon(1e-9));
        check_witness(r, named("petersen"));
    }
    SUBCASE("K_2 gives 1") {
        const auto r = solve_primal_enumeration(Graph(2, {{0, 1, 1.0}}));
        CHECK(r.value == doctest::Approx(1.0));
    }
    SUBCASE("complete graphs match n/(2(n-1)) and (n+1)/(2n)") {
        for (int n = 3; n <= 9; ++n) {
            const double expect =
                n % 2 == 0 ? n / (2.0 * (n - 1)) : (n + 1.0) / (2.0 * n);
            const auto r = solve_primal_enumeration(named("complete:" + std::to_string(n)));
            CHECK(r.value == doctest::Approx(expect).epsilon(1e-9));
        }
    }
    SUBCASE("size budget enforced") {
        CHECK_THROWS(solve_primal_enumeration(named("complete:18")));
    }
}

TEST_CASE("dual cutting plane on closed-form graphs") {
    SUBCASE("paley 13 gives 2/3") {
        const auto r = solve_dual_cutting_plane(named("paley:13"));
        CHECK(r.value == doctest::Approx(2.0 / 3).epsilon(1e-7));
        check_witness(r, named("paley:13"));
    }
    SUBCASE("C_5 gives 4/5") {
        const auto r = solve_dual_cutting_plane(named("cycle:5"));
        CHECK(r.value == doctest::Approx(0.8).epsilon(1e-7));
    }
    SUBCASE("K_3 gives 2/3") {
        const auto r = solve_dual_cutting_plane(named("complete:3"));
        CHECK(r.value == doctest::Approx(2.0 / 3).epsilon(1e-7));
    }
}

TEST_CASE("primal and dual methods agree on random instances") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int n = 5 + static_cast<int>(seed % 10);  // 5..14
        const Graph g = erdos_renyi_connected(n, 0.35, seed + 1000);
        const auto primal = solve_primal_enumeration(g);
        const auto dual = solve_dual_cutting_plane(g);
        CHECK(std::abs(primal.value - dual.value) < 1e-7);
        check_witness(primal, g);
        check_witness(dual, g);
    }
}

TEST_CASE("duality verification with complementary slackness") {
    SUBCASE("petersen") {
        const auto rep = verify_duality(named("petersen"));
        CHECK(rep.ok);
        CHECK(rep.gap <= 1e-7);
        CHECK(rep.offending_cuts.empty());
    }
    SUBCASE("K_4") {
        const auto rep = verify_duality(named("complete:4"));
        CHECK(rep.ok);
    }
    SUBCASE("K_2 trivially tight") {
        const auto rep = verify_duality(Graph(2, {{0, 1, 1.0}}));
        CHECK(rep.ok);
        CHECK(rep.gap <= 1e-12);
    }
}

TEST_CASE("maxcut upper bound and edge-transitive equality") {
    CHECK(fair_value_upper_bound_maxcut(named("petersen")) ==
          doctest::Approx(0.8));
    CHECK(fair_value_upper_bound_maxcut(named("complete:5")) ==
          doctest::Approx(0.6));
    // star K_{1,3}: bipartite, single cut covers everything
    const Graph star(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    CHECK(fair_value_upper_bound_maxcut(star) == doctest::Approx(1.0));

    // exact equality on edge-transitive named graphs (rational check)
    struct Row {
        const char* family;
        double eta;
    };
    for (const Row& row : {Row{"petersen", 4.0 / 5}, Row{"cycle:5", 4.0 / 5},
                           Row{"complete:6", 0.6}, Row{"paley:13", 2.0 / 3}}) {
        const Graph g = named(row.family);
        const auto r = solve_primal_enumeration(g);
        CHECK(r.value == doctest::Approx(row.eta).epsilon(1e-9));
        CHECK(fair_value_upper_bound_maxcut(g) ==
              doctest::Approx(row.eta).epsilon(1e-12));
    }
}

TEST_CASE("fair value is monotone under subgraphs") {
    Rng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = erdos_renyi_connected(8, 0.5, 3000 + trial);
        // random connected subgraph: drop one non-bridge edge if possible
        std::vector<std::pair<int, int>> keep;
        int dropped = -1;
        for (int e = 0; e < g.num_edges(); ++e) {
            if (dropped < 0 && rng.uniform() < 0.4) {
                std::vector<std::pair<int, int>> candidate;
                for (int f = 0; f < g.num_edges(); ++f)
                    if (f != e)
                        candidate.push_back({g.edge(f).u, g.edge(f).v});
                std::vector<int> all(g.num_vertices());
                for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
                const auto sub = subgraph(g, all, candidate);
                if (sub.graph.connected() && sub.graph.num_edges() > 0) {
                    dropped = e;
                    keep = candidate;
                }
            }
        }
        if (dropped < 0) continue;
        std::vector<int> all(g.num_vertices());
        for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
        const Graph h = subgraph(g, all, keep).graph;
        const double vg = solve_primal_enumeration(g).value;
        const double vh = solve_primal_enumeration(h).value;
        CHECK(vg <= vh + 1e-9);
    }
}

TEST_CASE("edgeless inputs rejected") {
    CHECK_THROWS(solve_primal_enumeration(Graph(3, {})));
    CHECK_THROWS(solve_dual_cutting_plane(Graph(3, {})));
}
