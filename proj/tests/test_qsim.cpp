#include <doctest.h>

#include <cmath>
#include <complex>

#include "faircut/qsim.hpp"
#include "faircut/rng.hpp"

using namespace faircut;

namespace {

Graph named(const std::string& text) {
    return build_named(*GraphFamily::parse(text));
}

std::vector<double> random_params(const CircuitSpec& spec, std::uint64_t seed,
                                  double lo = 0.0, double hi = 2.0 * M_PI) {
    Rng rng(seed);
    std::vector<double> params(spec.num_params());
    for (double& p : params) p = rng.uniform(lo, hi);
    return params;
}

// independent oracle: dense 4x4 matrix simulation of the 2-qubit circuit
double k2_dense_oracle(double gamma, double beta) {
    using cd = std::complex<double>;
    const cd i{0.0, 1.0};
    cd psi[4];
    for (auto& a : psi) a = 0.5;
    // U_C = exp(+i gamma Z0 Z1): signs + - - +
    const double sgn[4] = {1.0, -1.0, -1.0, 1.0};
    for (int x = 0; x < 4; ++x) psi[x] *= std::exp(i * gamma * sgn[x]);
    // mixer on each qubit: rows [cos, -i sin; -i sin, cos]
    const cd c = std::cos(beta), ms = -i * std::sin(beta);
    cd tmp[4];
    tmp[0] = c * psi[0] + ms * psi[1];
    tmp[1] = c * psi[1] + ms * psi[0];
    tmp[2] = c * psi[2] + ms * psi[3];
    tmp[3] = c * psi[3] + ms * psi[2];
    psi[0] = c * tmp[0] + ms * tmp[2];
    psi[2] = c * tmp[2] + ms * tmp[0];
    psi[1] = c * tmp[1] + ms * tmp[3];
    psi[3] = c * tmp[3] + ms * tmp[1];
    double zz = 0.0;
    for (int x = 0; x < 4; ++x) zz += std::norm(psi[x]) * sgn[x];
    return zz;
}

}  // namespace

TEST_CASE("dqaoa augmentation rules") {
    SUBCASE("P_5 gets one ancilla on a degree-2 vertex") {
        const auto spec = build_dqaoa_spec(named("path:5"), 1, AnsatzMode::Standard);
        CHECK(spec.num_ancillas() == 1);
        CHECK(spec.qubits() == 6);
        const auto& edges = spec.gate_edges();
        CHECK(edges.size() == 5);  // 4 path edges + 1 ancilla coupling
        const auto& anc = edges.back();
        CHECK_FALSE(anc.objective);
        CHECK(anc.v == 5);
        CHECK(named("path:5").degree(anc.u) == 2);
        CHECK(anc.u == 1);  // lowest-index maximal-degree vertex
    }
    SUBCASE("2 K_2 gets ancillas A and B") {
        const Graph two_k2(4, {{0, 1, 1.0}, {2, 3, 1.0}});
        const auto spec = build_dqaoa_spec(two_k2, 1, AnsatzMode::Standard);
        CHECK(spec.num_ancillas() == 2);
        CHECK(spec.qubits() == 6);
        const auto& edges = spec.gate_edges();
        REQUIRE(edges.size() == 5);  // 2 base + 2 component couplings + (A,B)
        CHECK(edges[2].u == 0);
        CHECK(edges[2].v == 4);
        CHECK(edges[3].u == 2);
        CHECK(edges[3].v == 4);
        CHECK(edges[4].u == 4);
        CHECK(edges[4].v == 5);
        CHECK(spec.augmented_graph().connected());
    }
    SUBCASE("K_4 is untouched") {
        const auto spec = build_dqaoa_spec(named("complete:4"), 2, AnsatzMode::MultiAngle);
        CHECK(spec.num_ancillas() == 0);
        CHECK(spec.num_params() == 2 * (6 + 4));
    }
    SUBCASE("triangle and P_3 are untouched (below the size gate)") {
        CHECK(build_dqaoa_spec(named("complete:3"), 1, AnsatzMode::Standard)
                  .num_ancillas() == 0);
        CHECK(build_dqaoa_spec(named("path:3"), 1, AnsatzMode::Standard)
                  .num_ancillas() == 0);
    }
    SUBCASE("C_4 and C_5 are augmented") {
        CHECK(build_dqaoa_spec(named("cycle:4"), 1, AnsatzMode::Standard)
                  .num_ancillas() == 1);
        CHECK(build_dqaoa_spec(named("cycle:5"), 1, AnsatzMode::Standard)
                  .num_ancillas() == 1);
    }
    SUBCASE("layer count validated") {
        CHECK_THROWS(build_dqaoa_spec(named("complete:3"), 0, AnsatzMode::Standard));
    }
}

TEST_CASE("identity circuit leaves the plus state") {
    const auto spec = build_dqaoa_spec(named("complete:4"), 2, AnsatzMode::Standard);
    const std::vector<double> zero(spec.num_params(), 0.0);
    const StateVector psi = run_circuit(spec, zero);
    const double amp = 1.0 / std::sqrt(16.0);
    for (std::size_t x = 0; x < psi.dim(); ++x) {
        CHECK(psi.data()[x].real() == doctest::Approx(amp).epsilon(1e-12));
        CHECK(std::abs(psi.data()[x].imag()) < 1e-15);
    }
    const auto zz = zz_expectations(psi, spec);
    for (double z : zz) CHECK(std::abs(z) < 1e-12);  // cut prob 1/2 each
}

TEST_CASE("K_2 matches the dense 2-qubit oracle") {
    const Graph k2(2, {{0, 1, 1.0}});
    const auto spec = build_dqaoa_spec(k2, 1, AnsatzMode::Standard);
    SUBCASE("the pinned point (pi/4, pi/8) cuts with certainty") {
        const std::vector<double> params{M_PI / 4, M_PI / 8};
        const auto zz = zz_expectations(run_circuit(spec, params), spec);
        CHECK(zz[0] == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("random angles") {
        Rng rng(7);
        for (int t = 0; t < 25; ++t) {
            const double gamma = rng.uniform(0.0, 2 * M_PI);
            const double beta = rng.uniform(0.0, 2 * M_PI);
            const std::vector<double> params{gamma, beta};
            const auto zz = zz_expectations(run_circuit(spec, params), spec);
            CHECK(zz[0] == doctest::Approx(k2_dense_oracle(gamma, beta))
                               .epsilon(1e-12));
        }
    }
}

TEST_CASE("norm is preserved through deep circuits") {
    const auto spec = build_dqaoa_spec(named("petersen"), 4, AnsatzMode::MultiAngle);
    const auto params = random_params(spec, 3);
    const StateVector psi = run_circuit(spec, params);
    CHECK(std::abs(psi.norm() - 1.0) <= 1e-10);
}

TEST_CASE("computational-basis states give classical parities") {
    // |0011> on K_4 via zz on an explicit state
    StateVector psi(4);
    psi.data()[0] = 0.0;
    psi.data()[0b0011] = 1.0;
    const auto zz = zz_expectations(psi, named("complete:4"));
    // edges sorted: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    CHECK(zz[0] == doctest::Approx(1.0));   // 0,1 together
    CHECK(zz[3] == doctest::Approx(-1.0));  // 1,2 split
}

TEST_CASE("simulator matches the K_n closed form") {
    Rng rng(11);
    double max_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 8);  // 3..10
        const Graph kn = named("complete:" + std::to_string(n));
        const auto spec = build_dqaoa_spec(kn, 1, AnsatzMode::Standard);
        const double gamma = rng.uniform(0.0, 2 * M_PI);
        const double beta = rng.uniform(0.0, 2 * M_PI);
        const std::vector<double> params{gamma, beta};
        const auto zz = zz_expectations(run_circuit(spec, params), spec);
        const double expect = closed_form_k1_kn(n, gamma, beta);
        for (double z : zz) max_err = std::max(max_err, std::abs(z - expect));
    }
    CHECK(max_err <= 1e-9);
}

TEST_CASE("simulator matches the triangle-free regular closed form") {
    for (const char* name : {"petersen", "cycle:6"}) {
        const Graph g = named(name);
        const int delta = g.degree(0);
        const auto spec = build_dqaoa_spec(g, 1, AnsatzMode::Standard);
        if (spec.num_ancillas() > 0) continue;  // formula is for the bare ansatz
        Rng rng(13);
        for (int t = 0; t < 20; ++t) {
            const double gamma = rng.uniform(0.0, 2 * M_PI);
            const double beta = rng.uniform(0.0, 2 * M_PI);
            const std::vector<double> params{gamma, beta};
            const auto zz = zz_expectations(run_circuit(spec, params), spec);
            const double expect =
                1.0 - 2.0 * closed_form_k1_triangle_free_regular(delta, gamma, beta);
            for (double z : zz)
                CHECK(z == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("closed form specials") {
    CHECK(closed_form_k1_kn(5, 0.0, 0.0) == doctest::Approx(0.0));
    CHECK(closed_form_k1_kn_opt(3) == doctest::Approx(2.0 / 3).epsilon(1e-9));
    const double q14 = closed_form_k1_kn_opt(4);
    CHECK(q14 == doctest::Approx(0.6160).epsilon(2e-4));
    CHECK(q14 > std::acos(-1.0 / 3) / M_PI);
    CHECK(closed_form_k1_triangle_free_regular_opt(1) == doctest::Approx(1.0));
    CHECK(closed_form_k1_triangle_free_regular(3, 0.0, 1.234) ==
          doctest::Approx(0.5));
    // petersen: 1/2 + 1/(3 sqrt 3)
    CHECK(closed_form_k1_triangle_free_regular_opt(3) ==
          doctest::Approx(0.5 + 1.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("z2 symmetry of circuit outputs") {
    for (const char* name : {"complete:4", "petersen", "path:5"}) {
        const Graph g = named(name);
        const auto spec = build_dqaoa_spec(g, 2, AnsatzMode::MultiAngle);
        const auto params = random_params(spec, 17);
        const StateVector psi = run_circuit(spec, params);
        const std::size_t dim = psi.dim();
        for (std::size_t x = 0; x < dim; ++x) {
            const std::size_t flipped = dim - 1 - x;
            CHECK(std::abs(std::norm(psi.data()[x]) -
                           std::norm(psi.data()[flipped])) <= 1e-10);
        }
    }
}

TEST_CASE("bitstring sampling") {
    SUBCASE("point mass state") {
        StateVector psi(4);
        psi.data()[0] = 0.0;
        psi.data()[0b0101] = 1.0;
        const auto spec = build_dqaoa_spec(named("complete:4"), 1, AnsatzMode::Standard);
        const auto samples = sample_bitstrings(psi, spec, 10, 3);
        for (const CutMask m : samples) CHECK(m == 0b0101);
    }
    SUBCASE("uniform 2-qubit state frequencies within 3 sigma") {
        const Graph k2(2, {{0, 1, 1.0}});
        const auto spec = build_dqaoa_spec(k2, 1, AnsatzMode::Standard);
        const StateVector psi = StateVector::plus_state(2);
        const auto samples = sample_bitstrings(psi, spec, 40000, 13);
        double cut = 0.0;
        for (const CutMask m : samples)
            cut += edge_cut_indicator(m, 0, 1) ? 1.0 : 0.0;
        cut /= static_cast<double>(samples.size());
        CHECK(cut == doctest::Approx(0.5).epsilon(0.02));
    }
    SUBCASE("bell-like state never cuts") {
        StateVector psi(2);
        psi.data()[0] = 1.0 / std::sqrt(2.0);
        psi.data()[3] = 1.0 / std::sqrt(2.0);
        const Graph k2(2, {{0, 1, 1.0}});
        const auto spec = build_dqaoa_spec(k2, 1, AnsatzMode::Standard);
        for (const CutMask m : sample_bitstrings(psi, spec, 200, 21))
            CHECK(edge_cut_indicator(m, 0, 1) == 0);
    }
    SUBCASE("ancilla bits are dropped") {
        const auto spec = build_dqaoa_spec(named("path:5"), 1, AnsatzMode::Standard);
        const auto params = random_params(spec, 23);
        const StateVector psi = run_circuit(spec, params);
        for (const CutMask m : sample_bitstrings(psi, spec, 100, 5))
            CHECK((m >> 5) == 0u);
    }
}

TEST_CASE("reverse-pass gradient matches central finite differences") {
    Rng rng(29);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int pick = static_cast<int>(rng.next_u64() % 4);
        const Graph g = pick == 0   ? named("complete:3")
                        : pick == 1 ? named("complete:4")
                        : pick == 2 ? named("path:4")
                                    : named("cycle:5");
        const AnsatzMode mode =
            rng.next_u64() % 2 == 0 ? AnsatzMode::Standard : AnsatzMode::MultiAngle;
        const int layers = 1 + static_cast<int>(rng.next_u64() % 3);
        const auto spec = build_dqaoa_spec(g, layers, mode);
        const auto params = random_params(spec, 100 + trial);
        std::vector<double> weights(g.num_edges());
        double wsum = 0.0;
        for (double& w : weights) {
            w = rng.uniform(0.0, 1.0);
            wsum += w;
        }
        for (double& w : weights) w /= wsum;

        const auto grad = gradient_reverse(spec, params, weights);

        auto objective = [&](std::span<const double> p) {
            const auto zz = zz_expectations(run_circuit(spec, p), spec);
            double s = 0.0;
            for (std::size_t e = 0; e < zz.size(); ++e) s += weights[e] * zz[e];
            return s;
        };
        const double h = 1e-5;
        for (int j = 0; j < spec.num_params(); ++j) {
            std::vector<double> plus(params), minus(params);
            plus[j] += h;
            minus[j] -= h;
            const double fd = (objective(plus) - objective(minus)) / (2 * h);
            const double scale = std::max({1.0, std::abs(fd), std::abs(grad[j])});
            worst_rel = std::max(worst_rel, std::abs(grad[j] - fd) / scale);
        }
    }
    CHECK(worst_rel <= 1e-5);
}

TEST_CASE("gradient edge cases") {
    const auto spec = build_dqaoa_spec(named("complete:4"), 1, AnsatzMode::Standard);
    SUBCASE("all angles zero is a stationary point") {
        const std::vector<double> zero(spec.num_params(), 0.0);
        std::vector<double> weights(6, 1.0 / 6);
        for (double gj : gradient_reverse(spec, zero, weights))
            CHECK(std::abs(gj) < 1e-12);
    }
    SUBCASE("zero weights give a zero gradient") {
        const auto params = random_params(spec, 31);
        const std::vector<double> weights(6, 0.0);
        for (double gj : gradient_reverse(spec, params, weights))
            CHECK(gj == 0.0);
    }
    SUBCASE("weight size mismatch rejected") {
        const auto params = random_params(spec, 33);
        CHECK_THROWS(gradient_reverse(spec, params, std::vector<double>(5, 0.1)));
    }
}

TEST_CASE("partial-trace monotonicity of the fair value") {
    // min over E of the edge cut probabilities <= min over any subset E_H
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = erdos_renyi_connected(6, 0.5, 700 + trial);
        const auto spec = build_dqaoa_spec(g, 2, AnsatzMode::MultiAngle);
        const auto params = random_params(spec, 800 + trial);
        const auto zz = zz_expectations(run_circuit(spec, params), spec);
        std::vector<double> probs(zz.size());
        for (std::size_t e = 0; e < zz.size(); ++e) probs[e] = 0.5 * (1 - zz[e]);
        const double full_min = *std::min_element(probs.begin(), probs.end());
        // any nonempty edge subset has a min at least as large
        for (int subset_trial = 0; subset_trial < 5; ++subset_trial) {
            double sub_min = 1.0;
            bool any = false;
            for (std::size_t e = 0; e < probs.size(); ++e) {
                if (rng.uniform() < 0.5) {
                    sub_min = std::min(sub_min, probs[e]);
                    any = true;
                }
            }
            if (any) CHECK(full_min <= sub_min + 1e-12);
        }
    }
}
