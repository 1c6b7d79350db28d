#include "faircut/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "faircut/rng.hpp"

namespace faircut {

Graph CircuitSpec::augmented_graph() const {
    std::vector<Edge> edges;
    for (const auto& ge : gate_edges_) edges.push_back({ge.u, ge.v, ge.w});
    return Graph(qubits_, std::move(edges));
}

CircuitSpec build_dqaoa_spec(const Graph& g, int layers, AnsatzMode mode) {
    if (layers < 1) throw std::invalid_argument("build_dqaoa_spec: layers >= 1");
    if (g.num_vertices() < 1)
        throw std::invalid_argument("build_dqaoa_spec: empty graph");

    CircuitSpec spec;
    spec.base_ = g;
    spec.layers_ = layers;
    spec.mode_ = mode;
    for (const auto& e : g.edges())
        spec.gate_edges_.push_back({e.u, e.v, e.w, true});

    const int n = g.num_vertices();
    const bool path_or_cycle = g.connected() && g.max_degree() <= 2;
    const bool rule1 = !g.connected() || (path_or_cycle && n >= 4);
    int qubits = n;
    if (rule1) {
        const int ancilla_a = qubits++;
        for (const auto& comp : g.components()) {
            int pick = comp.front();
            for (int v : comp)
                if (g.degree(v) > g.degree(pick)) pick = v;  // lowest index wins ties
            spec.gate_edges_.push_back({pick, ancilla_a, 1.0, false});
        }
        if (!g.connected() && n <= 4) {
            const int ancilla_b = qubits++;
            spec.gate_edges_.push_back({ancilla_a, ancilla_b, 1.0, false});
        }
    }
    spec.qubits_ = qubits;
    if (qubits > qubit_budget())
        throw std::invalid_argument("build_dqaoa_spec: qubit budget exceeded");
    return spec;
}

StateVector::StateVector(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > qubit_budget())
        throw std::invalid_argument("state vector: qubit count out of budget");
    amps_.assign(std::size_t(1) << qubits, {0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::plus_state(int qubits) {
    StateVector psi(qubits);
    const double amp = 1.0 / std::sqrt(static_cast<double>(psi.dim()));
    std::fill(psi.amps_.begin(), psi.amps_.end(), std::complex<double>{amp, 0.0});
    return psi;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

int qubit_budget() {
    static const int budget = [] {
        if (const char* env = std::getenv("FAIRCUT_BUDGET_QUBITS")) {
            const int v = std::atoi(env);
            if (v >= 1 && v <= 28) return v;
        }
        return StateVector::kDefaultQubitBudget;
    }();
    return budget;
}

namespace {

constexpr std::int64_t kParallelDim = 1 << 14;

// signed exponent per basis state: sum_e angle_e * w_e * s_u(x) s_v(x)
void accumulate_zz_exponent(const CircuitSpec& spec, int layer,
                            std::span<const double> params,
                            std::vector<double>& acc) {
    const std::int64_t dim = static_cast<std::int64_t>(acc.size());
    std::fill(acc.begin(), acc.end(), 0.0);
    const auto& edges = spec.gate_edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double a = params[spec.gamma_slot(layer, static_cast<int>(e))] *
                         edges[e].w;
        if (a == 0.0) continue;
        const int u = edges[e].u;
        const int v = edges[e].v;
#pragma omp parallel for schedule(static) if (dim >= kParallelDim)
        for (std::int64_t x = 0; x < dim; ++x) {
            const int cut = static_cast<int>(((x >> u) ^ (x >> v)) & 1);
            acc[x] += a * (1 - 2 * cut);
        }
    }
}

void apply_phase_layer(StateVector& psi, const CircuitSpec& spec, int layer,
                       std::span<const double> params, double sign,
                       std::vector<double>& scratch) {
    accumulate_zz_exponent(spec, layer, params, scratch);
    const std::int64_t dim = static_cast<std::int64_t>(psi.dim());
    auto* amps = psi.data();
#pragma omp parallel for schedule(static) if (dim >= kParallelDim)
    for (std::int64_t x = 0; x < dim; ++x)
        amps[x] *= std::polar(1.0, sign * scratch[x]);
}

// exp(-i beta X) on one qubit
void apply_rx(StateVector& psi, int qubit, double beta) {
    const std::int64_t dim = static_cast<std::int64_t>(psi.dim());
    const std::int64_t bit = std::int64_t(1) << qubit;
    const double c = std::cos(beta);
    const std::complex<double> ms{0.0, -std::sin(beta)};
    auto* amps = psi.data();
#pragma omp parallel for schedule(static) if (dim >= kParallelDim)
    for (std::int64_t x = 0; x < dim; ++x) {
        if (x & bit) continue;
        const std::complex<double> a0 = amps[x];
        const std::complex<double> a1 = amps[x | bit];
        amps[x] = c * a0 + ms * a1;
        amps[x | bit] = c * a1 + ms * a0;
    }
}

void apply_mixer_layer(StateVector& psi, const CircuitSpec& spec, int layer,
                       std::span<const double> params, double sign) {
    for (int v = 0; v < spec.qubits(); ++v)
        apply_rx(psi, v, sign * params[spec.beta_slot(layer, v)]);
}

std::vector<double> zz_impl(const StateVector& psi,
                            std::span<const GateEdge> edges, bool parallel) {
    const std::int64_t dim = static_cast<std::int64_t>(psi.dim());
    const auto* amps = psi.data();
    std::vector<double> out;
    out.reserve(edges.size());
    for (const auto& e : edges) {
        const int u = e.u;
        const int v = e.v;
        double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s) \
    if (parallel && dim >= kParallelDim)
        for (std::int64_t x = 0; x < dim; ++x) {
            const int cut = static_cast<int>(((x >> u) ^ (x >> v)) & 1);
            s += std::norm(amps[x]) * (1 - 2 * cut);
        }
        out.push_back(s);
    }
    return out;
}

std::vector<GateEdge> objective_edges(const CircuitSpec& spec) {
    std::vector<GateEdge> edges;
    for (const auto& e : spec.gate_edges())
        if (e.objective) edges.push_back(e);
    return edges;
}

}  // namespace

StateVector run_circuit(const CircuitSpec& spec, std::span<const double> params) {
    if (static_cast<int>(params.size()) != spec.num_params())
        throw std::invalid_argument("run_circuit: parameter layout mismatch");
    StateVector psi = StateVector::plus_state(spec.qubits());
    std::vector<double> scratch(psi.dim());
    for (int layer = 0; layer < spec.layers(); ++layer) {
        apply_phase_layer(psi, spec, layer, params, +1.0, scratch);
        apply_mixer_layer(psi, spec, layer, params, +1.0);
    }
    return psi;
}

std::vector<double> zz_expectations(const StateVector& psi,
                                    const CircuitSpec& spec) {
    return zz_impl(psi, objective_edges(spec), true);
}

std::vector<double> zz_expectations_serial(const StateVector& psi,
                                           const CircuitSpec& spec) {
    return zz_impl(psi, objective_edges(spec), false);
}

std::vector<double> zz_expectations(const StateVector& psi, const Graph& g) {
    std::vector<GateEdge> edges;
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w, true});
    return zz_impl(psi, edges, true);
}

std::vector<CutMask> sample_bitstrings(const StateVector& psi,
                                       const CircuitSpec& spec, int shots,
                                       std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_bitstrings: shots >= 1");
    const std::size_t dim = psi.dim();
    std::vector<double> cdf(dim);
    double acc = 0.0;
    const auto* amps = psi.data();
    for (std::size_t x = 0; x < dim; ++x) {
        acc += std::norm(amps[x]);
        cdf[x] = acc;
    }
    const CutMask keep =
        spec.base_graph().num_vertices() >= 32
            ? ~0u
            : ((1u << spec.base_graph().num_vertices()) - 1u);
    std::vector<CutMask> out(shots);
#pragma omp parallel for schedule(static) if (shots > 4096)
    for (int s = 0; s < shots; ++s) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(s)));
        const double u = rng.uniform() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t x = it == cdf.end() ? dim - 1
                                              : static_cast<std::size_t>(
                                                    it - cdf.begin());
        out[s] = static_cast<CutMask>(x) & keep;  // ancillas traced out
    }
    return out;
}

std::vector<double> gradient_reverse(const CircuitSpec& spec,
                                     std::span<const double> params,
                                     std::span<const double> edge_weights) {
    const auto obj_edges = objective_edges(spec);
    if (edge_weights.size() != obj_edges.size())
        throw std::invalid_argument("gradient_reverse: edge weight size mismatch");
    if (static_cast<int>(params.size()) != spec.num_params())
        throw std::invalid_argument("gradient_reverse: parameter layout mismatch");

    StateVector psi = run_circuit(spec, params);
    const std::int64_t dim = static_cast<std::int64_t>(psi.dim());

    // lambda = O psi with the diagonal observable O = sum_e w~_e Z_u Z_v
    StateVector lam = psi;
    {
        std::vector<double> diag(dim, 0.0);
        for (std::size_t e = 0; e < obj_edges.size(); ++e) {
            const double w = edge_weights[e];
            if (w == 0.0) continue;
            const int u = obj_edges[e].u;
            const int v = obj_edges[e].v;
#pragma omp parallel for schedule(static) if (dim >= kParallelDim)
            for (std::int64_t x = 0; x < dim; ++x) {
                const int cut = static_cast<int>(((x >> u) ^ (x >> v)) & 1);
                diag[x] += w * (1 - 2 * cut);
            }
        }
        auto* lamp = lam.data();
#pragma omp parallel for schedule(static) if (dim >= kParallelDim)
        for (std::int64_t x = 0; x < dim; ++x) lamp[x] *= diag[x];
    }

    std::vector<double> grad(spec.num_params(), 0.0);
    std::vector<double> scratch(psi.dim());
    const auto& gate_edges = spec.gate_edges();

    // Layer generators commute within a pass (diagonal ZZ terms; X terms on
    // distinct qubits), so each pass contributes per-slot inner products
    // evaluated after the full pass.
    for (int layer = spec.layers() - 1; layer >= 0; --layer) {
        // mixer slots: d<O>/dbeta_v = 2 Im <lam| X_v |psi>
        for (int v = spec.qubits() - 1; v >= 0; --v) {
            const std::int64_t bit = std::int64_t(1) << v;
            double im = 0.0;
            const auto* lamp = lam.data();
            const auto* pamp = psi.data();
#pragma omp parallel for schedule(static) reduction(+ : im) \
    if (dim >= kParallelDim)
            for (std::int64_t x = 0; x < dim; ++x)
                im += std::imag(std::conj(lamp[x]) * pamp[x ^ bit]);
            grad[spec.beta_slot(layer, v)] += 2.0 * im;
        }
        apply_mixer_layer(psi, spec, layer, params, -1.0);
        apply_mixer_layer(lam, spec, layer, params, -1.0);

        // phase slots: d<O>/dgamma_e = -2 w_e Im <lam| Z_u Z_v |psi>
        {
            const auto* lamp = lam.data();
            const auto* pamp = psi.data();
            for (std::size_t e = 0; e < gate_edges.size(); ++e) {
                const int u = gate_edges[e].u;
                const int v = gate_edges[e].v;
                double im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : im) \
    if (dim >= kParallelDim)
                for (std::int64_t x = 0; x < dim; ++x) {
                    const int cut = static_cast<int>(((x >> u) ^ (x >> v)) & 1);
                    im += (1 - 2 * cut) *
                          std::imag(std::conj(lamp[x]) * pamp[x]);
                }
                grad[spec.gamma_slot(layer, static_cast<int>(e))] +=
                    -2.0 * gate_edges[e].w * im;
            }
        }
        apply_phase_layer(psi, spec, layer, params, -1.0, scratch);
        apply_phase_layer(lam, spec, layer, params, -1.0, scratch);
    }
    return grad;
}

double closed_form_k1_kn(int n, double gamma, double beta) {
    if (n < 2) throw std::invalid_argument("closed_form_k1_kn: n >= 2");
    const int d = n - 2;
    const double g = 2.0 * gamma;  // simulator phase angle -> formula angle
    return -std::sin(4.0 * beta) * std::sin(g) * std::pow(std::cos(g), d) +
           0.5 * std::pow(std::sin(2.0 * beta), 2) *
               (1.0 - std::pow(std::cos(2.0 * g), d));
}

namespace {

// f(gamma) = (1/8)(sqrt(A^2 + B) - A) with A = 1 - cos(2 gamma)^d,
// B = 16 sin^2(gamma) cos^{2d}(gamma): the beta-optimized k=1 K_n objective
double kn_beta_opt(int n, double gamma) {
    const int d = n - 2;
    const double a = 1.0 - std::pow(std::cos(2.0 * gamma), d);
    const double b = 16.0 * std::pow(std::sin(gamma), 2) *
                     std::pow(std::cos(gamma), 2 * d);
    return 0.125 * (std::sqrt(a * a + b) - a);
}

}  // namespace

double closed_form_k1_kn_opt(int n) {
    if (n < 2) throw std::invalid_argument("closed_form_k1_kn_opt: n >= 2");
    if (n == 2) return 1.0;  // single edge is always cuttable
    constexpr int kGrid = 100000;
    double best = 0.0, best_g = 0.0;
    for (int i = 1; i < kGrid; ++i) {
        const double g = 0.5 * M_PI * i / kGrid;
        const double f = kn_beta_opt(n, g);
        if (f > best) {
            best = f;
            best_g = g;
        }
    }
    // golden-section refinement around the best grid cell
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_g - 0.5 * M_PI / kGrid;
    double hi = best_g + 0.5 * M_PI / kGrid;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = kn_beta_opt(n, x1), f2 = kn_beta_opt(n, x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = kn_beta_opt(n, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = kn_beta_opt(n, x1);
        }
    }
    return 0.5 + std::max(f1, f2);
}

double closed_form_k1_triangle_free_regular(int delta, double gamma,
                                            double beta) {
    if (delta < 1)
        throw std::invalid_argument("closed_form_k1_triangle_free_regular: delta >= 1");
    const double g = 2.0 * gamma;
    return 0.5 + 0.5 * std::sin(4.0 * beta) * std::sin(g) *
                     std::pow(std::cos(g), delta - 1);
}

double closed_form_k1_triangle_free_regular_opt(int delta) {
    if (delta < 1)
        throw std::invalid_argument("closed_form_k1_triangle_free_regular_opt: delta >= 1");
    // max over theta of sin(theta) cos^{delta-1}(theta)
    const double s = 1.0 / std::sqrt(static_cast<double>(delta));
    const double c = std::sqrt((delta - 1.0) / delta);
    return 0.5 + 0.5 * s * std::pow(c, delta - 1);
}

}  // namespace faircut
