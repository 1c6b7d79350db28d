#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "faircut/cuts.hpp"
#include "faircut/graph.hpp"

namespace faircut {

enum class AnsatzMode { Standard, MultiAngle };

struct GateEdge {
    int u = 0;
    int v = 0;
    double w = 1.0;
    bool objective = true;  // false for ancilla couplings
};

/*
 * Layered ansatz plan. Each layer applies the fused ZZ phase pass
 * U_C = prod_e exp(+i gamma_e w_e Z_u Z_v) over the gate edges, then the
 * mixer U_M = prod_v exp(-i beta_v X_v) over all qubits. Standard mode
 * shares one gamma and one beta slot per layer; MultiAngle gives every gate
 * edge and every qubit its own slot. Ancillas occupy the highest qubit
 * indices and never appear in objective edges.
 */
class CircuitSpec {
public:
    const Graph& base_graph() const { return base_; }
    int qubits() const { return qubits_; }
    int num_ancillas() const { return qubits_ - base_.num_vertices(); }
    int layers() const { return layers_; }
    AnsatzMode mode() const { return mode_; }
    const std::vector<GateEdge>& gate_edges() const { return gate_edges_; }

    int params_per_layer() const {
        return mode_ == AnsatzMode::Standard
                   ? 2
                   : static_cast<int>(gate_edges_.size()) + qubits_;
    }
    int num_params() const { return layers_ * params_per_layer(); }
    int gamma_slot(int layer, int gate_edge_index) const {
        return mode_ == AnsatzMode::Standard
                   ? 2 * layer
                   : layer * params_per_layer() + gate_edge_index;
    }
    int beta_slot(int layer, int qubit) const {
        return mode_ == AnsatzMode::Standard
                   ? 2 * layer + 1
                   : layer * params_per_layer() +
                         static_cast<int>(gate_edges_.size()) + qubit;
    }

    Graph augmented_graph() const;  // gate edges as a plain graph

    friend CircuitSpec build_dqaoa_spec(const Graph& g, int layers,
                                        AnsatzMode mode);

private:
    Graph base_;
    std::vector<GateEdge> gate_edges_;  // base edges first, base order
    int qubits_ = 0;
    int layers_ = 1;
    AnsatzMode mode_ = AnsatzMode::Standard;
};

// Definition-driven augmentation: ancilla A for disconnected inputs or
// paths/cycles with >= 4 vertices (coupled to one maximal-degree vertex per
// component, lowest index on ties), plus ancilla B chained to A when the
// input is disconnected with <= 4 vertices.
CircuitSpec build_dqaoa_spec(const Graph& g, int layers, AnsatzMode mode);

class StateVector {
public:
    explicit StateVector(int qubits);
    static StateVector plus_state(int qubits);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::complex<double>* data() { return amps_.data(); }
    const std::complex<double>* data() const { return amps_.data(); }
    double norm() const;

    static constexpr int kDefaultQubitBudget = 22;

private:
    int qubits_ = 0;
    std::vector<std::complex<double>> amps_;
};

int qubit_budget();  // kDefaultQubitBudget, overridable via FAIRCUT_BUDGET_QUBITS

StateVector run_circuit(const CircuitSpec& spec, std::span<const double> params);

// exact <Z_u Z_v> per objective edge (ancillas act trivially)
std::vector<double> zz_expectations(const StateVector& psi, const CircuitSpec& spec);
std::vector<double> zz_expectations_serial(const StateVector& psi,
                                           const CircuitSpec& spec);
// same, for a plain graph on all qubits of psi
std::vector<double> zz_expectations(const StateVector& psi, const Graph& g);

// i.i.d. samples from |amplitudes|^2; ancilla bits are dropped
std::vector<CutMask> sample_bitstrings(const StateVector& psi,
                                       const CircuitSpec& spec, int shots,
                                       std::uint64_t seed);

// Exact adjoint-mode gradient of sum_e weight_e <Z_u Z_v> over the objective
// edges, one forward pass plus one reverse sweep.
std::vector<double> gradient_reverse(const CircuitSpec& spec,
                                     std::span<const double> params,
                                     std::span<const double> edge_weights);

// k=1 closed forms, in the simulator's angle convention (the underlying
// K_n formula takes the phase angle doubled).
double closed_form_k1_kn(int n, double gamma, double beta);
double closed_form_k1_kn_opt(int n);  // Q1_std(K_n), grid + golden section
double closed_form_k1_triangle_free_regular(int delta, double gamma, double beta);
double closed_form_k1_triangle_free_regular_opt(int delta);

}  // namespace faircut
