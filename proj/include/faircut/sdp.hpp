#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faircut/graph.hpp"

namespace faircut {

// One unit vector per vertex; the SDP variable C is the Gram matrix of the
// rows, so C >= 0 with unit diagonal holds by construction.
class Embedding {
public:
    Embedding(int n, int rank);
    static Embedding random_unit(int n, int rank, std::uint64_t seed);

    int num_vectors() const { return n_; }
    int rank() const { return rank_; }
    std::span<double> row(int i) { return {data_.data() + static_cast<std::size_t>(i) * rank_, static_cast<std::size_t>(rank_)}; }
    std::span<const double> row(int i) const { return {data_.data() + static_cast<std::size_t>(i) * rank_, static_cast<std::size_t>(rank_)}; }
    double inner(int i, int j) const;
    double row_norm(int i) const;
    void normalize_rows();

private:
    int n_ = 0;
    int rank_ = 0;
    std::vector<double> data_;  // row-major
};

struct SdpReport {
    double t_objective = 0.0;  // min_e (w_e/2)(1 - <v_u, v_v>)
    double hr_value = 0.0;     // min_e arccos(<v_u, v_v>)/pi
    Embedding embedding{1, 1};
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
    double edge_gap = 0.0;     // |min edge - second min|, diagnostic
    double min_inner = 0.0;    // largest Gram entry over edges (binding edge)
};

struct SdpOptions {
    int rank = -1;             // -1: full rank n
    double tol = 1e-7;
    int restarts = 8;
    std::uint64_t seed = 0;
    double tau_start = 0.1;
    double tau_min = 1e-4;
    double tau_shrink = 0.5;
    int steps_per_tau = 500;
    double step_size = 0.05;
};

// LSE-smoothed gradient ascent of min_e (w_e/2)(1 - <v_u, v_v>) over unit
// vectors, with tangent-space projection, backtracking halving steps and
// temperature annealing. Best of `restarts` seeded runs.
SdpReport solve_sdp(const Graph& g, const SdpOptions& options = {});

struct AnalyticSdp {
    double inner_product = 0.0;  // optimal minimum Gram entry, -1/(theta-1)
    double hr_value = 0.0;       // arccos of it over pi
};

// Closed forms via the Lovasz number of the complement graph; supports
// Complete, Cycle, Kneser (and Petersen as Kneser(5,2)).
AnalyticSdp sdp_value_analytic(const GraphFamily& family);

double hr_value_from_embedding(const Embedding& emb, const Graph& g);

struct CliqueBoundsResult {
    double upper = 0.0;  // arccos(1/(1-omega))/pi
    double lower = 0.0;  // arccos(1/(1-n))/pi
    int omega = 0;
};

CliqueBoundsResult clique_bounds(const Graph& g);

}  // namespace faircut
