#pragma once

#include <cstdint>
#include <vector>

#include "faircut/cuts.hpp"
#include "faircut/graph.hpp"

namespace faircut {

enum class LpMethod { PrimalEnumeration, DualCuttingPlane };

struct LpReport {
    double value = 0.0;                 // eta_bar(G)
    CutDistribution witness;            // optimal cut distribution
    std::vector<double> dual_weights;   // optimal edge weights q*, simplex
    int iterations = 0;
    LpMethod method = LpMethod::PrimalEnumeration;
};

// Exact fair cut cover value by pricing over every enumerated Z2 cut class.
// Requires n <= 17 (at most 2^16 classes).
LpReport solve_primal_enumeration(const Graph& g);

// Same value via the dual minimax form min_q max_x sum_e Y_ex q_e, growing
// the cut set with the weighted-MaxCut separation oracle until the oracle
// value is within tol of the incumbent. Requires n <= 30.
LpReport solve_dual_cutting_plane(const Graph& g, double tol = 1e-8,
                                  std::uint64_t seed = 1);

struct DualityReport {
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
    bool ok = false;
    // support cuts of the primal witness that miss the weighted MaxCut
    // optimum under q*
    std::vector<CutMask> offending_cuts;
    double max_slackness_violation = 0.0;
};

DualityReport verify_duality(const Graph& g, double tol = 1e-7);

// eta_bar(G) <= MaxCut(G) / total edge weight; equality on edge-transitive
// graphs.
double fair_value_upper_bound_maxcut(const Graph& g);

}  // namespace faircut
