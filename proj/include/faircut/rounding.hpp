#pragma once

#include <cstdint>
#include <vector>

#include "faircut/cuts.hpp"
#include "faircut/sdp.hpp"

namespace faircut {

struct RoundingRun {
    int n_samples = 0;
    std::uint64_t seed = 0;
    CutDistribution empirical;
    std::vector<double> edge_frequencies;  // aligned with Graph::edges()
};

// Gaussian hyperplane rounding: per sample draw g ~ N(0, I_rank) from the
// sample's own RNG substream and cut by the sign of <g, v_i>; exact zero
// inner products resolve to +1. Substreams make the result independent of
// the thread count.
RoundingRun round_hyperplane(const Embedding& emb, const Graph& g, int samples,
                             std::uint64_t seed);
RoundingRun round_hyperplane_serial(const Embedding& emb, const Graph& g,
                                    int samples, std::uint64_t seed);

// arccos(<v_u, v_v>)/pi, clamped within 1e-12 of [-1, 1]
double rounding_probability_exact(const Embedding& emb, const Edge& e);

struct HrGapReport {
    int n = 0;
    double optimum = 0.0;     // eta_bar(K_n) closed form
    double hr_ceiling = 0.0;  // arccos(1/(1-n))/pi
    double gap = 0.0;
};

// K_n optimum vs the hyperplane-rounding ceiling; strict for n >= 4.
HrGapReport demonstrate_hr_gap(int n);

}  // namespace faircut
