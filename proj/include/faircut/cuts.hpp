#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "faircut/graph.hpp"

namespace faircut {

// A cut is a spin assignment stored as a bitmask: bit u set means x_u = -1.
using CutMask = std::uint32_t;

inline CutMask flip_cut(CutMask m, int n) {
    return ~m & (n >= 32 ? ~0u : ((1u << n) - 1u));
}

// Representative of the {x, -x} class: bit 0 clear.
inline CutMask canonical_cut(CutMask m, int n) {
    return (m & 1u) ? flip_cut(m, n) : m;
}

inline int edge_cut_indicator(CutMask m, int u, int v) {
    return static_cast<int>(((m >> u) ^ (m >> v)) & 1u);
}

inline int edge_cut_indicator(CutMask m, const Edge& e) {
    return edge_cut_indicator(m, e.u, e.v);
}

/*
 * Normalized weighting over cuts with sparse support. Masks are stored as
 * given (constructors do not canonicalize), so explicitly Z2-symmetric
 * supports are representable; class-level views canonicalize on the fly.
 */
class CutDistribution {
public:
    CutDistribution(int n_vertices,
                    std::vector<std::pair<CutMask, double>> support);

    static CutDistribution point_mass(CutMask cut, int n_vertices);

    int num_vertices() const { return n_; }
    const std::vector<std::pair<CutMask, double>>& support() const {
        return support_;
    }

    double probability(CutMask cut) const;        // exact mask
    double class_probability(CutMask cut) const;  // mass of the {x, -x} class

    // Z2-class histogram, canonical masks, ascending
    std::vector<std::pair<CutMask, double>> classes() const;

    bool z2_symmetric(double tol = 1e-12) const;

    static constexpr double kSumTolerance = 1e-9;

private:
    int n_ = 0;
    std::vector<std::pair<CutMask, double>> support_;  // sorted by mask
};

struct EdgeCutProbs {
    std::vector<double> probs;  // aligned with Graph::edges()
    double min_value = 0.0;     // the fair cut cover value of p
    int argmin = -1;
};

EdgeCutProbs edge_cut_probabilities(const CutDistribution& p, const Graph& g);

// p(x) = p(-x) = (q(x) + q(-x)) / 2; leaves all edge cut probabilities
// unchanged.
CutDistribution symmetrize_z2(const CutDistribution& q);

// Uniform distribution over the cuts of all k-subsets of [n]; every edge of
// K_n is cut with probability 2k(n-k)/(n(n-1)).
CutDistribution k_subset_distribution(int n, int k);

CutDistribution empirical_distribution(std::span<const CutMask> samples,
                                       int n_vertices);

// (1/2) sum |p - q| over Z2 classes
double total_variation(const CutDistribution& p, const CutDistribution& q);

std::vector<CutMask> sample_cuts(const CutDistribution& p, int count,
                                 std::uint64_t seed);

}  // namespace faircut
