#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faircut/cuts.hpp"
#include "faircut/graph.hpp"
#include "faircut/trainer.hpp"

namespace faircut {

// Hoeffding budget: ceil((1/(2 eps^2)) ln(2|E|/delta))
long long shots_absolute(double eps, double delta, int n_edges);

// multiplicative Chernoff budget: ceil(3/(eps^2 p_min) ln(2|E|/delta))
long long shots_relative(double eps, double delta, int n_edges, double p_min);

// min over edges of the empirical cut frequency
double empirical_fair_value(std::span<const CutMask> samples, const Graph& g);

double approximation_ratio(double value, double eta_bar);
double approximation_ratio(double value, const Graph& g);  // solves eta_bar

struct VarianceStudyRow {
    int n = 0;
    int instance = 0;
    int edges = 0;
    int qubits = 0;
    double var_lse = 0.0;
    double se_lse = 0.0;
    double bound_lse = 0.0;  // d^2 |E| / ((d^2 - 4)(d + 2)), d = 2^qubits
    double var_min = 0.0;
    double se_min = 0.0;
    double bound_min = 0.0;  // d^2 / ((d^2 - 4)(d + 2))
};

struct VarianceStudy {
    std::vector<int> sizes;
    int layers = 0;
    int instances = 0;
    int points = 0;
    double tau = 0.05;
    // variance of the partial derivative at the first gamma slot of the
    // middle layer, across uniform parameter points in (0, 2pi)
    std::vector<VarianceStudyRow> rows;
};

VarianceStudy variance_study(std::span<const int> sizes, int layers,
                             int n_instances, int n_points, std::uint64_t seed);

struct KnSeparationRow {
    int n = 0;
    double eta_bar = 0.0;
    double sdp_hr = 0.0;
    double q1_std = 0.0;
};

// closed-form eta_bar(K_n): n/(2(n-1)) even, (n+1)/(2n) odd
double eta_bar_complete(int n);

// rows n = 3..n_max; Q1 > SDP_HR for n >= 4 and equality at n = 3
std::vector<KnSeparationRow> kn_separation_sweep(int n_max);

struct FitReport {
    double tv = 0.0;
    std::vector<double> params;
    int iterations = 0;
    std::vector<double> trajectory;  // best TV per iteration
};

// Trains a multi-angle circuit to match a Z2-symmetric target distribution
// in exact total variation (finite-difference Adam). The target may be given
// either with explicitly symmetric support or as a canonical class
// histogram (all masks with bit 0 clear).
FitReport fit_target_distribution(const Graph& g, const CutDistribution& target,
                                  int layers, const TrainConfig& cfg,
                                  std::uint64_t seed);

}  // namespace faircut
