#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "faircut/qsim.hpp"

namespace faircut {

struct Objective {
    enum class Kind { Min, LogSumExp };
    Kind kind = Kind::Min;
    double tau = 0.05;
    bool anneal = false;
    double anneal_factor = 0.5;
    int anneal_every = 200;
    double tau_min = 1e-3;

    static Objective min_objective() { return {}; }
    static Objective lse(double tau_value, bool anneal_tau = false) {
        Objective o;
        o.kind = Kind::LogSumExp;
        o.tau = tau_value;
        o.anneal = anneal_tau;
        return o;
    }
};

struct TrainConfig {
    double step_size = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.99;
    double eps_adam = 1e-8;
    int max_iters = 1000;
    int patience = 30;
    double improvement_floor = 1e-4;
    double init_lo = 0.0;
    double init_hi = 0.05;
    int n_seeds = 10;
};

struct Evaluation {
    double value = 0.0;      // objective value (min edge prob, or its LSE)
    double min_value = 0.0;  // hard min edge cut probability
    std::vector<double> edge_probs;
    std::vector<double> weights;  // detached chain weights (one-hot / softmax)
};

Evaluation evaluate_objective(const CircuitSpec& spec,
                              std::span<const double> params,
                              const Objective& objective);

struct TrainResult {
    std::vector<double> best_params;
    double best_value = 0.0;  // hard Min objective at best_params
    std::vector<double> trajectory;            // running min value per iter
    std::vector<double> objective_trajectory;  // training objective per iter
    std::uint64_t seed = 0;
    int iterations = 0;
    std::string converged_reason;
};

// Adam ascent with the spec'd stopping rule; the reported value is always
// the hard Min objective at the best-seen parameters. `init_params`
// overrides the small-angle initialization (warm starts).
TrainResult train(const CircuitSpec& spec, const Objective& objective,
                  const TrainConfig& cfg, std::uint64_t seed,
                  std::span<const double> init_params = {});

// cfg.n_seeds independent runs from substreams of `seed`, best kept
TrainResult train_best_of_seeds(const CircuitSpec& spec,
                                const Objective& objective,
                                const TrainConfig& cfg, std::uint64_t seed);

// Dense (gamma, beta) grid for the 2-parameter k=1 standard ansatz, followed
// by Adam refinement from the best 5 cells.
TrainResult grid_optimize_k1_std(const Graph& g, int resolution);

enum class InitStrategy { MinSmallAngle, LseSmallAngle, LseUniformRandom };

std::string to_string(InitStrategy s);

struct StrategyOutcome {
    InitStrategy strategy;
    double best_value = 0.0;
    std::vector<double> per_seed_values;
};

// runs every strategy over cfg.n_seeds seeds; result sorted best-first
std::vector<StrategyOutcome> compare_init_strategies(
    const CircuitSpec& spec, const TrainConfig& cfg,
    const std::vector<InitStrategy>& strategies, std::uint64_t seed);

}  // namespace faircut
