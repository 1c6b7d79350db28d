#include "faircut/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "faircut/rng.hpp"

namespace faircut {

Evaluation evaluate_objective(const CircuitSpec& spec,
                              std::span<const double> params,
                              const Objective& objective) {
    if (objective.kind == Objective::Kind::LogSumExp && objective.tau <= 0.0)
        throw std::invalid_argument("evaluate_objective: tau must be positive");

    const StateVector psi = run_circuit(spec, params);
    const std::vector<double> zz = zz_expectations(psi, spec);

    Evaluation out;
    out.edge_probs.resize(zz.size());
    for (std::size_t e = 0; e < zz.size(); ++e)
        out.edge_probs[e] = 0.5 * (1.0 - zz[e]);

    const auto min_it =
        std::min_element(out.edge_probs.begin(), out.edge_probs.end());
    out.min_value = *min_it;
    out.weights.assign(zz.size(), 0.0);

    if (objective.kind == Objective::Kind::Min) {
        out.value = out.min_value;
        out.weights[min_it - out.edge_probs.begin()] = 1.0;  // lowest index tie
    } else {
        const double tau = objective.tau;
        double zsum = 0.0;
        for (std::size_t e = 0; e < zz.size(); ++e) {
            out.weights[e] = std::exp((out.min_value - out.edge_probs[e]) / tau);
            zsum += out.weights[e];
        }
        out.value = out.min_value - tau * std::log(zsum);
        for (double& w : out.weights) w /= zsum;
    }
    return out;
}

TrainResult train(const CircuitSpec& spec, const Objective& objective,
                  const TrainConfig& cfg, std::uint64_t seed,
                  std::span<const double> init_params) {
    const int np = spec.num_params();
    std::vector<double> params(np);
    if (!init_params.empty()) {
        if (static_cast<int>(init_params.size()) != np)
            throw std::invalid_argument("train: warm start size mismatch");
        std::copy(init_params.begin(), init_params.end(), params.begin());
    } else {
        Rng rng(seed);
        for (double& p : params) p = rng.uniform(cfg.init_lo, cfg.init_hi);
    }

    Objective obj = objective;
    TrainResult result;
    result.seed = seed;

    Evaluation eval = evaluate_objective(spec, params, obj);
    result.best_params = params;
    result.best_value = eval.min_value;

    std::vector<double> m(np, 0.0), v(np, 0.0);
    std::vector<double> best_hist;

    int iter = 0;
    result.converged_reason = "max_iters";
    while (iter < cfg.max_iters) {
        ++iter;
        const std::vector<double> grad_zz =
            gradient_reverse(spec, params, eval.weights);
        std::vector<double> grad(np);
        bool finite = true;
        for (int j = 0; j < np; ++j) {
            grad[j] = -0.5 * grad_zz[j];  // d p_e / d theta = -0.5 d<ZZ>/d theta
            finite = finite && std::isfinite(grad[j]);
        }
        if (!finite)
            throw std::runtime_error("train: NaN gradient at iteration " +
                                     std::to_string(iter) + ", seed " +
                                     std::to_string(seed));

        const double bc1 = 1.0 - std::pow(cfg.beta1, iter);
        const double bc2 = 1.0 - std::pow(cfg.beta2, iter);
        for (int j = 0; j < np; ++j) {
            m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * grad[j];
            v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * grad[j] * grad[j];
            params[j] += cfg.step_size * (m[j] / bc1) /
                         (std::sqrt(v[j] / bc2) + cfg.eps_adam);
        }

        if (obj.anneal && iter % obj.anneal_every == 0)
            obj.tau = std::max(obj.tau * obj.anneal_factor, obj.tau_min);

        eval = evaluate_objective(spec, params, obj);
        if (eval.min_value > result.best_value) {
            result.best_value = eval.min_value;
            result.best_params = params;
        }
        result.trajectory.push_back(result.best_value);
        result.objective_trajectory.push_back(eval.value);

        best_hist.push_back(result.best_value);
        const int i = static_cast<int>(best_hist.size());
        if (i > cfg.patience &&
            best_hist[i - 1] - best_hist[i - 1 - cfg.patience] <
                cfg.improvement_floor) {
            result.converged_reason = "patience";
            break;
        }
    }
    result.iterations = iter;

    // reported value re-derives from the kept parameters
    const Evaluation check =
        evaluate_objective(spec, result.best_params, Objective::min_objective());
    result.best_value = check.min_value;
    return result;
}

TrainResult train_best_of_seeds(const CircuitSpec& spec,
                                const Objective& objective,
                                const TrainConfig& cfg, std::uint64_t seed) {
    if (cfg.n_seeds < 1)
        throw std::invalid_argument("train_best_of_seeds: need at least one seed");
    std::vector<TrainResult> results(cfg.n_seeds);
#pragma omp parallel for schedule(dynamic) if (cfg.n_seeds > 1)
    for (int s = 0; s < cfg.n_seeds; ++s)
        results[s] = train(spec, objective, cfg, substream(seed, s));
    int best = 0;
    for (int s = 1; s < cfg.n_seeds; ++s)
        if (results[s].best_value > results[best].best_value) best = s;
    return results[best];
}

namespace {

// Per-edge coefficients of the exact k=1 beta dependence
//   <Z_u Z_v>(gamma, beta) = 0.5 sin(4 beta) S_e(gamma) + sin^2(2 beta) T_e(gamma)
// with S = <ZY + YZ> and T = <YY> on the phase-only state (the Z-parity
// expectation of that state vanishes, so there is no constant term).
struct K1Row {
    std::vector<double> s;
    std::vector<double> t;
};

K1Row k1_row_coefficients(const CircuitSpec& spec, double gamma) {
    const int nq = spec.qubits();
    StateVector psi = StateVector::plus_state(nq);
    {
        auto* amps = psi.data();
        const std::int64_t dim = static_cast<std::int64_t>(psi.dim());
        std::vector<double> acc(dim, 0.0);
        for (const auto& e : spec.gate_edges()) {
            const double a = gamma * e.w;
            for (std::int64_t x = 0; x < dim; ++x) {
                const int cut = static_cast<int>(((x >> e.u) ^ (x >> e.v)) & 1);
                acc[x] += a * (1 - 2 * cut);
            }
        }
        for (std::int64_t x = 0; x < dim; ++x)
            amps[x] *= std::polar(1.0, acc[x]);
    }

    const std::int64_t dim = static_cast<std::int64_t>(psi.dim());
    const auto* amps = psi.data();
    auto yphase = [](std::int64_t x, int q) {
        return ((x >> q) & 1) ? std::complex<double>{0.0, -1.0}
                              : std::complex<double>{0.0, 1.0};
    };

    K1Row row;
    for (const auto& e : spec.gate_edges()) {
        if (!e.objective) continue;
        const std::int64_t bu = std::int64_t(1) << e.u;
        const std::int64_t bv = std::int64_t(1) << e.v;
        std::complex<double> yy = 0.0, zy = 0.0, yz = 0.0;
        for (std::int64_t x = 0; x < dim; ++x) {
            const std::complex<double> cx = std::conj(amps[x]);
            {
                const std::int64_t y = x ^ bu ^ bv;
                yy += cx * yphase(y, e.u) * yphase(y, e.v) * amps[y];
            }
            {
                const std::int64_t y = x ^ bv;
                const double su = ((x >> e.u) & 1) ? -1.0 : 1.0;
                zy += cx * su * yphase(y, e.v) * amps[y];
            }
            {
                const std::int64_t y = x ^ bu;
                const double sv = ((x >> e.v) & 1) ? -1.0 : 1.0;
                yz += cx * yphase(y, e.u) * sv * amps[y];
            }
        }
        row.s.push_back((zy + yz).real());
        row.t.push_back(yy.real());
    }
    return row;
}

}  // namespace

TrainResult grid_optimize_k1_std(const Graph& g, int resolution) {
    if (resolution < 2)
        throw std::invalid_argument("grid_optimize_k1_std: resolution >= 2");
    const CircuitSpec spec = build_dqaoa_spec(g, 1, AnsatzMode::Standard);

    struct Cell {
        double value;
        double gamma;
        double beta;
    };
    std::vector<Cell> top;
    auto offer = [&top](const Cell& c) {
        top.push_back(c);
        std::sort(top.begin(), top.end(),
                  [](const Cell& a, const Cell& b) { return a.value > b.value; });
        if (top.size() > 5) top.pop_back();
    };

    std::vector<K1Row> rows(resolution);
#pragma omp parallel for schedule(dynamic)
    for (int gi = 0; gi < resolution; ++gi)
        rows[gi] = k1_row_coefficients(spec, 2.0 * M_PI * gi / resolution);

    for (int gi = 0; gi < resolution; ++gi) {
        const double gamma = 2.0 * M_PI * gi / resolution;
        const K1Row& row = rows[gi];
        for (int bi = 0; bi < resolution; ++bi) {
            const double beta = 2.0 * M_PI * bi / resolution;
            const double s4 = 0.5 * std::sin(4.0 * beta);
            const double s2 = std::pow(std::sin(2.0 * beta), 2);
            double value = 1.0;
            for (std::size_t e = 0; e < row.s.size(); ++e) {
                const double zz = s4 * row.s[e] + s2 * row.t[e];
                value = std::min(value, 0.5 * (1.0 - zz));
            }
            offer({value, gamma, beta});
        }
    }

    // local Adam polish from the best cells, on the hard Min objective
    TrainConfig refine;
    refine.step_size = 0.002;
    refine.max_iters = 400;
    refine.patience = 60;
    refine.improvement_floor = 1e-10;

    TrainResult best;
    best.best_value = -1.0;
    for (const Cell& cell : top) {
        const double init[2] = {cell.gamma, cell.beta};
        TrainResult r = train(spec, Objective::min_objective(), refine,
                              /*seed=*/0, init);
        if (r.best_value > best.best_value) best = std::move(r);
    }
    best.converged_reason = "grid+refine";
    return best;
}

std::string to_string(InitStrategy s) {
    switch (s) {
        case InitStrategy::MinSmallAngle: return "min-small-angle";
        case InitStrategy::LseSmallAngle: return "lse-small-angle";
        case InitStrategy::LseUniformRandom: return "lse-uniform-random";
    }
    return "?";
}

std::vector<StrategyOutcome> compare_init_strategies(
    const CircuitSpec& spec, const TrainConfig& cfg,
    const std::vector<InitStrategy>& strategies, std::uint64_t seed) {
    if (strategies.size() < 2)
        throw std::invalid_argument("compare_init_strategies: need >= 2 strategies");
    if (cfg.n_seeds < 1)
        throw std::invalid_argument("compare_init_strategies: need >= 1 seeds");

    std::vector<StrategyOutcome> outcomes;
    for (std::size_t si = 0; si < strategies.size(); ++si) {
        const InitStrategy strategy = strategies[si];
        TrainConfig local = cfg;
        Objective obj = strategy == InitStrategy::MinSmallAngle
                            ? Objective::min_objective()
                            : Objective::lse(0.05);
        if (strategy == InitStrategy::LseUniformRandom) {
            local.init_lo = 0.0;
            local.init_hi = 2.0 * M_PI;
        }
        StrategyOutcome outcome;
        outcome.strategy = strategy;
        outcome.best_value = -1.0;
        for (int s = 0; s < cfg.n_seeds; ++s) {
            const TrainResult r =
                train(spec, obj, local, substream(substream(seed, si), s));
            outcome.per_seed_values.push_back(r.best_value);
            outcome.best_value = std::max(outcome.best_value, r.best_value);
        }
        outcomes.push_back(std::move(outcome));
    }
    std::sort(outcomes.begin(), outcomes.end(),
              [](const StrategyOutcome& a, const StrategyOutcome& b) {
                  return a.best_value > b.best_value;
              });
    return outcomes;
}

}  // namespace faircut
