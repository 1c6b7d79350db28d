#include "faircut/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "faircut/exact.hpp"
#include "faircut/rng.hpp"

namespace faircut {

long long shots_absolute(double eps, double delta, int n_edges) {
    if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("shots_absolute: eps, delta in (0, 1)");
    if (n_edges < 1) throw std::invalid_argument("shots_absolute: edges >= 1");
    const double t = std::log(2.0 * n_edges / delta) / (2.0 * eps * eps);
    return static_cast<long long>(std::ceil(t));
}

long long shots_relative(double eps, double delta, int n_edges, double p_min) {
    if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("shots_relative: eps, delta in (0, 1)");
    if (n_edges < 1) throw std::invalid_argument("shots_relative: edges >= 1");
    if (p_min <= 0.0 || p_min > 1.0)
        throw std::invalid_argument("shots_relative: p_min in (0, 1]");
    const double t = 3.0 * std::log(2.0 * n_edges / delta) / (eps * eps * p_min);
    return static_cast<long long>(std::ceil(t));
}

double empirical_fair_value(std::span<const CutMask> samples, const Graph& g) {
    if (samples.empty())
        throw std::invalid_argument("empirical_fair_value: no samples");
    const CutDistribution emp =
        empirical_distribution(samples, g.num_vertices());
    return edge_cut_probabilities(emp, g).min_value;
}

double approximation_ratio(double value, double eta_bar) {
    if (eta_bar <= 0.0)
        throw std::invalid_argument("approximation_ratio: eta_bar must be positive");
    return value / eta_bar;
}

double approximation_ratio(double value, const Graph& g) {
    const LpReport exact = g.num_vertices() <= 17
                               ? solve_primal_enumeration(g)
                               : solve_dual_cutting_plane(g);
    return approximation_ratio(value, exact.value);
}

VarianceStudy variance_study(std::span<const int> sizes, int layers,
                             int n_instances, int n_points,
                             std::uint64_t seed) {
    if (layers < 1 || n_instances < 1 || n_points < 2)
        throw std::invalid_argument("variance_study: bad parameters");

    VarianceStudy study;
    study.sizes.assign(sizes.begin(), sizes.end());
    study.layers = layers;
    study.instances = n_instances;
    study.points = n_points;

    const Objective lse = Objective::lse(study.tau);
    const Objective hard = Objective::min_objective();

    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const int n = sizes[si];
        if (n < 2) throw std::invalid_argument("variance_study: sizes >= 2");
        for (int inst = 0; inst < n_instances; ++inst) {
            const std::uint64_t gseed =
                substream(seed, 1000 * (si + 1) + inst);
            const Graph g = n == 2 ? build_named({GraphFamily::Kind::Complete, 2})
                                   : erdos_renyi_connected(n, 0.5, gseed);
            const CircuitSpec spec =
                build_dqaoa_spec(g, layers, AnsatzMode::MultiAngle);
            const int coord = spec.gamma_slot(layers / 2, 0);

            std::vector<double> g_lse(n_points), g_min(n_points);
            for (int pt = 0; pt < n_points; ++pt) {
                Rng rng(substream(gseed ^ 0x5eedULL, pt));
                std::vector<double> params(spec.num_params());
                for (double& p : params) p = rng.uniform(0.0, 2.0 * M_PI);

                const Evaluation el = evaluate_objective(spec, params, lse);
                const Evaluation em = evaluate_objective(spec, params, hard);
                g_lse[pt] =
                    -0.5 * gradient_reverse(spec, params, el.weights)[coord];
                g_min[pt] =
                    -0.5 * gradient_reverse(spec, params, em.weights)[coord];
            }

            auto variance_se = [](std::span<const double> xs) {
                const double n_d = static_cast<double>(xs.size());
                double mean = 0.0;
                for (double x : xs) mean += x;
                mean /= n_d;
                double m2 = 0.0, m4 = 0.0;
                for (double x : xs) {
                    const double d = x - mean;
                    m2 += d * d;
                    m4 += d * d * d * d;
                }
                m2 /= n_d;
                m4 /= n_d;
                const double se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n_d);
                return std::pair{m2, se};
            };

            VarianceStudyRow row;
            row.n = n;
            row.instance = inst;
            row.edges = g.num_edges();
            row.qubits = spec.qubits();
            const double d = std::pow(2.0, spec.qubits());
            const double denom = (d * d - 4.0) * (d + 2.0);
            row.bound_lse = d * d * g.num_edges() / denom;
            row.bound_min = d * d / denom;
            std::tie(row.var_lse, row.se_lse) = variance_se(g_lse);
            std::tie(row.var_min, row.se_min) = variance_se(g_min);
            study.rows.push_back(row);
        }
    }
    return study;
}

double eta_bar_complete(int n) {
    if (n < 2) throw std::invalid_argument("eta_bar_complete: n >= 2");
    return n % 2 == 0 ? n / (2.0 * (n - 1)) : (n + 1.0) / (2.0 * n);
}

std::vector<KnSeparationRow> kn_separation_sweep(int n_max) {
    if (n_max < 4) throw std::invalid_argument("kn_separation_sweep: n_max >= 4");
    std::vector<KnSeparationRow> rows;
    for (int n = 3; n <= n_max; ++n) {
        KnSeparationRow row;
        row.n = n;
        row.eta_bar = eta_bar_complete(n);
        row.sdp_hr = std::acos(1.0 / (1.0 - n)) / M_PI;
        row.q1_std = closed_form_k1_kn_opt(n);
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::map<CutMask, double> measurement_classes(const CircuitSpec& spec,
                                              std::span<const double> params) {
    const StateVector psi = run_circuit(spec, params);
    const int nb = spec.base_graph().num_vertices();
    const CutMask keep = nb >= 32 ? ~0u : ((1u << nb) - 1u);
    std::map<CutMask, double> classes;
    const auto* amps = psi.data();
    for (std::size_t x = 0; x < psi.dim(); ++x) {
        const CutMask mask = canonical_cut(static_cast<CutMask>(x) & keep, nb);
        classes[mask] += std::norm(amps[x]);
    }
    return classes;
}

double tv_against(const std::map<CutMask, double>& classes,
                  const std::map<CutMask, double>& target) {
    std::map<CutMask, double> diff = classes;
    for (const auto& [mask, p] : target) diff[mask] -= p;
    double tv = 0.0;
    for (const auto& [mask, d] : diff) tv += std::abs(d);
    return tv / 2.0;
}

}  // namespace

FitReport fit_target_distribution(const Graph& g, const CutDistribution& target,
                                  int layers, const TrainConfig& cfg,
                                  std::uint64_t seed) {
    if (g.num_vertices() > 6)
        throw std::invalid_argument("fit_target_distribution: n <= 6 for exact TV");
    if (target.num_vertices() != g.num_vertices())
        throw std::invalid_argument("fit_target_distribution: dimension mismatch");
    const bool canonical_support =
        std::all_of(target.support().begin(), target.support().end(),
                    [](const auto& kv) { return (kv.first & 1u) == 0u; });
    if (!canonical_support && !target.z2_symmetric(1e-9))
        throw std::invalid_argument("fit_target_distribution: target is not Z2-symmetric");

    const CircuitSpec spec = build_dqaoa_spec(g, layers, AnsatzMode::MultiAngle);
    std::map<CutMask, double> target_classes;
    for (const auto& [mask, p] : target.classes()) target_classes[mask] = p;

    auto tv_of = [&](std::span<const double> params) {
        return tv_against(measurement_classes(spec, params), target_classes);
    };

    const int np = spec.num_params();
    std::vector<double> params(np);
    Rng rng(seed);
    for (double& p : params) p = rng.uniform(cfg.init_lo, cfg.init_hi);

    FitReport report;
    report.params = params;
    report.tv = tv_of(params);

    std::vector<double> m(np, 0.0), v(np, 0.0);
    const double h = 1e-4;
    int iter = 0;
    while (iter < cfg.max_iters) {
        ++iter;
        std::vector<double> grad(np);
        for (int j = 0; j < np; ++j) {
            std::vector<double> plus = params, minus = params;
            plus[j] += h;
            minus[j] -= h;
            grad[j] = (tv_of(plus) - tv_of(minus)) / (2.0 * h);
        }
        const double bc1 = 1.0 - std::pow(cfg.beta1, iter);
        const double bc2 = 1.0 - std::pow(cfg.beta2, iter);
        for (int j = 0; j < np; ++j) {
            m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * grad[j];
            v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * grad[j] * grad[j];
            params[j] -= cfg.step_size * (m[j] / bc1) /
                         (std::sqrt(v[j] / bc2) + cfg.eps_adam);
        }
        const double tv = tv_of(params);
        if (tv < report.tv) {
            report.tv = tv;
            report.params = params;
        }
        report.trajectory.push_back(report.tv);
        const int i = static_cast<int>(report.trajectory.size());
        if (i > cfg.patience &&
            report.trajectory[i - 1 - cfg.patience] - report.trajectory[i - 1] <
                cfg.improvement_floor)
            break;
    }
    report.iterations = iter;
    return report;
}

}  // namespace faircut
