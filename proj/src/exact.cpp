#include "faircut/exact.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "faircut/lp.hpp"
#include "faircut/rng.hpp"

namespace faircut {

namespace {

constexpr int kIterationCap = 10000;

void require_solvable(const Graph& g) {
    if (g.num_vertices() < 2 || g.num_edges() < 1)
        throw std::invalid_argument("fair cut cover: graph needs >= 2 vertices and an edge");
}

// default starting columns: the n single-vertex cut classes plus one
// balanced cut
std::vector<CutMask> initial_cuts(const Graph& g, std::uint64_t seed,
                                  bool random_balanced) {
    const int n = g.num_vertices();
    std::set<CutMask> cuts;
    for (int v = 0; v < n; ++v) cuts.insert(canonical_cut(1u << v, n));
    CutMask balanced = 0;
    if (random_balanced) {
        Rng rng(substream(seed, 0));
        std::vector<int> verts(n);
        for (int i = 0; i < n; ++i) verts[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(verts[i], verts[rng.uniform_int(i + 1)]);
        for (int i = 0; i < n / 2; ++i) balanced |= 1u << verts[i];
    } else {
        for (int v = 1; v < n; v += 2) balanced |= 1u << v;
    }
    cuts.insert(canonical_cut(balanced, n));
    return {cuts.begin(), cuts.end()};
}

// restricted primal: max t over distributions on the cut set S
struct RestrictedPrimal {
    double value = 0.0;
    std::vector<double> p;  // aligned with S
    std::vector<double> q;  // edge duals, on the simplex
};

RestrictedPrimal solve_restricted_primal(const Graph& g,
                                         const std::vector<CutMask>& cuts) {
    const int m = g.num_edges();
    const int s = static_cast<int>(cuts.size());
    lp::Problem prob;
    prob.num_vars = s + 1;  // p_0..p_{s-1}, t
    prob.objective.assign(s + 1, 0.0);
    prob.objective[s] = 1.0;
    for (int e = 0; e < m; ++e) {
        lp::Problem::Row row;
        row.coeffs.assign(s + 1, 0.0);
        for (int j = 0; j < s; ++j)
            row.coeffs[j] = -edge_cut_indicator(cuts[j], g.edge(e));
        row.coeffs[s] = 1.0;  // t - sum_j Y_ej p_j <= 0
        row.sense = lp::Sense::LessEqual;
        row.rhs = 0.0;
        prob.rows.push_back(std::move(row));
    }
    lp::Problem::Row norm;
    norm.coeffs.assign(s + 1, 0.0);
    for (int j = 0; j < s; ++j) norm.coeffs[j] = 1.0;
    norm.sense = lp::Sense::Equal;
    norm.rhs = 1.0;
    prob.rows.push_back(std::move(norm));

    const lp::Solution sol = lp::solve(prob);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("restricted primal LP did not solve");

    RestrictedPrimal out;
    out.value = sol.objective;
    out.p.assign(sol.x.begin(), sol.x.begin() + s);
    out.q.assign(m, 0.0);
    double qsum = 0.0;
    for (int e = 0; e < m; ++e) {
        out.q[e] = std::max(0.0, sol.duals[e]);
        qsum += out.q[e];
    }
    if (qsum <= 0.0)
        throw std::runtime_error("restricted primal LP returned empty duals");
    for (double& qe : out.q) qe /= qsum;
    return out;
}

CutDistribution witness_from(const Graph& g, const std::vector<CutMask>& cuts,
                             const std::vector<double>& p) {
    std::vector<std::pair<CutMask, double>> support;
    double sum = 0.0;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
        if (p[j] > 1e-12) {
            support.emplace_back(cuts[j], p[j]);
            sum += p[j];
        }
    }
    for (auto& [mask, prob] : support) prob /= sum;
    return CutDistribution(g.num_vertices(), std::move(support));
}

}  // namespace

LpReport solve_primal_enumeration(const Graph& g) {
    require_solvable(g);
    const int n = g.num_vertices();
    if (n > 17)
        throw std::invalid_argument(
            "solve_primal_enumeration: n > 17, use solve_dual_cutting_plane");

    // all Z2 cut classes, canonical bit 0 clear
    const std::uint32_t n_classes = 1u << (n - 1);
    const int m = g.num_edges();
    std::vector<int> eu(m), ev(m);
    for (int e = 0; e < m; ++e) {
        eu[e] = g.edge(e).u;
        ev[e] = g.edge(e).v;
    }

    std::vector<CutMask> cuts = initial_cuts(g, 0, false);
    std::set<CutMask> in_set(cuts.begin(), cuts.end());

    RestrictedPrimal rp;
    int iter = 0;
    while (true) {
        if (++iter > kIterationCap)
            throw std::runtime_error("solve_primal_enumeration: iteration cap hit");
        rp = solve_restricted_primal(g, cuts);

        // exact pricing: scan every class for the largest q-weight
        double best = -1.0;
        CutMask best_mask = 0;
#pragma omp parallel if (n_classes > (1u << 15))
        {
            double local = -1.0;
            CutMask local_mask = 0;
#pragma omp for schedule(static)
            for (std::int64_t h = 0; h < static_cast<std::int64_t>(n_classes);
                 ++h) {
                const CutMask mask = static_cast<CutMask>(h) << 1;
                double w = 0.0;
                for (int e = 0; e < m; ++e)
                    w += rp.q[e] * (((mask >> eu[e]) ^ (mask >> ev[e])) & 1u);
                if (w > local || (w == local && mask < local_mask)) {
                    local = w;
                    local_mask = mask;
                }
            }
#pragma omp critical
            {
                if (local > best || (local == best && local_mask < best_mask)) {
                    best = local;
                    best_mask = local_mask;
                }
            }
        }
        if (best <= rp.value + 1e-9 || in_set.count(best_mask)) break;
        cuts.push_back(best_mask);
        in_set.insert(best_mask);
    }

    LpReport report{rp.value, witness_from(g, cuts, rp.p), rp.q, iter,
                    LpMethod::PrimalEnumeration};
    return report;
}

LpReport solve_dual_cutting_plane(const Graph& g, double tol,
                                  std::uint64_t seed) {
    require_solvable(g);
    const int n = g.num_vertices();
    if (n > Graph::kMaxVertices)
        throw std::invalid_argument("solve_dual_cutting_plane: n > 30");
    const int m = g.num_edges();

    std::vector<CutMask> cuts = initial_cuts(g, seed, true);
    std::set<CutMask> in_set(cuts.begin(), cuts.end());

    int iter = 0;
    while (true) {
        if (++iter > kIterationCap)
            throw std::runtime_error(
                "solve_dual_cutting_plane: no convergence within iteration cap, gap unknown");

        // restricted dual: min z s.t. z >= cut weight for every cut in S,
        // q on the edge simplex
        lp::Problem prob;
        prob.num_vars = m + 1;  // q_0..q_{m-1}, z
        prob.objective.assign(m + 1, 0.0);
        prob.objective[m] = -1.0;  // max -z
        for (const CutMask cut : cuts) {
            lp::Problem::Row row;
            row.coeffs.assign(m + 1, 0.0);
            for (int e = 0; e < m; ++e)
                row.coeffs[e] = edge_cut_indicator(cut, g.edge(e));
            row.coeffs[m] = -1.0;
            row.sense = lp::Sense::LessEqual;
            row.rhs = 0.0;
            prob.rows.push_back(std::move(row));
        }
        lp::Problem::Row norm;
        norm.coeffs.assign(m + 1, 0.0);
        for (int e = 0; e < m; ++e) norm.coeffs[e] = 1.0;
        norm.sense = lp::Sense::Equal;
        norm.rhs = 1.0;
        prob.rows.push_back(std::move(norm));

        const lp::Solution sol = lp::solve(prob);
        if (sol.status != lp::Status::Optimal)
            throw std::runtime_error("restricted dual LP did not solve");
        const double z = -sol.objective;
        std::vector<double> q(sol.x.begin(), sol.x.begin() + m);

        // separation oracle
        const MaxCutResult oracle = max_cut_bruteforce(g, q);
        if (oracle.value <= z + tol || in_set.count(oracle.cut_mask)) {
            // primal witness from the cut-row duals
            std::vector<double> p(cuts.size(), 0.0);
            double psum = 0.0;
            for (std::size_t j = 0; j < cuts.size(); ++j) {
                p[j] = std::max(0.0, sol.duals[j]);
                psum += p[j];
            }
            if (psum <= 0.0)
                throw std::runtime_error("restricted dual LP returned empty witness");
            for (double& pj : p) pj /= psum;
            LpReport report{z, witness_from(g, cuts, p), std::move(q), iter,
                            LpMethod::DualCuttingPlane};
            return report;
        }
        cuts.push_back(oracle.cut_mask);
        in_set.insert(oracle.cut_mask);
    }
}

DualityReport verify_duality(const Graph& g, double tol) {
    DualityReport report;
    const LpReport primal = solve_primal_enumeration(g);
    const LpReport dual = solve_dual_cutting_plane(g);
    report.primal = primal.value;
    report.dual = dual.value;
    report.gap = std::abs(primal.value - dual.value);

    const std::vector<double>& q = dual.dual_weights;
    const double opt = max_cut_bruteforce(g, q).value;
    for (const auto& [mask, p] : primal.witness.support()) {
        double w = 0.0;
        for (int e = 0; e < g.num_edges(); ++e)
            w += q[e] * edge_cut_indicator(mask, g.edge(e));
        const double slack = std::abs(opt - w);
        if (slack > tol) {
            report.offending_cuts.push_back(mask);
            report.max_slackness_violation =
                std::max(report.max_slackness_violation, slack);
        }
    }
    report.ok = report.gap <= tol && report.offending_cuts.empty();
    return report;
}

double fair_value_upper_bound_maxcut(const Graph& g) {
    require_solvable(g);
    return max_cut_bruteforce(g).value / g.total_weight();
}

}  // namespace faircut
