#include "faircut/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "faircut/rng.hpp"

namespace faircut {

Embedding::Embedding(int n, int rank) : n_(n), rank_(rank) {
    if (n < 1 || rank < 1) throw std::invalid_argument("embedding: bad shape");
    data_.assign(static_cast<std::size_t>(n) * rank, 0.0);
}

Embedding Embedding::random_unit(int n, int rank, std::uint64_t seed) {
    Embedding emb(n, rank);
    Rng rng(seed);
    for (double& x : emb.data_) x = rng.normal();
    emb.normalize_rows();
    return emb;
}

double Embedding::inner(int i, int j) const {
    const auto a = row(i);
    const auto b = row(j);
    double s = 0.0;
    for (int k = 0; k < rank_; ++k) s += a[k] * b[k];
    return s;
}

double Embedding::row_norm(int i) const { return std::sqrt(inner(i, i)); }

void Embedding::normalize_rows() {
    for (int i = 0; i < n_; ++i) {
        const double nrm = row_norm(i);
        if (nrm < 1e-300)
            throw std::runtime_error("embedding: zero row cannot be normalized");
        for (double& x : row(i)) x /= nrm;
    }
}

namespace {

struct Ascent {
    double lse = 0.0;
    double min_edge = 1.0;
};

double lse_value(std::span<const double> te, double tau) {
    const double m = *std::min_element(te.begin(), te.end());
    double s = 0.0;
    for (double t : te) s += std::exp((m - t) / tau);
    return m - tau * std::log(s);
}

SdpReport ascend_once(const Graph& g, const SdpOptions& opt, int rank,
                      std::uint64_t seed) {
    const int n = g.num_vertices();
    const int m = g.num_edges();
    Embedding emb = Embedding::random_unit(n, rank, seed);

    std::vector<double> te(m), w(m);
    std::vector<double> grad(static_cast<std::size_t>(n) * rank);
    std::vector<double> min_window;

    auto edge_objectives = [&](const Embedding& v, std::vector<double>& out) {
        for (int e = 0; e < m; ++e) {
            const Edge& ed = g.edge(e);
            out[e] = 0.5 * ed.w * (1.0 - v.inner(ed.u, ed.v));
        }
    };

    double tau = opt.tau_start;
    double step = opt.step_size;
    int iters = 0;
    double grad_norm = 0.0;

    while (true) {
        edge_objectives(emb, te);
        const double cur_min = *std::min_element(te.begin(), te.end());
        min_window.push_back(cur_min);
        if (static_cast<int>(min_window.size()) > 50)
            min_window.erase(min_window.begin());

        // softmax weights of the smoothed min
        double zsum = 0.0;
        for (int e = 0; e < m; ++e) {
            w[e] = std::exp((cur_min - te[e]) / tau);
            zsum += w[e];
        }
        for (int e = 0; e < m; ++e) w[e] /= zsum;

        // gradient of the LSE objective, projected on the tangent spaces
        std::fill(grad.begin(), grad.end(), 0.0);
        for (int e = 0; e < m; ++e) {
            const Edge& ed = g.edge(e);
            const double c = -0.5 * ed.w * w[e];
            const auto vu = emb.row(ed.u);
            const auto vv = emb.row(ed.v);
            for (int k = 0; k < rank; ++k) {
                grad[static_cast<std::size_t>(ed.u) * rank + k] += c * vv[k];
                grad[static_cast<std::size_t>(ed.v) * rank + k] += c * vu[k];
            }
        }
        grad_norm = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto vi = emb.row(i);
            double dot = 0.0;
            for (int k = 0; k < rank; ++k)
                dot += grad[static_cast<std::size_t>(i) * rank + k] * vi[k];
            for (int k = 0; k < rank; ++k) {
                double& gk = grad[static_cast<std::size_t>(i) * rank + k];
                gk -= dot * vi[k];
                grad_norm += gk * gk;
            }
        }
        grad_norm = std::sqrt(grad_norm);

        // backtracking step on the sphere product
        const double f0 = lse_value(te, tau);
        Embedding trial = emb;
        for (int i = 0; i < n; ++i) {
            auto vi = trial.row(i);
            for (int k = 0; k < rank; ++k)
                vi[k] += step * grad[static_cast<std::size_t>(i) * rank + k];
        }
        trial.normalize_rows();
        std::vector<double> te_trial(m);
        edge_objectives(trial, te_trial);
        if (lse_value(te_trial, tau) >= f0) {
            emb = std::move(trial);
            step = std::min(step * 1.1, 0.25);
        } else {
            step = std::max(step * 0.5, 1e-14);
        }

        ++iters;
        if (iters % opt.steps_per_tau == 0) {
            tau *= opt.tau_shrink;
            step = std::max(step, opt.step_size * 0.1);
            if (tau < opt.tau_min) break;
        }
    }

    SdpReport report;
    report.embedding = std::move(emb);
    edge_objectives(report.embedding, te);
    std::vector<double> sorted_te = te;
    std::sort(sorted_te.begin(), sorted_te.end());
    report.t_objective = sorted_te.front();
    report.edge_gap = m > 1 ? sorted_te[1] - sorted_te[0] : 0.0;
    report.hr_value = hr_value_from_embedding(report.embedding, g);
    report.iterations = iters;
    report.grad_norm = grad_norm;
    const double window_spread =
        *std::max_element(min_window.begin(), min_window.end()) -
        *std::min_element(min_window.begin(), min_window.end());
    report.converged = grad_norm < opt.tol * 10 + 1e-6 &&
                       window_spread < std::max(opt.tol, 1e-7) * 10;
    double max_inner = -1.0;
    for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edge(e);
        max_inner = std::max(max_inner,
                             report.embedding.inner(ed.u, ed.v));
    }
    report.min_inner = max_inner;
    return report;
}

}  // namespace

SdpReport solve_sdp(const Graph& g, const SdpOptions& options) {
    if (g.num_vertices() < 2 || g.num_edges() < 1)
        throw std::invalid_argument("solve_sdp: graph needs >= 2 vertices and an edge");
    const int rank = options.rank > 0 ? options.rank : g.num_vertices();

    SdpReport best;
    bool have = false;
#pragma omp parallel for schedule(dynamic) if (options.restarts > 1)
    for (int r = 0; r < options.restarts; ++r) {
        SdpReport rep = ascend_once(g, options, rank, substream(options.seed, r));
#pragma omp critical
        {
            if (!have || rep.t_objective > best.t_objective) {
                best = std::move(rep);
                have = true;
            }
        }
    }
    return best;
}

AnalyticSdp sdp_value_analytic(const GraphFamily& family) {
    using Kind = GraphFamily::Kind;
    double theta_complement = 0.0;
    switch (family.kind) {
        case Kind::Complete:
            if (family.n < 2) throw std::invalid_argument("analytic sdp: n >= 2");
            theta_complement = family.n;
            break;
        case Kind::Cycle:
            if (family.n < 3) throw std::invalid_argument("analytic sdp: n >= 3");
            if (family.n % 2 == 0) {
                theta_complement = 2.0;
            } else {
                const double c = std::cos(M_PI / family.n);
                theta_complement = (1.0 + c) / c;
            }
            break;
        case Kind::Kneser:
            if (family.n < 2 * family.k || family.k < 1)
                throw std::invalid_argument("analytic sdp: kneser needs n >= 2k");
            theta_complement = static_cast<double>(family.n) / family.k;
            break;
        case Kind::Petersen:
            theta_complement = 2.5;  // Kneser(5, 2)
            break;
        default:
            throw std::invalid_argument(
                "sdp_value_analytic: no closed form for this family");
    }
    AnalyticSdp out;
    out.inner_product = -1.0 / (theta_complement - 1.0);
    out.hr_value = std::acos(out.inner_product) / M_PI;
    return out;
}

double hr_value_from_embedding(const Embedding& emb, const Graph& g) {
    if (emb.num_vectors() != g.num_vertices())
        throw std::invalid_argument("hr_value: dimension mismatch");
    for (int i = 0; i < emb.num_vectors(); ++i)
        if (std::abs(emb.row_norm(i) - 1.0) > 1e-8)
            throw std::invalid_argument("hr_value: rows must be unit norm");
    double value = 1.0;
    for (const auto& e : g.edges()) {
        double ip = emb.inner(e.u, e.v);
        if (std::abs(ip) > 1.0 + 1e-12)
            throw std::runtime_error("hr_value: inner product outside [-1, 1]");
        ip = std::clamp(ip, -1.0, 1.0);
        value = std::min(value, std::acos(ip) / M_PI);
    }
    return value;
}

CliqueBoundsResult clique_bounds(const Graph& g) {
    if (g.num_vertices() > Graph::kMaxVertices)
        throw std::invalid_argument("clique_bounds: graph too large");
    const int omega = max_clique(g);
    if (omega < 2)
        throw std::invalid_argument("clique_bounds: edgeless graph rejected");
    CliqueBoundsResult out;
    out.omega = omega;
    out.upper = std::acos(1.0 / (1.0 - omega)) / M_PI;
    out.lower = std::acos(1.0 / (1.0 - g.num_vertices())) / M_PI;
    return out;
}

}  // namespace faircut
