#include "faircut/rounding.hpp"

#include <cmath>
#include <stdexcept>

#include "faircut/rng.hpp"

namespace faircut {

namespace {

RoundingRun round_impl(const Embedding& emb, const Graph& g, int samples,
                       std::uint64_t seed, bool parallel) {
    if (samples < 1) throw std::invalid_argument("round_hyperplane: samples >= 1");
    if (emb.num_vectors() != g.num_vertices())
        throw std::invalid_argument("round_hyperplane: dimension mismatch");
    const int n = emb.num_vectors();
    const int rank = emb.rank();
    const int m = g.num_edges();

    std::vector<CutMask> masks(samples);
#pragma omp parallel for schedule(static) if (parallel && samples > 512)
    for (int s = 0; s < samples; ++s) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(s)));
        std::vector<double> dir(rank);
        for (double& x : dir) x = rng.normal();
        CutMask mask = 0;
        for (int v = 0; v < n; ++v) {
            double dot = 0.0;
            const auto row = emb.row(v);
            for (int k = 0; k < rank; ++k) dot += dir[k] * row[k];
            if (dot < 0.0) mask |= 1u << v;  // sign zero resolves to +1
        }
        masks[s] = mask;
    }

    std::vector<double> freq(m, 0.0);
    for (const CutMask mask : masks)
        for (int e = 0; e < m; ++e)
            freq[e] += edge_cut_indicator(mask, g.edge(e));
    for (double& f : freq) f /= samples;

    return RoundingRun{samples, seed,
                       empirical_distribution(masks, n), std::move(freq)};
}

}  // namespace

RoundingRun round_hyperplane(const Embedding& emb, const Graph& g, int samples,
                             std::uint64_t seed) {
    return round_impl(emb, g, samples, seed, true);
}

RoundingRun round_hyperplane_serial(const Embedding& emb, const Graph& g,
                                    int samples, std::uint64_t seed) {
    return round_impl(emb, g, samples, seed, false);
}

double rounding_probability_exact(const Embedding& emb, const Edge& e) {
    double ip = emb.inner(e.u, e.v);
    if (std::abs(ip) > 1.0 + 1e-12)
        throw std::runtime_error("rounding probability: inner product outside [-1, 1]");
    ip = std::clamp(ip, -1.0, 1.0);
    return std::acos(ip) / M_PI;
}

HrGapReport demonstrate_hr_gap(int n) {
    if (n < 4)
        throw std::invalid_argument(
            "demonstrate_hr_gap: gap vanishes below n = 4 (K_3 is equality)");
    HrGapReport report;
    report.n = n;
    report.optimum = n % 2 == 0 ? n / (2.0 * (n - 1))
                                : (n + 1.0) / (2.0 * n);
    report.hr_ceiling = std::acos(1.0 / (1.0 - n)) / M_PI;
    report.gap = report.optimum - report.hr_ceiling;
    return report;
}

}  // namespace faircut
