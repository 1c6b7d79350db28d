#include "faircut/cuts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "faircut/rng.hpp"

namespace faircut {

CutDistribution::CutDistribution(
    int n_vertices, std::vector<std::pair<CutMask, double>> support)
    : n_(n_vertices), support_(std::move(support)) {
    if (n_ < 1 || n_ > Graph::kMaxVertices)
        throw std::invalid_argument("cut distribution: bad vertex count");
    const CutMask full = n_ >= 32 ? ~0u : ((1u << n_) - 1u);
    double sum = 0.0;
    for (const auto& [mask, p] : support_) {
        if ((mask & ~full) != 0)
            throw std::invalid_argument("cut distribution: mask out of range");
        if (p < 0.0)
            throw std::invalid_argument("cut distribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw std::invalid_argument("cut distribution: probabilities sum to " +
                                    std::to_string(sum));
    std::sort(support_.begin(), support_.end());
    for (std::size_t i = 1; i < support_.size(); ++i)
        if (support_[i - 1].first == support_[i].first)
            throw std::invalid_argument("cut distribution: duplicate support entry");
    if (sum != 1.0)
        for (auto& [mask, p] : support_) p /= sum;
}

CutDistribution CutDistribution::point_mass(CutMask cut, int n_vertices) {
    return CutDistribution(n_vertices, {{cut, 1.0}});
}

double CutDistribution::probability(CutMask cut) const {
    auto it = std::lower_bound(support_.begin(), support_.end(),
                               std::pair{cut, -1.0});
    return (it != support_.end() && it->first == cut) ? it->second : 0.0;
}

double CutDistribution::class_probability(CutMask cut) const {
    const CutMask a = canonical_cut(cut, n_);
    const CutMask b = flip_cut(a, n_);
    return probability(a) + (b == a ? 0.0 : probability(b));
}

std::vector<std::pair<CutMask, double>> CutDistribution::classes() const {
    std::map<CutMask, double> acc;
    for (const auto& [mask, p] : support_) acc[canonical_cut(mask, n_)] += p;
    return {acc.begin(), acc.end()};
}

bool CutDistribution::z2_symmetric(double tol) const {
    for (const auto& [mask, p] : support_)
        if (std::abs(p - probability(flip_cut(mask, n_))) > tol) return false;
    return true;
}

EdgeCutProbs edge_cut_probabilities(const CutDistribution& p, const Graph& g) {
    if (p.num_vertices() != g.num_vertices())
        throw std::invalid_argument("edge_cut_probabilities: dimension mismatch");
    EdgeCutProbs out;
    out.probs.assign(g.num_edges(), 0.0);
    for (const auto& [mask, prob] : p.support())
        for (int i = 0; i < g.num_edges(); ++i)
            out.probs[i] += prob * edge_cut_indicator(mask, g.edge(i));
    out.min_value = 1.0;
    for (int i = 0; i < g.num_edges(); ++i) {
        if (out.probs[i] < out.min_value) {
            out.min_value = out.probs[i];
            out.argmin = i;
        }
    }
    if (g.num_edges() == 0) out.min_value = 0.0;
    return out;
}

CutDistribution symmetrize_z2(const CutDistribution& q) {
    const int n = q.num_vertices();
    std::map<CutMask, double> sym;
    for (const auto& [mask, p] : q.support()) {
        sym[mask] += p / 2.0;
        sym[flip_cut(mask, n)] += p / 2.0;
    }
    return CutDistribution(n, {sym.begin(), sym.end()});
}

CutDistribution k_subset_distribution(int n, int k) {
    if (n < 2 || n > 24 || k < 1 || k > n - 1)
        throw std::invalid_argument("k_subset_distribution: need 1 <= k <= n-1, n <= 24");
    std::map<CutMask, double> acc;
    long count = 0;
    for (CutMask m = 0; m < (1u << n); ++m) {
        if (std::popcount(m) != k) continue;
        ++count;
        acc[canonical_cut(m, n)] += 1.0;
    }
    std::vector<std::pair<CutMask, double>> support;
    support.reserve(acc.size());
    for (auto& [mask, c] : acc) support.emplace_back(mask, c / count);
    return CutDistribution(n, std::move(support));
}

CutDistribution empirical_distribution(std::span<const CutMask> samples,
                                       int n_vertices) {
    if (samples.empty())
        throw std::invalid_argument("empirical_distribution: no samples");
    std::map<CutMask, double> acc;
    for (CutMask s : samples) acc[canonical_cut(s, n_vertices)] += 1.0;
    std::vector<std::pair<CutMask, double>> support;
    for (auto& [mask, c] : acc)
        support.emplace_back(mask, c / static_cast<double>(samples.size()));
    return CutDistribution(n_vertices, std::move(support));
}

double total_variation(const CutDistribution& p, const CutDistribution& q) {
    if (p.num_vertices() != q.num_vertices())
        throw std::invalid_argument("total_variation: dimension mismatch");
    std::map<CutMask, double> diff;
    for (const auto& [mask, prob] : p.classes()) diff[mask] += prob;
    for (const auto& [mask, prob] : q.classes()) diff[mask] -= prob;
    double tv = 0.0;
    for (const auto& [mask, d] : diff) tv += std::abs(d);
    return tv / 2.0;
}

std::vector<CutMask> sample_cuts(const CutDistribution& p, int count,
                                 std::uint64_t seed) {
    if (count < 0) throw std::invalid_argument("sample_cuts: negative count");
    std::vector<double> cdf;
    std::vector<CutMask> masks;
    cdf.reserve(p.support().size());
    double acc = 0.0;
    for (const auto& [mask, prob] : p.support()) {
        acc += prob;
        cdf.push_back(acc);
        masks.push_back(mask);
    }
    std::vector<CutMask> out(count);
#pragma omp parallel for schedule(static) if (count > 4096)
    for (int i = 0; i < count; ++i) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(i)));
        const double u = rng.uniform() * acc;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        out[i] = masks[it - cdf.begin()];
    }
    return out;
}

}  // namespace faircut
