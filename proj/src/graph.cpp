#include "faircut/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "faircut/rng.hpp"

namespace faircut {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("graph: vertex count out of range");
    for (auto& e : edges_) {
        if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (!(e.w > 0.0)) throw std::invalid_argument("graph: weight must be positive");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
            throw std::invalid_argument("graph: duplicate edge");
    }
    adj_.assign(static_cast<std::size_t>(std::max(n, 1)), 0u);
    for (const auto& e : edges_) {
        adj_[e.u] |= 1u << e.v;
        adj_[e.v] |= 1u << e.u;
    }
}

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool Graph::has_edge(int u, int v) const {
    return u != v && (adj_[u] >> v) & 1u;
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    std::uint32_t seen = 1u;
    std::uint32_t frontier = 1u;
    while (frontier != 0) {
        std::uint32_t next = 0;
        for (int v = 0; v < n_; ++v)
            if ((frontier >> v) & 1u) next |= adj_[v];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (n_ == 32 ? ~0u : ((1u << n_) - 1u));
}

bool Graph::unweighted() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.w == 1.0; });
}

double Graph::total_weight() const {
    return std::accumulate(edges_.begin(), edges_.end(), 0.0,
                           [](double s, const Edge& e) { return s + e.w; });
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<std::vector<int>> comps;
    std::uint32_t unseen = n_ >= 32 ? ~0u : ((1u << n_) - 1u);
    while (unseen != 0) {
        int start = std::countr_zero(unseen);
        std::uint32_t seen = 1u << start;
        std::uint32_t frontier = seen;
        while (frontier != 0) {
            std::uint32_t next = 0;
            for (int v = 0; v < n_; ++v)
                if ((frontier >> v) & 1u) next |= adj_[v];
            frontier = next & ~seen;
            seen |= next;
        }
        std::vector<int> comp;
        for (int v = 0; v < n_; ++v)
            if ((seen >> v) & 1u) comp.push_back(v);
        comps.push_back(std::move(comp));
        unseen &= ~seen;
    }
    return comps;
}

std::string GraphFamily::name() const {
    switch (kind) {
        case Kind::Complete: return "complete:" + std::to_string(n);
        case Kind::Cycle: return "cycle:" + std::to_string(n);
        case Kind::Path: return "path:" + std::to_string(n);
        case Kind::Kneser:
            return "kneser:" + std::to_string(n) + "," + std::to_string(k);
        case Kind::Petersen: return "petersen";
        case Kind::Clebsch: return "clebsch";
        case Kind::Paley: return "paley:" + std::to_string(n);
        case Kind::Shrikhande: return "shrikhande";
        case Kind::ErdosRenyi:
            return "er:" + std::to_string(n) + "," + std::to_string(p) + "," +
                   std::to_string(clique_target) + "," + std::to_string(seed);
    }
    return "?";
}

std::optional<GraphFamily> GraphFamily::parse(const std::string& text) {
    GraphFamily f;
    auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    std::vector<std::string> args;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (true) {
            auto comma = rest.find(',', pos);
            args.push_back(rest.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    try {
        if (head == "petersen") { f.kind = Kind::Petersen; return f; }
        if (head == "clebsch") { f.kind = Kind::Clebsch; return f; }
        if (head == "shrikhande") { f.kind = Kind::Shrikhande; return f; }
        if (head == "complete" || head == "cycle" || head == "path" ||
            head == "paley") {
            if (args.size() != 1) return std::nullopt;
            f.kind = head == "complete" ? Kind::Complete
                     : head == "cycle"  ? Kind::Cycle
                     : head == "path"   ? Kind::Path
                                        : Kind::Paley;
            f.n = std::stoi(args[0]);
            return f;
        }
        if (head == "kneser") {
            if (args.size() != 2) return std::nullopt;
            f.kind = Kind::Kneser;
            f.n = std::stoi(args[0]);
            f.k = std::stoi(args[1]);
            return f;
        }
        if (head == "er") {
            if (args.size() != 4) return std::nullopt;
            f.kind = Kind::ErdosRenyi;
            f.n = std::stoi(args[0]);
            f.p = std::stod(args[1]);
            f.clique_target = std::stoi(args[2]);
            f.seed = std::stoull(args[3]);
            return f;
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

Graph build_kneser(int n, int k) {
    if (n < 2 * k || k < 1)
        throw std::invalid_argument("kneser: requires n >= 2k, k >= 1");
    std::vector<std::uint32_t> sets;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == k) sets.push_back(m);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if ((sets[i] & sets[j]) == 0)
                edges.push_back({static_cast<int>(i), static_cast<int>(j), 1.0});
    return Graph(static_cast<int>(sets.size()), std::move(edges));
}

Graph build_paley(int q) {
    if (q < 5 || q % 4 != 1)
        throw std::invalid_argument("paley: q must satisfy q = 1 mod 4");
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) throw std::invalid_argument("paley: q must be prime");
    std::vector<bool> qr(q, false);
    for (int x = 1; x < q; ++x) qr[(x * x) % q] = true;
    std::vector<Edge> edges;
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v)
            if (qr[(v - u) % q]) edges.push_back({u, v, 1.0});
    return Graph(q, std::move(edges));
}

Graph build_clebsch() {
    // folded 5-cube: {0,1}^4, adjacent iff Hamming distance 1 or 4
    std::vector<Edge> edges;
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b) {
            int h = std::popcount(static_cast<unsigned>(a ^ b));
            if (h == 1 || h == 4) edges.push_back({a, b, 1.0});
        }
    return Graph(16, std::move(edges));
}

Graph build_shrikhande() {
    // Cayley graph on Z4 x Z4, connection set {+-(1,0), +-(0,1), +-(1,1)}
    static constexpr int kConn[6][2] = {{1, 0}, {3, 0}, {0, 1},
                                        {0, 3}, {1, 1}, {3, 3}};
    std::vector<Edge> edges;
    for (int a1 = 0; a1 < 4; ++a1)
        for (int a2 = 0; a2 < 4; ++a2)
            for (const auto& d : kConn) {
                int u = 4 * a1 + a2;
                int v = 4 * ((a1 + d[0]) % 4) + (a2 + d[1]) % 4;
                if (u < v) edges.push_back({u, v, 1.0});
            }
    return Graph(16, std::move(edges));
}

}  // namespace

Graph build_named(const GraphFamily& family) {
    using Kind = GraphFamily::Kind;
    switch (family.kind) {
        case Kind::Complete: {
            if (family.n < 1) throw std::invalid_argument("complete: n >= 1");
            std::vector<Edge> edges;
            for (int u = 0; u < family.n; ++u)
                for (int v = u + 1; v < family.n; ++v)
                    edges.push_back({u, v, 1.0});
            return Graph(family.n, std::move(edges));
        }
        case Kind::Cycle: {
            if (family.n < 3) throw std::invalid_argument("cycle: n >= 3");
            std::vector<Edge> edges;
            for (int u = 0; u < family.n; ++u)
                edges.push_back({u, (u + 1) % family.n, 1.0});
            return Graph(family.n, std::move(edges));
        }
        case Kind::Path: {
            if (family.n < 2) throw std::invalid_argument("path: n >= 2");
            std::vector<Edge> edges;
            for (int u = 0; u + 1 < family.n; ++u)
                edges.push_back({u, u + 1, 1.0});
            return Graph(family.n, std::move(edges));
        }
        case Kind::Kneser: return build_kneser(family.n, family.k);
        case Kind::Petersen: return build_kneser(5, 2);
        case Kind::Clebsch: return build_clebsch();
        case Kind::Paley: return build_paley(family.n);
        case Kind::Shrikhande: return build_shrikhande();
        case Kind::ErdosRenyi:
            return generate_er_filtered(family.n, family.p,
                                        family.clique_target, family.seed);
    }
    throw std::invalid_argument("build_named: unknown family");
}

Graph erdos_renyi_connected(int n, double p, std::uint64_t seed) {
    if (n < 1 || n > Graph::kMaxVertices || p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("erdos_renyi: bad parameters");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.uniform() < p) edges.push_back({u, v, 1.0});
        Graph g(n, std::move(edges));
        if (g.connected()) return g;
    }
    throw std::runtime_error("erdos_renyi: no connected sample in 10000 attempts");
}

Graph generate_er_filtered(int n, double p, int clique_target,
                           std::uint64_t seed) {
    if (n < 3 || p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("generate_er_filtered: bad parameters");
    if (clique_target != 4 && clique_target != 5)
        throw std::invalid_argument("generate_er_filtered: clique target must be 4 or 5");
    if (n < clique_target)
        throw std::invalid_argument("generate_er_filtered: n smaller than clique target");

    constexpr int kBudget = 10000;
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<std::uint32_t> adj(n, 0u);
        auto add = [&](int u, int v) {
            adj[u] |= 1u << v;
            adj[v] |= 1u << u;
        };
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.uniform() < p) add(u, v);

        // plant a clique of the target size on a random vertex subset
        std::vector<int> verts(n);
        std::iota(verts.begin(), verts.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(verts[i], verts[rng.uniform_int(i + 1)]);
        for (int i = 0; i < clique_target; ++i)
            for (int j = i + 1; j < clique_target; ++j)
                add(verts[i], verts[j]);

        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((adj[u] >> v) & 1u) edges.push_back({u, v, 1.0});
        Graph g(n, std::move(edges));
        if (!g.connected()) continue;
        if (max_clique(g) != clique_target) continue;  // planting overshot
        return g;
    }
    throw std::runtime_error(
        "generate_er_filtered: no instance with the requested clique after " +
        std::to_string(kBudget) + " attempts");
}

double cut_weight(const Graph& g, std::uint32_t mask) {
    double w = 0.0;
    for (const auto& e : g.edges())
        w += e.w * (((mask >> e.u) ^ (mask >> e.v)) & 1u);
    return w;
}

namespace {

MaxCutResult max_cut_scan(const Graph& g, std::span<const double> weights,
                          bool parallel) {
    const int n = g.num_vertices();
    if (n < 1 || n > Graph::kMaxVertices)
        throw std::invalid_argument("max_cut: vertex count out of range");
    if (!weights.empty() && static_cast<int>(weights.size()) != g.num_edges())
        throw std::invalid_argument("max_cut: weight vector size mismatch");

    const int m = g.num_edges();
    std::vector<int> eu(m), ev(m);
    std::vector<double> ew(m);
    for (int i = 0; i < m; ++i) {
        eu[i] = g.edge(i).u;
        ev[i] = g.edge(i).v;
        ew[i] = weights.empty() ? g.edge(i).w : weights[i];
    }

    const std::uint64_t count = n == 1 ? 1 : (1ull << (n - 1));
    // bit 0 fixed to 0: each mask is the canonical Z2 class representative
    double best = -1.0;
    std::uint32_t best_mask = 0;
#pragma omp parallel if (parallel && count > (1u << 16))
    {
        double local_best = -1.0;
        std::uint32_t local_mask = 0;
#pragma omp for schedule(static)
        for (std::int64_t half = 0; half < static_cast<std::int64_t>(count);
             ++half) {
            const std::uint32_t mask = static_cast<std::uint32_t>(half) << 1;
            double w = 0.0;
            for (int i = 0; i < m; ++i)
                w += ew[i] * (((mask >> eu[i]) ^ (mask >> ev[i])) & 1u);
            if (w > local_best ||
                (w == local_best && mask < local_mask)) {
                local_best = w;
                local_mask = mask;
            }
        }
#pragma omp critical
        {
            if (local_best > best ||
                (local_best == best && local_mask < best_mask)) {
                best = local_best;
                best_mask = local_mask;
            }
        }
    }
    return {best, best_mask};
}

}  // namespace

MaxCutResult max_cut_bruteforce(const Graph& g, std::span<const double> weights) {
    return max_cut_scan(g, weights, true);
}

MaxCutResult max_cut_bruteforce_serial(const Graph& g,
                                       std::span<const double> weights) {
    return max_cut_scan(g, weights, false);
}

namespace {

// classic recursive max clique with neighborhood pruning on bitmasks
void clique_extend(const std::vector<std::uint32_t>& adj, std::uint32_t cand,
                   int size, int& best) {
    if (size + std::popcount(cand) <= best) return;
    while (cand != 0) {
        if (size + std::popcount(cand) <= best) return;
        const int v = std::countr_zero(cand);
        cand &= cand - 1;
        best = std::max(best, size + 1);
        clique_extend(adj, cand & adj[v], size + 1, best);
    }
}

}  // namespace

int max_clique(const Graph& g) {
    if (g.num_vertices() == 0) return 0;
    std::vector<std::uint32_t> adj(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) adj[v] = g.neighbor_mask(v);
    int best = 1;
    const std::uint32_t all =
        g.num_vertices() >= 32 ? ~0u : ((1u << g.num_vertices()) - 1u);
    clique_extend(adj, all, 0, best);
    return best;
}

SubgraphResult subgraph(const Graph& g, const std::vector<int>& keep_vertices,
                        const std::vector<std::pair<int, int>>& keep_edges) {
    if (keep_vertices.empty())
        throw std::invalid_argument("subgraph: empty vertex set");
    std::vector<int> old_to_new(g.num_vertices(), -1);
    std::vector<int> vmap;
    for (int v : keep_vertices) {
        if (v < 0 || v >= g.num_vertices())
            throw std::invalid_argument("subgraph: vertex out of range");
        if (old_to_new[v] >= 0)
            throw std::invalid_argument("subgraph: duplicate vertex");
        old_to_new[v] = static_cast<int>(vmap.size());
        vmap.push_back(v);
    }

    auto wanted = [&](int u, int v) {
        if (keep_edges.empty()) return true;
        for (auto [a, b] : keep_edges) {
            if (a > b) std::swap(a, b);
            if (a == u && b == v) return true;
        }
        return false;
    };
    if (!keep_edges.empty()) {
        for (auto [a, b] : keep_edges) {
            if (a > b) std::swap(a, b);
            if (!g.has_edge(a, b))
                throw std::invalid_argument("subgraph: edge not in graph");
            if (old_to_new[a] < 0 || old_to_new[b] < 0)
                throw std::invalid_argument("subgraph: edge endpoint not kept");
        }
    }

    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (old_to_new[e.u] < 0 || old_to_new[e.v] < 0) continue;
        if (!wanted(e.u, e.v)) continue;
        edges.push_back({old_to_new[e.u], old_to_new[e.v], e.w});
    }
    return {Graph(static_cast<int>(vmap.size()), std::move(edges)), vmap};
}

std::vector<double> adjacency_spectrum(const Graph& g) {
    const int n = g.num_vertices();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        a(e.u, e.v) = e.w;
        a(e.v, e.u) = e.w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    std::vector<double> eig(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + n);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::uint64_t spectral_certificate(const Graph& g) {
    std::vector<int> degs(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) degs[v] = g.degree(v);
    std::sort(degs.begin(), degs.end());

    std::uint64_t h = 0x243f6a8885a308d3ULL ^ static_cast<std::uint64_t>(g.num_vertices());
    auto mix = [&h](std::uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (int d : degs) mix(static_cast<std::uint64_t>(d));
    for (double lam : adjacency_spectrum(g))
        mix(static_cast<std::uint64_t>(std::llround(lam * 1e9)));
    return h;
}

}  // namespace faircut
