#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace faircut {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

/*
 * Undirected weighted graph on at most 30 vertices. Immutable after
 * construction; adjacency is kept as one bitmask per vertex.
 */
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[i]; }

    std::uint32_t neighbor_mask(int v) const { return adj_[v]; }
    int degree(int v) const;
    int max_degree() const;
    bool has_edge(int u, int v) const;
    bool connected() const;
    bool unweighted() const;  // all weights == 1
    double total_weight() const;

    // connected components as vertex lists (ascending)
    std::vector<std::vector<int>> components() const;

    static constexpr int kMaxVertices = 30;

private:
    int n_ = 0;
    std::vector<Edge> edges_;        // canonical u < v, sorted by (u, v)
    std::vector<std::uint32_t> adj_;
};

struct GraphFamily {
    enum class Kind {
        Complete,
        Cycle,
        Path,
        Kneser,
        Petersen,
        Clebsch,
        Paley,
        Shrikhande,
        ErdosRenyi,
    };
    Kind kind = Kind::Complete;
    int n = 0;           // Complete/Cycle/Path/Kneser/ErdosRenyi size, Paley q
    int k = 0;           // Kneser subset size
    double p = 0.0;      // ErdosRenyi edge probability
    int clique_target = 0;
    std::uint64_t seed = 0;

    std::string name() const;
    // parses e.g. "petersen", "complete:4", "kneser:5,2", "paley:13",
    // "er:10,0.15,4,7"
    static std::optional<GraphFamily> parse(const std::string& text);
};

Graph build_named(const GraphFamily& family);

// Erdos-Renyi instance with the max-clique filter: connected, omega(G) equal
// to clique_target. Resamples, planting a clique on a random vertex subset
// when the target is not yet reached. Deterministic for a fixed seed.
Graph generate_er_filtered(int n, double p, int clique_target,
                           std::uint64_t seed);

// plain connected Erdos-Renyi (resample until connected)
Graph erdos_renyi_connected(int n, double p, std::uint64_t seed);

struct MaxCutResult {
    double value = 0.0;
    std::uint32_t cut_mask = 0;  // canonical representative, bit 0 clear
};

// Exact weighted MaxCut by enumerating the 2^(n-1) Z2 cut classes. `weights`
// overrides edge weights when nonempty (must align with g.edges()). Ties are
// broken toward the lexicographically smallest mask.
MaxCutResult max_cut_bruteforce(const Graph& g,
                                std::span<const double> weights = {});
MaxCutResult max_cut_bruteforce_serial(const Graph& g,
                                       std::span<const double> weights = {});

int max_clique(const Graph& g);

struct SubgraphResult {
    Graph graph;
    std::vector<int> vertex_map;  // new index -> old index
};

// Induced subgraph on keep_vertices; if keep_edges is nonempty only those
// edges (given in original indices) survive.
SubgraphResult subgraph(const Graph& g, const std::vector<int>& keep_vertices,
                        const std::vector<std::pair<int, int>>& keep_edges = {});

// adjacency eigenvalues, ascending
std::vector<double> adjacency_spectrum(const Graph& g);

// Isomorphism-rejection certificate: hash of the sorted degree sequence plus
// the adjacency spectrum rounded at 1e-9. Collisions are possible in
// principle but negligible at the instance counts used here.
std::uint64_t spectral_certificate(const Graph& g);

double cut_weight(const Graph& g, std::uint32_t mask);

}  // namespace faircut
