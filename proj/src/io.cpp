#include "faircut/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace faircut::io {

namespace {

std::string read_all(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

Graph graph_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        Edge edge;
        edge.u = e.at(0).get<int>();
        edge.v = e.at(1).get<int>();
        edge.w = e.size() > 2 ? e.at(2).get<double>() : 1.0;
        edges.push_back(edge);
    }
    return Graph(n, std::move(edges));
}

Graph graph_from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<Edge> edges;
    int max_vertex = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Edge e;
        if (!(ls >> e.u >> e.v)) continue;  // blank line
        if (!(ls >> e.w)) e.w = 1.0;
        max_vertex = std::max({max_vertex, e.u, e.v});
        edges.push_back(e);
    }
    if (edges.empty()) throw std::runtime_error("edge list: no edges found");
    return Graph(max_vertex + 1, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
    const std::string text = read_all(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return graph_from_json(json::parse(text));
    return graph_from_edge_list(text);
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
    return {{"n", g.num_vertices()}, {"edges", edges}};
}

CutDistribution distribution_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    std::vector<std::pair<CutMask, double>> support;
    for (const auto& entry : j.at("support")) {
        const std::string mask_text = entry.at("mask").get<std::string>();
        const CutMask mask =
            static_cast<CutMask>(std::stoul(mask_text, nullptr, 16));
        support.emplace_back(mask, entry.at("p").get<double>());
    }
    return CutDistribution(n, std::move(support));
}

json distribution_to_json(const CutDistribution& d) {
    json support = json::array();
    char buf[16];
    for (const auto& [mask, p] : d.support()) {
        std::snprintf(buf, sizeof buf, "0x%x", mask);
        support.push_back({{"mask", buf}, {"p", p}});
    }
    return {{"n", d.num_vertices()}, {"support", support}};
}

CutDistribution read_distribution_file(const std::string& path) {
    return distribution_from_json(json::parse(read_all(path)));
}

json lp_report_to_json(const LpReport& r) {
    return {{"value", r.value},
            {"dual_weights", r.dual_weights},
            {"witness", distribution_to_json(r.witness)},
            {"method", r.method == LpMethod::PrimalEnumeration
                           ? "primal-enumeration"
                           : "dual-cutting-plane"},
            {"iterations", r.iterations}};
}

json sdp_report_to_json(const SdpReport& r, bool include_embedding) {
    json j = {{"t_objective", r.t_objective}, {"hr_value", r.hr_value},
              {"converged", r.converged},     {"iterations", r.iterations},
              {"grad_norm", r.grad_norm},     {"edge_gap", r.edge_gap},
              {"min_inner", r.min_inner}};
    if (include_embedding) {
        json rows = json::array();
        for (int i = 0; i < r.embedding.num_vectors(); ++i) {
            const auto row = r.embedding.row(i);
            rows.push_back(std::vector<double>(row.begin(), row.end()));
        }
        j["embedding"] = rows;
    }
    return j;
}

json rounding_run_to_json(const RoundingRun& r) {
    json j = distribution_to_json(r.empirical);
    j["T"] = r.n_samples;
    j["seed"] = r.seed;
    j["edge_frequencies"] = r.edge_frequencies;
    return j;
}

json train_result_to_json(const TrainResult& r, bool include_trajectory) {
    json j = {{"best_value", r.best_value},
              {"best_params", r.best_params},
              {"seed", r.seed},
              {"iterations", r.iterations},
              {"converged_reason", r.converged_reason}};
    if (include_trajectory) {
        j["trajectory"] = r.trajectory;
        j["objective_trajectory"] = r.objective_trajectory;
    }
    return j;
}

json variance_study_to_json(const VarianceStudy& s) {
    json rows = json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"n", r.n},
                        {"instance", r.instance},
                        {"edges", r.edges},
                        {"qubits", r.qubits},
                        {"var_lse", r.var_lse},
                        {"se_lse", r.se_lse},
                        {"bound_lse", r.bound_lse},
                        {"var_min", r.var_min},
                        {"se_min", r.se_min},
                        {"bound_min", r.bound_min}});
    return {{"sizes", s.sizes}, {"layers", s.layers},
            {"instances", s.instances}, {"points", s.points},
            {"tau", s.tau}, {"coordinate", "first gamma slot, middle layer"},
            {"rows", rows}};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace faircut::io
