#pragma once

#include <string>

#include <json.hpp>

#include "faircut/analysis.hpp"
#include "faircut/cuts.hpp"
#include "faircut/exact.hpp"
#include "faircut/graph.hpp"
#include "faircut/rounding.hpp"
#include "faircut/sdp.hpp"
#include "faircut/trainer.hpp"

namespace faircut::io {

using nlohmann::json;

// {"n": int, "edges": [[u, v, w], ...]} or whitespace edge-list text
// ("u v [w]" per line, 0-based); format sniffed from the content.
Graph read_graph_file(const std::string& path);
Graph graph_from_json(const json& j);
Graph graph_from_edge_list(const std::string& text);
json graph_to_json(const Graph& g);

// {"n": int, "support": [{"mask": "0x..", "p": real}, ...]}
CutDistribution distribution_from_json(const json& j);
json distribution_to_json(const CutDistribution& d);
CutDistribution read_distribution_file(const std::string& path);

json lp_report_to_json(const LpReport& r);
json sdp_report_to_json(const SdpReport& r, bool include_embedding = true);
json rounding_run_to_json(const RoundingRun& r);
json train_result_to_json(const TrainResult& r, bool include_trajectory = true);
json variance_study_to_json(const VarianceStudy& s);

void write_text_file(const std::string& path, const std::string& content);
std::string format_double(double x);  // fixed %.12g, byte-stable output

}  // namespace faircut::io
