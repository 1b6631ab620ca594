#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "faithgnn/graphs/graph.hpp"

namespace faithgnn::graphs {

/// One JSON-lines record: id, num_nodes, edges [[u,v]] with u < v,
/// features [[...]], label, and optional gt_nodes / gt_edges.
nlohmann::json graph_to_json(const AttributedGraph& g, const ExplanationMask* ground_truth = nullptr);

Dataset read_graphs(std::istream& in, const std::string& name);
Dataset load_graphs(const std::filesystem::path& path);

void write_graphs(std::ostream& out, const Dataset& ds);
void save_graphs(const std::filesystem::path& path, const Dataset& ds);

} // namespace faithgnn::graphs
