#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faithgnn/gnn/model.hpp"

namespace faithgnn::explainers {

/// Builds an untrained model; missing hyperparameters take their defaults.
std::unique_ptr<gnn::Model> make_model(gnn::ModelKind kind, const nlohmann::json& hyperparams, int num_features,
                                       int num_classes, std::uint64_t seed);

struct Checkpoint {
    std::unique_ptr<gnn::Model> model;
    std::uint64_t seed = 0;
    std::string dataset_name;
};

/// {"model_kind", "hyperparams", "num_features", "num_classes",
///  "params": {name: nested array}, "seed", "dataset_name", "extra"}.
nlohmann::json checkpoint_to_json(const gnn::Model& model, std::uint64_t seed, const std::string& dataset_name);
Checkpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const std::filesystem::path& path, const gnn::Model& model, std::uint64_t seed,
                     const std::string& dataset_name);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Explanation record: graph id, variant, selected node indices, selected
/// edges as [u, v], kept feature indices and the producing model kind.
nlohmann::json explanation_to_json(const graphs::AttributedGraph& g, const graphs::ExplanationMask& m,
                                   const std::string& model_kind);
/// Rebuilds the mask against `g`; throws ValidationError when the record
/// does not fit the graph.
graphs::ExplanationMask explanation_from_json(const graphs::AttributedGraph& g, const nlohmann::json& j);

void write_explanations(std::ostream& out, const std::vector<graphs::AttributedGraph>& graphs,
                        const std::vector<graphs::ExplanationMask>& masks, const std::string& model_kind);
void save_explanations(const std::filesystem::path& path, const std::vector<graphs::AttributedGraph>& graphs,
                       const std::vector<graphs::ExplanationMask>& masks, const std::string& model_kind);

/// Raw records by line; parse errors carry the line number.
std::vector<nlohmann::json> load_explanation_records(const std::filesystem::path& path);

} // namespace faithgnn::explainers
