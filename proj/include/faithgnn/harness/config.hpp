#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faithgnn/gnn/model.hpp"
#include "faithgnn/graphs/graph.hpp"

namespace faithgnn::harness {

struct DatasetSpec {
    std::string name = "ba2motif";  // ba2motif | bams | file
    std::filesystem::path path;     // for name = file
    int count = 1000;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    DatasetSpec dataset;
    gnn::ModelKind model_kind = gnn::ModelKind::Gisst;
    nlohmann::json hyperparams = nlohmann::json::object();  // [model] and [explanation] keys
    int epochs = 200;
    double lr = 0.005;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    double train_fraction = 0.8;
    double val_fraction = 0.1;
    double test_fraction = 0.1;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    int baseline_draws = 5;
    std::filesystem::path output_dir = "runs";

    /// Throws ValidationError on inconsistent values.
    void validate() const;
};

/// INI-style text:
///
///   [dataset]     name, count, seed, path
///   [model]       kind plus model hyperparameters
///   [training]    epochs, lr, beta1, beta2, adam_eps, train_fraction,
///                 val_fraction, test_fraction, seeds (space or comma separated)
///   [explanation] explanation hyperparameters (node_budget, tau,
///                 max_subgraph_nodes); merged into the model hyperparameters
///   [evaluation]  baseline_draws
///   [output]      dir
///
/// Relative paths resolve against `base_dir`. Unknown sections or keys are
/// validation errors.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical key=value text of every field (sections in fixed order).
std::string canonical_text(const ExperimentConfig& config);
/// Hex FNV-1a of canonical_text.
std::string config_hash(const ExperimentConfig& config);

graphs::Dataset load_dataset(const DatasetSpec& spec);

} // namespace faithgnn::harness
