#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faithgnn/faithfulness/metrics.hpp"
#include "faithgnn/gnn/train.hpp"
#include "faithgnn/harness/config.hpp"

namespace faithgnn::harness {

struct Splits {
    std::vector<int> train;
    std::vector<int> val;
    std::vector<int> test;
};

/// Stratified split: each class is shuffled with a stream derived from
/// `seed` and cut into round(f * n_c) validation and test items (at least one
/// each when the fraction is positive), the rest going to training. Index
/// lists are sorted. Throws ValidationError naming a class that is too small.
Splits make_splits(const std::vector<int>& labels, double train_fraction, double val_fraction, double test_fraction,
                   std::uint64_t seed);

struct Validity {
    bool valid = true;
    std::string reason;
};

/// Excluded when mean accuracy <= majority frequency + 0.05.
Validity validity_filter(const std::vector<double>& accuracies, double majority_frequency);

/// Majority-class frequency of a label list.
double majority_frequency(const std::vector<int>& labels);

enum class MetricDirection { LowerBetter, HigherBetter };
enum class ColorClass { Red, Orange, Green };
const char* to_string(ColorClass c);

/// Caption rule on values rounded to two decimals: red when the random
/// baseline is at least as good, orange when it is at most 0.10 worse,
/// green otherwise.
ColorClass color_class(MetricDirection direction, double v_e, double v_r);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // n - 1 denominator; 0 for a single value
};
MeanStd mean_std(const std::vector<double>& values);

struct SeedResult {
    std::uint64_t seed = 0;
    double test_accuracy = 0.0;
    double majority_frequency = 0.0;
    int best_epoch = 0;
    faithfulness::Aggregate model;
    faithfulness::Aggregate random;
    std::optional<double> gt_jaccard_model;
    std::optional<double> gt_jaccard_random;
    std::vector<int> excluded_graph_ids;
};

struct RunReport {
    std::string dataset;
    std::string model;
    std::string config_hash;
    std::vector<SeedResult> seeds;
    std::vector<std::uint64_t> failed_seeds;
    std::vector<std::string> failure_messages;
    bool complete = true;
    Validity validity;
    MeanStd acc;
    MeanStd unf_e, unf_r, fid_minus_e, fid_minus_r, fid_plus_e, fid_plus_r;

    /// Recomputes the summary statistics and validity from `seeds`.
    void summarize();
};

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

struct TrainedSeed {
    Splits splits;
    std::vector<graphs::AttributedGraph> train_set;
    std::vector<graphs::AttributedGraph> val_set;
    std::vector<graphs::AttributedGraph> test_set;
    std::unique_ptr<gnn::Model> model;
    gnn::TrainResult result;
};

/// Split and train for one seed, with split and initialization streams
/// derived from `seed`.
TrainedSeed train_seed(const ExperimentConfig& config, const graphs::Dataset& dataset, std::uint64_t seed);

void write_train_log(const std::filesystem::path& path, const gnn::TrainResult& result);

struct RunOptions {
    bool verbose = true;  // progress lines on stderr
};

/// Full pipeline for every seed: split, train, checkpoint, explain the test
/// split, evaluate model and random explanations, write per-seed artifacts;
/// then aggregate into run_report.json plus report.md / report.csv under the
/// output directory. Failed seeds are recorded and mark the report
/// incomplete.
RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

} // namespace faithgnn::harness
