#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faithgnn/gnn/model.hpp"
#include "faithgnn/graphs/graph.hpp"

namespace faithgnn::faithfulness {

using gnn::LabelDistribution;
using gnn::Model;
using graphs::AttributedGraph;
using graphs::ExplanationMask;
using graphs::MaskVariant;

/// sum_i p_i (ln p_i - ln q_i) with both sides clamped at 1e-12. Exactly 0
/// when max |p - q| <= 1e-12; never negative.
double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q);
double kl_divergence(const LabelDistribution& p, const LabelDistribution& q);

/// 1 - exp(-kl).
double unfaithfulness_from_kl(double kl);

/// 1 - exp(-KL(p(Y|G) || p(Y|E))), E = extract_subgraph(g, mask).
double unfaithfulness(const Model& model, const AttributedGraph& g, const ExplanationMask& mask);

struct Fidelity {
    int fid_plus = 0;
    int fid_minus = 0;
    int y_hat = 0;
    int y_hat_expl = 0;
    int y_hat_compl = 0;
};

/// Fid+ = |1[y_hat = y] - 1[y_hat_C = y]|, Fid- = |1[y_hat = y] - 1[y_hat_E = y]|.
Fidelity fidelity(const Model& model, const AttributedGraph& g, const ExplanationMask& mask, int y);

/// Uniform sample of as many nodes as `reference` selects, with all induced
/// edges and the reference's feature mask. Deterministic in (g.id, seed, draw).
ExplanationMask random_subgraph(const AttributedGraph& g, const ExplanationMask& reference, std::uint64_t seed,
                                int draw = 0);

struct MetricRecord {
    int graph_id = -1;
    MaskVariant variant = MaskVariant::Model;
    int draw = 0;
    double unf = 0.0;
    int fid_plus = 0;
    int fid_minus = 0;
    int y = 0;
    int y_hat = 0;
    int y_hat_expl = 0;
    int y_hat_compl = 0;
};

MetricRecord evaluate_mask(const Model& model, const AttributedGraph& g, const ExplanationMask& mask);

struct Aggregate {
    double unf = 0.0;
    double fid_plus = 0.0;
    double fid_minus = 0.0;
    int graphs = 0;
};

struct EvaluationOptions {
    int baseline_draws = 5;
    std::uint64_t seed = 0;
};

struct EvaluationResult {
    std::vector<MetricRecord> records;  // per graph: the model row, then one row per draw
    Aggregate model;
    Aggregate random;
    /// Per-graph values in evaluation order (random: mean over draws), for
    /// paired comparisons.
    std::vector<Aggregate> per_graph_model;
    std::vector<Aggregate> per_graph_random;
    std::vector<int> excluded_graph_ids;  // graphs without a mask
};

/// Evaluates the model masks and `baseline_draws` random subgraphs per graph.
/// Graphs are processed in ascending id order; graphs whose mask is missing
/// are listed in excluded_graph_ids.
EvaluationResult evaluate_explanations(const Model& model, std::span<const AttributedGraph> graphs,
                                       const std::vector<std::optional<ExplanationMask>>& masks,
                                       const EvaluationOptions& options);

/// Jaccard index of two node masks; 1 when both are empty.
double node_jaccard(const std::vector<bool>& a, const std::vector<bool>& b);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// CSV header graph_id,variant,unf,fid_plus,fid_minus,y,y_hat,y_hat_expl,y_hat_compl.
void write_metrics_csv(std::ostream& out, const std::vector<MetricRecord>& records);

} // namespace faithgnn::faithfulness
