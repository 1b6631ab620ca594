#pragma once

#include <cstdint>
#include <memory>

#include "faithgnn/gnn/model.hpp"

namespace faithgnn::explainers {

using gnn::AttributedGraph;
using numerics::MatrixXd;
using numerics::Parameter;
using numerics::Tape;
using numerics::Var;
using gnn::ExplanationMask;
using gnn::LossTerms;

/// Information-constrained classifier. Sigmoid feature gates scale the
/// input columns; a first GCN pass scores each edge from its endpoint
/// embeddings; a second pass propagates along score-weighted edges and the
/// pooled result feeds a linear head. L1 and entropy penalties push both
/// gates and edge scores toward sparse 0/1 values.
class GisstModel : public gnn::Model {
public:
    struct Config {
        int hidden = 32;
        int layers = 3;
        gnn::Pooling pooling = gnn::Pooling::Max;
        double lambda_edge_l1 = 0.01;
        double lambda_edge_ent = 0.1;
        double lambda_feat_l1 = 0.01;
        double lambda_feat_ent = 0.1;
        int node_budget = 6;
    };

    GisstModel(int num_features, int num_classes, const Config& config, std::uint64_t seed);

    struct Pass {
        Var gates;        // 1 x F
        Var edge_scores;  // |E| x 1; invalid when the graph has no edges
        Var logits;       // 1 x C
    };

    /// Edge score s_uv = sigmoid((a^T [h_u ; h_v] + a^T [h_v ; h_u]) / 2),
    /// symmetric in the endpoints.
    Pass pass(Tape& tape, const AttributedGraph& g) const;

    gnn::ModelKind kind() const override { return gnn::ModelKind::Gisst; }
    Var logits(Tape& tape, const AttributedGraph& g) const override;
    LossTerms loss(Tape& tape, const AttributedGraph& g) const override;
    ExplanationMask explain(const AttributedGraph& g) const override;
    std::vector<Parameter*> parameters() override;
    nlohmann::json hyperparams() const override;
    std::unique_ptr<gnn::Model> clone() const override { return std::make_unique<GisstModel>(*this); }

    const Config& config() const { return config_; }
    Config& mutable_config() { return config_; }
    Eigen::VectorXd edge_scores(const AttributedGraph& g) const;
    Eigen::VectorXd feature_gates() const;

    gnn::GcnBackbone& backbone() { return backbone_; }
    Parameter& edge_attention() { return edge_attention_; }
    Parameter& feature_logits() { return feature_logits_; }
    Parameter& head() { return head_; }

    static Config config_from_json(const nlohmann::json& j);

private:
    Config config_;
    gnn::GcnBackbone backbone_;
    Parameter edge_attention_;  // 2*hidden x 1
    Parameter feature_logits_;  // 1 x F
    Parameter head_;            // hidden x C
};

/// Greedy top-edge selection: edges by descending score (lower index on
/// ties) until the selected endpoints cover `node_budget` nodes; the last
/// edge may overshoot by one node. Graphs with at most `node_budget` nodes
/// are fully selected. Features with gate >= 0.5 are kept.
ExplanationMask select_top_edges(const AttributedGraph& g, const Eigen::VectorXd& edge_scores,
                                 const Eigen::VectorXd& feature_gates, int node_budget);

} // namespace faithgnn::explainers
