#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "faithgnn/explainers/prototypes.hpp"
#include "faithgnn/explainers/subgraph_search.hpp"
#include "faithgnn/gnn/model.hpp"

namespace faithgnn::explainers {

using gnn::ExplanationMask;
using gnn::LossTerms;

/// Graph-level prototype classifier: the mean-pooled GCN embedding is
/// compared with every prototype, log-activations feed a linear head.
/// Prototypes are periodically snapped to embeddings of real training
/// subgraphs of their class.
class ProtGnnModel : public gnn::Model {
public:
    struct Config {
        int hidden = 32;
        int layers = 3;
        int per_class = 3;
        double eps = 1e-4;
        double lambda_clst = 0.1;
        double lambda_sep = 0.05;
        double lambda_div = 0.01;
        double diversity_margin = 0.3;
        double proto_init_scale = 0.1;
        int max_subgraph_nodes = 10;
        int projection_start = 30;
        int projection_interval = 10;
    };

    ProtGnnModel(int num_features, int num_classes, const Config& config, std::uint64_t seed);

    struct Forward {
        Var embedding;    // 1 x hidden
        Var sq_dist;      // 1 x M
        Var activations;  // 1 x M
        Var logits;       // 1 x C
    };
    Forward forward(Tape& tape, const AttributedGraph& g) const;

    gnn::ModelKind kind() const override { return gnn::ModelKind::ProtGnn; }
    Var logits(Tape& tape, const AttributedGraph& g) const override;
    LossTerms loss(Tape& tape, const AttributedGraph& g) const override;
    ExplanationMask explain(const AttributedGraph& g) const override;
    std::vector<Parameter*> parameters() override;
    void on_epoch_end(int epoch, std::span<const AttributedGraph> train) override;
    nlohmann::json hyperparams() const override;
    nlohmann::json extra_state() const override;
    void load_extra_state(const nlohmann::json& state) override;
    std::unique_ptr<gnn::Model> clone() const override { return std::make_unique<ProtGnnModel>(*this); }

    /// Replaces each prototype with the embedding of the closest candidate
    /// subgraph (bfs_candidates) among training graphs of its class. Classes
    /// without training graphs keep their prototypes. Returns the source of
    /// every prototype (found = false when skipped).
    const std::vector<SubgraphMatch>& project_prototypes(std::span<const AttributedGraph> train);

    /// Closest candidate subgraph of g to prototype k.
    SubgraphMatch closest_subgraph(const AttributedGraph& g, int prototype) const;

    /// Activations log((d^2+1)/(d^2+eps)) of g's embedding to every prototype.
    Eigen::RowVectorXd activations(const AttributedGraph& g) const;

    const Config& config() const { return config_; }
    const PrototypeBank& bank() const { return bank_; }
    PrototypeBank& bank() { return bank_; }
    gnn::GcnBackbone& backbone() { return backbone_; }
    const gnn::GcnBackbone& backbone() const { return backbone_; }
    Parameter& head() { return head_; }
    const std::vector<SubgraphMatch>& projection_sources() const { return sources_; }

    static Config config_from_json(const nlohmann::json& j);

private:
    Config config_;
    gnn::GcnBackbone backbone_;
    PrototypeBank bank_;
    Parameter head_;  // M x C
    std::vector<SubgraphMatch> sources_;
};

} // namespace faithgnn::explainers
