#pragma once

#include <cstdint>
#include <memory>

#include "faithgnn/explainers/prototypes.hpp"
#include "faithgnn/gnn/model.hpp"

namespace faithgnn::explainers {

using gnn::AttributedGraph;
using gnn::ExplanationMask;
using gnn::LossTerms;

enum class PignnVariant { P, T };

/// Node-level prototype classifier. Every last-layer node embedding is
/// scored against every prototype; graph activations are the per-prototype
/// maxima over nodes and feed a linear head.
///
/// Variant P scores log((d^2+1)/(d^2+eps)). Variant T projects the node
/// onto its class subspace and scores -||proj - p||^2, with an
/// orthonormality penalty on each class's prototype matrix.
class PignnModel : public gnn::Model {
public:
    struct Config {
        int hidden = 32;
        int layers = 3;
        int per_class = 3;
        double eps = 1e-4;
        double lambda_orth = 1e-3;
        double proto_init_scale = 0.1;
        double tau = 0.8;
    };

    PignnModel(int num_features, int num_classes, PignnVariant variant, const Config& config, std::uint64_t seed);

    /// n x M similarity matrix, columns ordered like the prototype bank.
    Var similarities(Tape& tape, const AttributedGraph& g) const;
    MatrixXd similarities(const AttributedGraph& g) const;

    gnn::ModelKind kind() const override {
        return variant_ == PignnVariant::P ? gnn::ModelKind::PignnP : gnn::ModelKind::PignnT;
    }
    Var logits(Tape& tape, const AttributedGraph& g) const override;
    LossTerms loss(Tape& tape, const AttributedGraph& g) const override;
    ExplanationMask explain(const AttributedGraph& g) const override;
    std::vector<Parameter*> parameters() override;
    nlohmann::json hyperparams() const override;
    std::unique_ptr<gnn::Model> clone() const override { return std::make_unique<PignnModel>(*this); }

    PignnVariant variant() const { return variant_; }
    const Config& config() const { return config_; }
    Config& mutable_config() { return config_; }
    const PrototypeBank& bank() const { return bank_; }
    PrototypeBank& bank() { return bank_; }
    gnn::GcnBackbone& backbone() { return backbone_; }
    Parameter& head() { return head_; }

    static Config config_from_json(const nlohmann::json& j);

private:
    Var activations(Tape& tape, const AttributedGraph& g) const;

    PignnVariant variant_;
    Config config_;
    gnn::GcnBackbone backbone_;
    PrototypeBank bank_;
    Parameter head_;  // M x C
};

/// Node selection from a similarity matrix: for each prototype column k in
/// `columns`, nodes with score(v,k) >= tau * max_v score(v,k) are kept, where
/// score is S for variant P and S - min_v S for variant T (whose
/// similarities are non-positive). Returns the union as a node mask.
std::vector<bool> select_prototype_nodes(const MatrixXd& similarities, const std::vector<int>& columns, double tau,
                                         PignnVariant variant);

} // namespace faithgnn::explainers
