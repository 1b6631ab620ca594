#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faithgnn/gnn/gcn.hpp"
#include "faithgnn/graphs/graph.hpp"

namespace faithgnn::gnn {

using graphs::ExplanationMask;

enum class ModelKind { Gcn, Gisst, ProtGnn, PignnP, PignnT };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& s);

/// Probability vector over classes; entries clamped to >= 1e-12 and
/// renormalized.
struct LabelDistribution {
    Eigen::VectorXd probs;

    /// Index of the largest probability; ties go to the lower class index.
    int argmax() const;
    int size() const { return static_cast<int>(probs.size()); }
};

/// Clamps at the probability floor and renormalizes.
LabelDistribution make_distribution(const Eigen::VectorXd& probs);

struct LossTerms {
    Var total;
    Var logits;
};

/// Common surface of every trainable graph classifier.
class Model {
public:
    Model(int num_features, int num_classes) : num_features_(num_features), num_classes_(num_classes) {}
    virtual ~Model() = default;

    virtual ModelKind kind() const = 0;
    int num_features() const { return num_features_; }
    int num_classes() const { return num_classes_; }

    /// 1 x num_classes logits. A graph with no nodes yields zero logits.
    virtual Var logits(Tape& tape, const AttributedGraph& g) const = 0;

    /// Per-graph training objective (cross-entropy plus model terms).
    virtual LossTerms loss(Tape& tape, const AttributedGraph& g) const;

    virtual ExplanationMask explain(const AttributedGraph& g) const;

    virtual std::vector<Parameter*> parameters() = 0;
    std::vector<const Parameter*> parameters() const;

    /// Hook after each optimizer step; `epoch` counts from 1.
    virtual void on_epoch_end(int epoch, std::span<const AttributedGraph> train) {
        (void)epoch;
        (void)train;
    }

    /// Everything needed to rebuild an untrained model of the same shape.
    virtual nlohmann::json hyperparams() const = 0;
    /// Non-parameter state that must travel with a checkpoint.
    virtual nlohmann::json extra_state() const { return nlohmann::json::object(); }
    virtual void load_extra_state(const nlohmann::json& state) { (void)state; }

    virtual std::unique_ptr<Model> clone() const = 0;

protected:
    void check_width(const AttributedGraph& g) const;

private:
    int num_features_;
    int num_classes_;
};

LabelDistribution predict_distribution(const Model& model, const AttributedGraph& g);
int predict_label(const Model& model, const AttributedGraph& g);

/// Fraction of graphs whose predicted label equals the true label.
double evaluate_accuracy(const Model& model, std::span<const AttributedGraph> graphs);

/// Parameter values plus extra state, for snapshots and restores.
struct ModelState {
    std::vector<MatrixXd> values;
    nlohmann::json extra;
};

ModelState capture_state(const Model& model);
void restore_state(Model& model, const ModelState& state);

/// GCN + pooling + linear head; the plain, non-explaining baseline.
class GcnClassifier : public Model {
public:
    struct Config {
        int hidden = 32;
        int layers = 3;
        Pooling pooling = Pooling::Mean;
    };

    GcnClassifier(int num_features, int num_classes, const Config& config, std::uint64_t seed);

    ModelKind kind() const override { return ModelKind::Gcn; }
    Var logits(Tape& tape, const AttributedGraph& g) const override;
    std::vector<Parameter*> parameters() override;
    nlohmann::json hyperparams() const override;
    std::unique_ptr<Model> clone() const override { return std::make_unique<GcnClassifier>(*this); }

    GcnBackbone& backbone() { return backbone_; }
    Parameter& head() { return head_; }

private:
    Config config_;
    GcnBackbone backbone_;
    Parameter head_;
};

} // namespace faithgnn::gnn
