#include "faithgnn/explainers/pignn.hpp"

#include <cmath>

#include "faithgnn/error.hpp"

namespace faithgnn::explainers {

namespace ops = numerics;

PignnModel::PignnModel(int num_features, int num_classes, PignnVariant variant, const Config& config,
                       std::uint64_t seed)
    : gnn::Model(num_features, num_classes), variant_(variant), config_(config) {
    if (config.tau < 0.0 || config.tau > 1.0) throw ParameterError("PIGNN: tau must lie in [0, 1]");
    numerics::Rng rng = numerics::make_rng(seed);
    backbone_ = gnn::GcnBackbone(num_features, config.hidden, config.layers, rng);
    bank_ = PrototypeBank(num_classes, config.per_class, config.hidden, config.proto_init_scale, rng);
    head_ = Parameter("head.weight", bank_.default_head());
}

Var PignnModel::similarities(Tape& tape, const AttributedGraph& g) const {
    check_width(g);
    const Var h = backbone_.forward(tape, g);
    const Var protos = tape.parameter(bank_.prototypes);
    if (variant_ == PignnVariant::P) return log_activation(ops::pairwise_sq_dist(h, protos), config_.eps);
    std::vector<Var> parts;
    for (int c = 0; c < bank_.num_classes(); ++c) {
        parts.push_back(tesnet_similarity(h, ops::slice_rows(protos, bank_.first_of(c), bank_.per_class)));
    }
    return ops::concat_cols(parts);
}

MatrixXd PignnModel::similarities(const AttributedGraph& g) const {
    Tape tape(false);
    return similarities(tape, g).value();
}

Var PignnModel::activations(Tape& tape, const AttributedGraph& g) const {
    return ops::max_rows(similarities(tape, g));
}

Var PignnModel::logits(Tape& tape, const AttributedGraph& g) const {
    check_width(g);
    if (g.num_nodes == 0) return tape.constant(MatrixXd::Zero(1, num_classes()));
    return ops::matmul(activations(tape, g), tape.parameter(head_));
}

LossTerms PignnModel::loss(Tape& tape, const AttributedGraph& g) const {
    const Var z = logits(tape, g);
    Var total = ops::cross_entropy(z, g.label);
    if (variant_ == PignnVariant::T && config_.lambda_orth != 0.0) {
        const Var penalty = orthonormality_penalty(tape.parameter(bank_.prototypes), bank_.per_class);
        total = ops::add(total, ops::scale(penalty, config_.lambda_orth));
    }
    return {total, z};
}

std::vector<bool> select_prototype_nodes(const MatrixXd& similarities, const std::vector<int>& columns, double tau,
                                         PignnVariant variant) {
    const Eigen::Index n = similarities.rows();
    std::vector<bool> keep(static_cast<std::size_t>(n), false);
    if (n == 0) return keep;
    for (int k : columns) {
        if (k < 0 || k >= similarities.cols()) throw ParameterError("select_prototype_nodes: column out of range");
        Eigen::VectorXd score = similarities.col(k);
        if (variant == PignnVariant::T) score.array() -= score.minCoeff();
        Eigen::Index best = 0;
        for (Eigen::Index v = 1; v < n; ++v) {
            if (score(v) > score(best)) best = v;
        }
        const double cut = tau * score(best);
        bool any = false;
        for (Eigen::Index v = 0; v < n; ++v) {
            if (score(v) >= cut) {
                keep[static_cast<std::size_t>(v)] = true;
                any = true;
            }
        }
        if (!any) keep[static_cast<std::size_t>(best)] = true;
    }
    return keep;
}

ExplanationMask PignnModel::explain(const AttributedGraph& g) const {
    check_width(g);
    if (g.num_nodes == 0) return graphs::full_mask(g);
    Tape tape(false);
    const MatrixXd s = similarities(tape, g).value();
    const int predicted = gnn::predict_label(*this, g);
    std::vector<int> columns;
    for (int k = bank_.first_of(predicted); k < bank_.first_of(predicted) + bank_.per_class; ++k) columns.push_back(k);
    const std::vector<bool> keep = select_prototype_nodes(s, columns, config_.tau, variant_);
    std::vector<int> nodes;
    for (int v = 0; v < g.num_nodes; ++v) {
        if (keep[static_cast<std::size_t>(v)]) nodes.push_back(v);
    }
    return graphs::induced_mask(g, nodes);
}

std::vector<Parameter*> PignnModel::parameters() {
    std::vector<Parameter*> out;
    backbone_.collect(out);
    out.push_back(&bank_.prototypes);
    out.push_back(&head_);
    return out;
}

nlohmann::json PignnModel::hyperparams() const {
    return {{"hidden", config_.hidden},
            {"layers", config_.layers},
            {"per_class", config_.per_class},
            {"eps", config_.eps},
            {"lambda_orth", config_.lambda_orth},
            {"proto_init_scale", config_.proto_init_scale},
            {"tau", config_.tau}};
}

PignnModel::Config PignnModel::config_from_json(const nlohmann::json& j) {
    Config c;
    c.hidden = j.value("hidden", c.hidden);
    c.layers = j.value("layers", c.layers);
    c.per_class = j.value("per_class", c.per_class);
    c.eps = j.value("eps", c.eps);
    c.lambda_orth = j.value("lambda_orth", c.lambda_orth);
    c.proto_init_scale = j.value("proto_init_scale", c.proto_init_scale);
    c.tau = j.value("tau", c.tau);
    return c;
}

} // namespace faithgnn::explainers
