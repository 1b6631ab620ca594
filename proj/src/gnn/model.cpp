#include "faithgnn/gnn/model.hpp"

#include <algorithm>

#include "faithgnn/error.hpp"

namespace faithgnn::gnn {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Gcn: return "GCN";
        case ModelKind::Gisst: return "GISST";
        case ModelKind::ProtGnn: return "ProtGNN";
        case ModelKind::PignnP: return "PIGNN+P";
        case ModelKind::PignnT: return "PIGNN+T";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& s) {
    for (ModelKind k : {ModelKind::Gcn, ModelKind::Gisst, ModelKind::ProtGnn, ModelKind::PignnP, ModelKind::PignnT}) {
        if (s == to_string(k)) return k;
    }
    throw ParameterError("unknown model kind '" + s + "'");
}

int LabelDistribution::argmax() const {
    int best = 0;
    for (int c = 1; c < probs.size(); ++c) {
        if (probs(c) > probs(best)) best = c;
    }
    return best;
}

LabelDistribution make_distribution(const Eigen::VectorXd& probs) {
    LabelDistribution d;
    d.probs = probs.cwiseMax(numerics::kProbabilityFloor);
    d.probs /= d.probs.sum();
    return d;
}

LossTerms Model::loss(Tape& tape, const AttributedGraph& g) const {
    Var z = logits(tape, g);
    return {numerics::cross_entropy(z, g.label), z};
}

ExplanationMask Model::explain(const AttributedGraph& g) const {
    (void)g;
    throw StateError(to_string(kind()) + " does not produce explanations");
}

std::vector<const Parameter*> Model::parameters() const {
    auto ps = const_cast<Model*>(this)->parameters();
    return {ps.begin(), ps.end()};
}

void Model::check_width(const AttributedGraph& g) const {
    if (g.num_nodes > 0 && g.num_features() != num_features_) {
        throw ParameterError("graph " + std::to_string(g.id) + " has " + std::to_string(g.num_features()) +
                             " features, model expects " + std::to_string(num_features_));
    }
}

LabelDistribution predict_distribution(const Model& model, const AttributedGraph& g) {
    if (g.num_nodes > 0 && g.num_features() != model.num_features()) {
        throw ParameterError("predict_distribution: graph " + std::to_string(g.id) + " has " +
                             std::to_string(g.num_features()) + " features, model expects " +
                             std::to_string(model.num_features()));
    }
    Tape tape(false);
    const MatrixXd p = numerics::softmax_rows_value<double>(model.logits(tape, g).value());
    return make_distribution(p.row(0).transpose());
}

int predict_label(const Model& model, const AttributedGraph& g) { return predict_distribution(model, g).argmax(); }

double evaluate_accuracy(const Model& model, std::span<const AttributedGraph> graphs) {
    if (graphs.empty()) throw ParameterError("evaluate_accuracy: empty split");
    long correct = 0;
    for (const auto& g : graphs) correct += predict_label(model, g) == g.label ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(graphs.size());
}

ModelState capture_state(const Model& model) {
    ModelState s;
    for (const Parameter* p : model.parameters()) s.values.push_back(p->value);
    s.extra = model.extra_state();
    return s;
}

void restore_state(Model& model, const ModelState& state) {
    auto ps = model.parameters();
    if (ps.size() != state.values.size()) throw ParameterError("restore_state: parameter count differs");
    for (std::size_t i = 0; i < ps.size(); ++i) ps[i]->value = state.values[i];
    model.load_extra_state(state.extra);
}

GcnClassifier::GcnClassifier(int num_features, int num_classes, const Config& config, std::uint64_t seed)
    : Model(num_features, num_classes), config_(config) {
    numerics::Rng rng = numerics::make_rng(seed);
    backbone_ = GcnBackbone(num_features, config.hidden, config.layers, rng);
    head_ = Parameter("head.weight", glorot(config.hidden, num_classes, rng));
}

Var GcnClassifier::logits(Tape& tape, const AttributedGraph& g) const {
    check_width(g);
    Var h = backbone_.forward(tape, g);
    return numerics::matmul(pool(h, config_.pooling), tape.parameter(head_));
}

std::vector<Parameter*> GcnClassifier::parameters() {
    std::vector<Parameter*> out;
    backbone_.collect(out);
    out.push_back(&head_);
    return out;
}

nlohmann::json GcnClassifier::hyperparams() const {
    return {{"hidden", config_.hidden}, {"layers", config_.layers}, {"pooling", to_string(config_.pooling)}};
}

} // namespace faithgnn::gnn
