#include "faithgnn/explainers/gisst.hpp"

#include <algorithm>
#include <numeric>

#include "faithgnn/error.hpp"

namespace faithgnn::explainers {

namespace ops = numerics;

GisstModel::GisstModel(int num_features, int num_classes, const Config& config, std::uint64_t seed)
    : gnn::Model(num_features, num_classes), config_(config) {
    if (config.node_budget < 2) throw ParameterError("GISST: node budget must be at least 2");
    numerics::Rng rng = numerics::make_rng(seed);
    backbone_ = gnn::GcnBackbone(num_features, config.hidden, config.layers, rng);
    // Embeddings are non-negative, so a non-negative vector starts every edge at score >= 0.5.
    edge_attention_ = Parameter("gisst.edge_attention", gnn::glorot(2 * config.hidden, 1, rng).cwiseAbs());
    feature_logits_ = Parameter("gisst.feature_logits", MatrixXd::Constant(1, num_features, 2.0));
    head_ = Parameter("head.weight", gnn::glorot(config.hidden, num_classes, rng));
}

GisstModel::Pass GisstModel::pass(Tape& tape, const AttributedGraph& g) const {
    check_width(g);
    Pass p;
    p.gates = ops::sigmoid(tape.parameter(feature_logits_));
    if (g.num_nodes == 0) {
        p.logits = tape.constant(MatrixXd::Zero(1, num_classes()));
        return p;
    }
    const Var x = ops::mul_row_broadcast(tape.constant(g.features), p.gates);
    const Var h = backbone_.forward(tape, g, x, nullptr);
    const Var* weights = nullptr;
    if (g.num_edges() > 0) {
        std::vector<Eigen::Index> us;
        std::vector<Eigen::Index> vs;
        for (const auto& e : g.edges) {
            us.push_back(e.u);
            vs.push_back(e.v);
        }
        const Var hu = ops::gather_rows(h, us);
        const Var hv = ops::gather_rows(h, vs);
        const Var a = tape.parameter(edge_attention_);
        const Var forward_logit = ops::matmul(ops::concat_cols(hu, hv), a);
        const Var reverse_logit = ops::matmul(ops::concat_cols(hv, hu), a);
        p.edge_scores = ops::sigmoid(ops::scale(ops::add(forward_logit, reverse_logit), 0.5));
        weights = &p.edge_scores;
    }
    const Var h2 = backbone_.forward(tape, g, x, weights);
    p.logits = ops::matmul(gnn::pool(h2, config_.pooling), tape.parameter(head_));
    return p;
}

Var GisstModel::logits(Tape& tape, const AttributedGraph& g) const { return pass(tape, g).logits; }

LossTerms GisstModel::loss(Tape& tape, const AttributedGraph& g) const {
    Pass p = pass(tape, g);
    Var total = ops::cross_entropy(p.logits, g.label);
    if (p.edge_scores.valid()) {
        total = ops::add(total, ops::scale(ops::mean(p.edge_scores), config_.lambda_edge_l1));
        total = ops::add(total, ops::scale(ops::mean(ops::binary_entropy(p.edge_scores)), config_.lambda_edge_ent));
    }
    total = ops::add(total, ops::scale(ops::mean(p.gates), config_.lambda_feat_l1));
    total = ops::add(total, ops::scale(ops::mean(ops::binary_entropy(p.gates)), config_.lambda_feat_ent));
    return {total, p.logits};
}

Eigen::VectorXd GisstModel::edge_scores(const AttributedGraph& g) const {
    Tape tape(false);
    Pass p = pass(tape, g);
    if (!p.edge_scores.valid()) return Eigen::VectorXd(0);
    return p.edge_scores.value().col(0);
}

Eigen::VectorXd GisstModel::feature_gates() const {
    Tape tape(false);
    return ops::sigmoid(tape.parameter(feature_logits_)).value().row(0).transpose();
}

ExplanationMask select_top_edges(const AttributedGraph& g, const Eigen::VectorXd& edge_scores,
                                 const Eigen::VectorXd& feature_gates, int node_budget) {
    if (edge_scores.size() != g.num_edges()) throw ParameterError("select_top_edges: score count differs from edges");
    if (feature_gates.size() != g.num_features()) throw ParameterError("select_top_edges: gate count differs");
    ExplanationMask m;
    m.variant = graphs::MaskVariant::Model;
    m.feature_mask.resize(static_cast<std::size_t>(g.num_features()));
    for (Eigen::Index f = 0; f < feature_gates.size(); ++f) m.feature_mask[static_cast<std::size_t>(f)] = feature_gates(f) >= 0.5;
    if (g.num_nodes <= node_budget) {
        m.node_mask.assign(static_cast<std::size_t>(g.num_nodes), true);
        m.edge_mask.assign(g.edges.size(), true);
        return m;
    }
    m.node_mask.assign(static_cast<std::size_t>(g.num_nodes), false);
    m.edge_mask.assign(g.edges.size(), false);
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return edge_scores(a) > edge_scores(b); });
    int covered = 0;
    for (int e : order) {
        if (covered >= node_budget) break;
        m.edge_mask[static_cast<std::size_t>(e)] = true;
        for (int v : {g.edges[static_cast<std::size_t>(e)].u, g.edges[static_cast<std::size_t>(e)].v}) {
            if (!m.node_mask[static_cast<std::size_t>(v)]) {
                m.node_mask[static_cast<std::size_t>(v)] = true;
                ++covered;
            }
        }
    }
    // Isolated nodes can leave the budget unmet; pad in index order.
    for (int v = 0; v < g.num_nodes && covered < node_budget; ++v) {
        if (!m.node_mask[static_cast<std::size_t>(v)]) {
            m.node_mask[static_cast<std::size_t>(v)] = true;
            ++covered;
        }
    }
    return m;
}

ExplanationMask GisstModel::explain(const AttributedGraph& g) const {
    Tape tape(false);
    Pass p = pass(tape, g);
    const Eigen::VectorXd scores = p.edge_scores.valid() ? Eigen::VectorXd(p.edge_scores.value().col(0))
                                                         : Eigen::VectorXd(0);
    const Eigen::VectorXd gates = p.gates.value().row(0).transpose();
    return select_top_edges(g, scores, gates, config_.node_budget);
}

std::vector<Parameter*> GisstModel::parameters() {
    std::vector<Parameter*> out;
    backbone_.collect(out);
    out.push_back(&edge_attention_);
    out.push_back(&feature_logits_);
    out.push_back(&head_);
    return out;
}

nlohmann::json GisstModel::hyperparams() const {
    return {{"hidden", config_.hidden},
            {"layers", config_.layers},
            {"pooling", gnn::to_string(config_.pooling)},
            {"lambda_edge_l1", config_.lambda_edge_l1},
            {"lambda_edge_ent", config_.lambda_edge_ent},
            {"lambda_feat_l1", config_.lambda_feat_l1},
            {"lambda_feat_ent", config_.lambda_feat_ent},
            {"node_budget", config_.node_budget}};
}

GisstModel::Config GisstModel::config_from_json(const nlohmann::json& j) {
    Config c;
    c.hidden = j.value("hidden", c.hidden);
    c.layers = j.value("layers", c.layers);
    c.pooling = gnn::parse_pooling(j.value("pooling", std::string(gnn::to_string(c.pooling))));
    c.lambda_edge_l1 = j.value("lambda_edge_l1", c.lambda_edge_l1);
    c.lambda_edge_ent = j.value("lambda_edge_ent", c.lambda_edge_ent);
    c.lambda_feat_l1 = j.value("lambda_feat_l1", c.lambda_feat_l1);
    c.lambda_feat_ent = j.value("lambda_feat_ent", c.lambda_feat_ent);
    c.node_budget = j.value("node_budget", c.node_budget);
    return c;
}

} // namespace faithgnn::explainers
