#include "faithgnn/explainers/protgnn.hpp"

#include <iostream>

#include "faithgnn/error.hpp"

namespace faithgnn::explainers {

namespace ops = numerics;

ProtGnnModel::ProtGnnModel(int num_features, int num_classes, const Config& config, std::uint64_t seed)
    : gnn::Model(num_features, num_classes), config_(config) {
    numerics::Rng rng = numerics::make_rng(seed);
    backbone_ = gnn::GcnBackbone(num_features, config.hidden, config.layers, rng);
    bank_ = PrototypeBank(num_classes, config.per_class, config.hidden, config.proto_init_scale, rng);
    head_ = Parameter("head.weight", bank_.default_head());
    sources_.resize(static_cast<std::size_t>(bank_.size()));
}

ProtGnnModel::Forward ProtGnnModel::forward(Tape& tape, const AttributedGraph& g) const {
    check_width(g);
    Forward f;
    if (g.num_nodes == 0) {
        // No evidence: zero activations, hence zero logits.
        f.activations = tape.constant(MatrixXd::Zero(1, bank_.size()));
        f.logits = tape.constant(MatrixXd::Zero(1, num_classes()));
        return f;
    }
    f.embedding = gnn::pool(backbone_.forward(tape, g), gnn::Pooling::Mean);
    f.sq_dist = ops::pairwise_sq_dist(f.embedding, tape.parameter(bank_.prototypes));
    f.activations = log_activation(f.sq_dist, config_.eps);
    f.logits = ops::matmul(f.activations, tape.parameter(head_));
    return f;
}

Var ProtGnnModel::logits(Tape& tape, const AttributedGraph& g) const { return forward(tape, g).logits; }

LossTerms ProtGnnModel::loss(Tape& tape, const AttributedGraph& g) const {
    Forward f = forward(tape, g);
    Var total = ops::cross_entropy(f.logits, g.label);
    if (!f.sq_dist.valid()) return {total, f.logits};
    if (config_.lambda_clst != 0.0) {
        total = ops::add(total, ops::scale(ops::masked_min(f.sq_dist, bank_.mask_of(g.label)), config_.lambda_clst));
    }
    if (config_.lambda_sep != 0.0 && bank_.num_classes() > 1) {
        total = ops::sub(total, ops::scale(ops::masked_min(f.sq_dist, bank_.mask_not_of(g.label)), config_.lambda_sep));
    }
    if (config_.lambda_div != 0.0) {
        const int m = bank_.size();
        MatrixXd same(m, m);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                same(a, b) = (a != b && bank_.class_of[static_cast<std::size_t>(a)] ==
                                            bank_.class_of[static_cast<std::size_t>(b)])
                                 ? 1.0
                                 : 0.0;
            }
        }
        const Var unit = ops::normalize_rows(tape.parameter(bank_.prototypes));
        const Var cosine = ops::matmul(unit, ops::transpose(unit));
        const Var hinge = ops::relu(ops::add_scalar(cosine, -config_.diversity_margin));
        const Var div = ops::sum(ops::hadamard(hinge, tape.constant(same)));
        total = ops::add(total, ops::scale(div, config_.lambda_div));
    }
    return {total, f.logits};
}

Eigen::RowVectorXd ProtGnnModel::activations(const AttributedGraph& g) const {
    Tape tape(false);
    return forward(tape, g).activations.value();
}

void ProtGnnModel::on_epoch_end(int epoch, std::span<const AttributedGraph> train) {
    if (config_.projection_interval <= 0) return;
    if (epoch >= config_.projection_start && (epoch - config_.projection_start) % config_.projection_interval == 0) {
        project_prototypes(train);
    }
}

const std::vector<SubgraphMatch>& ProtGnnModel::project_prototypes(std::span<const AttributedGraph> train) {
    const int m = bank_.size();
    std::vector<SubgraphMatch> best(static_cast<std::size_t>(m));
    std::vector<Eigen::RowVectorXd> winner(static_cast<std::size_t>(m));
    const MatrixXd protos = bank_.prototypes.value;
    for (const auto& g : train) {
        if (g.label < 0 || g.label >= bank_.num_classes()) continue;
        const auto candidates = bfs_candidates(g, config_.max_subgraph_nodes);
        for (const auto& nodes : candidates) {
            const Eigen::RowVectorXd z = subgraph_embedding(g, nodes, backbone_);
            for (int k = bank_.first_of(g.label); k < bank_.first_of(g.label) + bank_.per_class; ++k) {
                SubgraphMatch cand{g.id, nodes, (z - protos.row(k)).squaredNorm(), true};
                auto& b = best[static_cast<std::size_t>(k)];
                if (better_match(cand, b)) {
                    b = std::move(cand);
                    winner[static_cast<std::size_t>(k)] = z;
                }
            }
        }
    }
    for (int k = 0; k < m; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        if (!best[idx].found) {
            std::cerr << "warning: no training graphs for class " << bank_.class_of[idx] << "; prototype " << k
                      << " not projected\n";
            best[idx] = sources_.size() == best.size() ? sources_[idx] : SubgraphMatch{};
            continue;
        }
        bank_.prototypes.value.row(k) = winner[idx];
    }
    sources_ = std::move(best);
    return sources_;
}

SubgraphMatch ProtGnnModel::closest_subgraph(const AttributedGraph& g, int prototype) const {
    SubgraphMatch best;
    const auto candidates = bfs_candidates(g, config_.max_subgraph_nodes);
    const Eigen::RowVectorXd p = bank_.prototypes.value.row(prototype);
    for (const auto& nodes : candidates) {
        SubgraphMatch cand{g.id, nodes, (subgraph_embedding(g, nodes, backbone_) - p).squaredNorm(), true};
        if (better_match(cand, best)) best = std::move(cand);
    }
    return best;
}

ExplanationMask ProtGnnModel::explain(const AttributedGraph& g) const {
    check_width(g);
    if (g.num_nodes == 0) return graphs::full_mask(g);
    const Eigen::RowVectorXd act = activations(g);
    const int predicted = gnn::predict_label(*this, g);
    int top = bank_.first_of(predicted);
    for (int k = top + 1; k < bank_.first_of(predicted) + bank_.per_class; ++k) {
        if (act(k) > act(top)) top = k;
    }
    const SubgraphMatch match = closest_subgraph(g, top);
    return graphs::induced_mask(g, match.nodes);
}

std::vector<Parameter*> ProtGnnModel::parameters() {
    std::vector<Parameter*> out;
    backbone_.collect(out);
    out.push_back(&bank_.prototypes);
    out.push_back(&head_);
    return out;
}

nlohmann::json ProtGnnModel::hyperparams() const {
    return {{"hidden", config_.hidden},
            {"layers", config_.layers},
            {"per_class", config_.per_class},
            {"eps", config_.eps},
            {"lambda_clst", config_.lambda_clst},
            {"lambda_sep", config_.lambda_sep},
            {"lambda_div", config_.lambda_div},
            {"diversity_margin", config_.diversity_margin},
            {"proto_init_scale", config_.proto_init_scale},
            {"max_subgraph_nodes", config_.max_subgraph_nodes},
            {"projection_start", config_.projection_start},
            {"projection_interval", config_.projection_interval}};
}

nlohmann::json ProtGnnModel::extra_state() const {
    nlohmann::json sources = nlohmann::json::array();
    for (const auto& s : sources_) {
        sources.push_back({{"found", s.found}, {"graph_id", s.graph_id}, {"nodes", s.nodes}, {"distance", s.distance}});
    }
    return {{"projection_sources", sources}};
}

void ProtGnnModel::load_extra_state(const nlohmann::json& state) {
    if (!state.contains("projection_sources")) return;
    sources_.clear();
    for (const auto& s : state.at("projection_sources")) {
        SubgraphMatch m;
        m.found = s.at("found").get<bool>();
        m.graph_id = s.at("graph_id").get<int>();
        m.nodes = s.at("nodes").get<std::vector<int>>();
        m.distance = s.at("distance").get<double>();
        sources_.push_back(std::move(m));
    }
}

ProtGnnModel::Config ProtGnnModel::config_from_json(const nlohmann::json& j) {
    Config c;
    c.hidden = j.value("hidden", c.hidden);
    c.layers = j.value("layers", c.layers);
    c.per_class = j.value("per_class", c.per_class);
    c.eps = j.value("eps", c.eps);
    c.lambda_clst = j.value("lambda_clst", c.lambda_clst);
    c.lambda_sep = j.value("lambda_sep", c.lambda_sep);
    c.lambda_div = j.value("lambda_div", c.lambda_div);
    c.diversity_margin = j.value("diversity_margin", c.diversity_margin);
    c.proto_init_scale = j.value("proto_init_scale", c.proto_init_scale);
    c.max_subgraph_nodes = j.value("max_subgraph_nodes", c.max_subgraph_nodes);
    c.projection_start = j.value("projection_start", c.projection_start);
    c.projection_interval = j.value("projection_interval", c.projection_interval);
    return c;
}

} // namespace faithgnn::explainers
