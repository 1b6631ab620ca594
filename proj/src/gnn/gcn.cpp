#include "faithgnn/gnn/gcn.hpp"

#include <algorithm>
#include <cmath>

#include "faithgnn/error.hpp"

namespace faithgnn::gnn {

namespace {

struct Term {
    double coef;
    int node;
};

} // namespace

Var gcn_propagate(const Var& h, const AttributedGraph& g, const Var* edge_weights) {
    const int n = g.num_nodes;
    const int num_edges = g.num_edges();
    if (h.rows() != n) throw ParameterError("gcn_propagate: embedding rows differ from node count");
    if (edge_weights != nullptr && (edge_weights->rows() != num_edges || edge_weights->cols() != 1)) {
        throw ParameterError("gcn_propagate: expected " + std::to_string(num_edges) + " edge weights, got " +
                             std::to_string(edge_weights->rows()) + "x" + std::to_string(edge_weights->cols()));
    }
    std::vector<double> w(static_cast<std::size_t>(num_edges), 1.0);
    if (edge_weights != nullptr) {
        for (int e = 0; e < num_edges; ++e) w[static_cast<std::size_t>(e)] = edge_weights->value()(e, 0);
    }
    const graphs::Adjacency adj = graphs::adjacency(g);

    std::vector<double> s(static_cast<std::size_t>(n));
    std::vector<double> incident;
    for (int i = 0; i < n; ++i) {
        incident.clear();
        for (auto [j, e] : adj[static_cast<std::size_t>(i)]) incident.push_back(w[static_cast<std::size_t>(e)]);
        s[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(1.0 + numerics::stable_sum(incident));
    }

    const MatrixXd ht = h.value().transpose();
    const Eigen::Index d = ht.rows();
    // Per-node term lists (self first, then neighbors). Summation order is
    // fixed by term value so results do not depend on node numbering.
    std::vector<std::vector<Term>> terms(static_cast<std::size_t>(n));
    MatrixXd out_t = MatrixXd::Zero(d, n);
    std::vector<Term> sorted;
    for (int i = 0; i < n; ++i) {
        auto& list = terms[static_cast<std::size_t>(i)];
        const double si = s[static_cast<std::size_t>(i)];
        list.push_back({si * si, i});
        for (auto [j, e] : adj[static_cast<std::size_t>(i)]) {
            list.push_back({w[static_cast<std::size_t>(e)] * si * s[static_cast<std::size_t>(j)], j});
        }
        sorted = list;
        std::sort(sorted.begin(), sorted.end(), [&ht](const Term& a, const Term& b) {
            if (a.coef != b.coef) return a.coef < b.coef;
            const double* pa = ht.col(a.node).data();
            const double* pb = ht.col(b.node).data();
            return std::lexicographical_compare(pa, pa + ht.rows(), pb, pb + ht.rows());
        });
        for (const Term& t : sorted) out_t.col(i) += t.coef * ht.col(t.node);
    }

    std::vector<Var> inputs{h};
    if (edge_weights != nullptr) inputs.push_back(*edge_weights);
    const bool weighted = edge_weights != nullptr;
    const Var wv = weighted ? *edge_weights : Var{};
    return h.tape()->record(
        out_t.transpose(), inputs,
        [h, wv, weighted, terms = std::move(terms), s = std::move(s), w = std::move(w), edges = g.edges](
            Tape& tape, const MatrixXd& grad) {
            const MatrixXd& hv = h.value();
            if (tape.requires_grad(h)) {
                MatrixXd gh = MatrixXd::Zero(hv.rows(), hv.cols());
                for (std::size_t i = 0; i < terms.size(); ++i) {
                    for (const Term& t : terms[i]) gh.row(t.node) += t.coef * grad.row(static_cast<Eigen::Index>(i));
                }
                tape.accumulate(h, gh);
            }
            if (weighted && tape.requires_grad(wv)) {
                // L = sum_kl a_kl s_k s_l <G_k, H_l>, s = d^-1/2, d_k = 1 + sum_e w_e.
                const Eigen::Index n = hv.rows();
                auto m = [&](Eigen::Index k, Eigen::Index l) { return grad.row(k).dot(hv.row(l)); };
                std::vector<double> t_sum(static_cast<std::size_t>(n), 0.0);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double sk = s[static_cast<std::size_t>(k)];
                    for (const Term& t : terms[static_cast<std::size_t>(k)]) {
                        // coef = a_kl s_k s_l, so a_kl s_l = coef / s_k.
                        t_sum[static_cast<std::size_t>(k)] += (t.coef / sk) * (m(k, t.node) + m(t.node, k));
                    }
                }
                MatrixXd gw(static_cast<Eigen::Index>(edges.size()), 1);
                for (std::size_t e = 0; e < edges.size(); ++e) {
                    const int u = edges[e].u;
                    const int v = edges[e].v;
                    const double su = s[static_cast<std::size_t>(u)];
                    const double sv = s[static_cast<std::size_t>(v)];
                    const double direct = su * sv * (m(u, v) + m(v, u));
                    const double via_u = -0.5 * su * su * su * t_sum[static_cast<std::size_t>(u)];
                    const double via_v = -0.5 * sv * sv * sv * t_sum[static_cast<std::size_t>(v)];
                    gw(static_cast<Eigen::Index>(e), 0) = direct + via_u + via_v;
                }
                tape.accumulate(wv, gw);
            }
        });
}

MatrixXd glorot(int rows, int cols, numerics::Rng& rng) {
    const double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-a, a);
    MatrixXd m(rows, cols);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = dist(rng);
    }
    return m;
}

GcnBackbone::GcnBackbone(int in_dim, int hidden, int layers, numerics::Rng& rng, const std::string& prefix)
    : in_dim_(in_dim), hidden_(hidden) {
    if (in_dim < 1 || hidden < 1 || layers < 1) throw ParameterError("GcnBackbone: dimensions must be positive");
    int prev = in_dim;
    for (int l = 0; l < layers; ++l) {
        weights_.emplace_back(prefix + "." + std::to_string(l) + ".weight", glorot(prev, hidden, rng));
        prev = hidden;
    }
}

void GcnBackbone::collect(std::vector<Parameter*>& out) {
    for (auto& w : weights_) out.push_back(&w);
}

Var GcnBackbone::forward(Tape& tape, const AttributedGraph& g, const Var* edge_weights) const {
    return forward(tape, g, tape.constant(g.features), edge_weights);
}

Var GcnBackbone::forward(Tape& tape, const AttributedGraph& g, const Var& features, const Var* edge_weights) const {
    if (features.cols() != in_dim_ && g.num_nodes > 0) {
        throw ParameterError("GcnBackbone: graph " + std::to_string(g.id) + " has " +
                             std::to_string(features.cols()) + " features, model expects " + std::to_string(in_dim_));
    }
    Var h = features;
    if (g.num_nodes == 0) return tape.constant(MatrixXd::Zero(0, hidden_));
    for (const auto& w : weights_) {
        h = numerics::relu(gcn_propagate(numerics::matmul(h, tape.parameter(w)), g, edge_weights));
    }
    return h;
}

MatrixXd gcn_forward(const AttributedGraph& g, const GcnBackbone& backbone, const Eigen::VectorXd* edge_weights) {
    Tape tape(false);
    if (edge_weights == nullptr) return backbone.forward(tape, g).value();
    Var w = tape.constant(MatrixXd(*edge_weights));
    return backbone.forward(tape, g, &w).value();
}

const char* to_string(Pooling p) { return p == Pooling::Mean ? "mean" : "max"; }

Pooling parse_pooling(const std::string& s) {
    if (s == "mean") return Pooling::Mean;
    if (s == "max") return Pooling::Max;
    throw ParameterError("unknown pooling '" + s + "'");
}

Var pool(const Var& node_embeddings, Pooling mode) {
    return mode == Pooling::Mean ? numerics::mean_rows(node_embeddings) : numerics::max_rows(node_embeddings);
}

Eigen::RowVectorXd pool(const MatrixXd& node_embeddings, Pooling mode) {
    Tape tape(false);
    return pool(tape.constant(node_embeddings), mode).value();
}

} // namespace faithgnn::gnn
