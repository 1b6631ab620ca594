#pragma once

#include <string>
#include <vector>

#include "faithgnn/graphs/graph.hpp"
#include "faithgnn/numerics/ops.hpp"
#include "faithgnn/numerics/rng.hpp"
#include "faithgnn/numerics/tape.hpp"

namespace faithgnn::gnn {

using graphs::AttributedGraph;
using numerics::MatrixXd;
using numerics::Parameter;
using numerics::Tape;
using numerics::Var;

/// Symmetric-normalized propagation with self-loops:
///   out = D^-1/2 (I + A_w) D^-1/2 h,   D = diag(1 + sum of incident weights).
/// `edge_weights` (|E| x 1, optional) scales each edge entry of A before
/// normalization; without it every edge has weight 1.
Var gcn_propagate(const Var& h, const AttributedGraph& g, const Var* edge_weights = nullptr);

/// Stack of GCN layers H <- ReLU(propagate(H W)), no bias.
class GcnBackbone {
public:
    GcnBackbone() = default;
    GcnBackbone(int in_dim, int hidden, int layers, numerics::Rng& rng, const std::string& prefix = "gcn");

    int in_dim() const { return in_dim_; }
    int hidden() const { return hidden_; }
    int layers() const { return static_cast<int>(weights_.size()); }

    std::vector<Parameter>& weights() { return weights_; }
    const std::vector<Parameter>& weights() const { return weights_; }
    void collect(std::vector<Parameter*>& out);

    /// Node embeddings (num_nodes x hidden) of the graph's own features.
    Var forward(Tape& tape, const AttributedGraph& g, const Var* edge_weights = nullptr) const;
    /// Same, with caller-supplied input features (num_nodes x in_dim).
    Var forward(Tape& tape, const AttributedGraph& g, const Var& features, const Var* edge_weights) const;

private:
    int in_dim_ = 0;
    int hidden_ = 0;
    std::vector<Parameter> weights_;
};

/// Value-only convenience wrapper over GcnBackbone::forward.
MatrixXd gcn_forward(const AttributedGraph& g, const GcnBackbone& backbone,
                     const Eigen::VectorXd* edge_weights = nullptr);

enum class Pooling { Mean, Max };

const char* to_string(Pooling p);
Pooling parse_pooling(const std::string& s);

/// Column-wise mean or max over nodes; zero row for a graph with no nodes.
Var pool(const Var& node_embeddings, Pooling mode);
Eigen::RowVectorXd pool(const MatrixXd& node_embeddings, Pooling mode);

/// Glorot-uniform initialized matrix.
MatrixXd glorot(int rows, int cols, numerics::Rng& rng);

} // namespace faithgnn::gnn
