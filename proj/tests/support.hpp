#pragma once

#include <vector>

#include "faithgnn/gnn/model.hpp"
#include "faithgnn/graphs/generators.hpp"
#include "faithgnn/numerics/gradcheck.hpp"

namespace faithgnn::testing {

/// Path graph on n nodes with a constant one-hot feature row.
inline graphs::AttributedGraph path_graph(int id, int n, int hot, int label, int num_features = 2) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, num_features);
    x.col(hot).setOnes();
    return graphs::make_graph(id, n, e, x, label);
}

/// Three small graphs from a generated Ba2Motif sample.
inline std::vector<graphs::AttributedGraph> toy_batch() {
    graphs::Ba2MotifOptions opt;
    opt.base_nodes = 8;
    const graphs::Dataset ds = graphs::generate_ba2motif(4, 13, opt);
    return {ds.graphs[0], ds.graphs[1], ds.graphs[2]};
}

/// Finite-difference check of the mean training loss over `batch`.
inline numerics::GradCheckReport check_model_gradients(gnn::Model& model,
                                                        const std::vector<graphs::AttributedGraph>& batch,
                                                        const numerics::GradCheckOptions& opt = {}) {
    std::vector<numerics::Parameter*> params = model.parameters();
    const std::function<numerics::Var(numerics::Tape&)> build = [&](numerics::Tape& tape) {
        numerics::Var total;
        for (const auto& g : batch) {
            const numerics::Var l = model.loss(tape, g).total;
            total = total.valid() ? numerics::add(total, l) : l;
        }
        return numerics::scale(total, 1.0 / static_cast<double>(batch.size()));
    };
    return numerics::finite_diff_check<double>(build, std::span<numerics::Parameter* const>(params), opt);
}

} // namespace faithgnn::testing
