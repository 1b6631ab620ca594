#pragma once

#include <vector>

#include "faithgnn/gnn/gcn.hpp"
#include "faithgnn/graphs/graph.hpp"

namespace faithgnn::explainers {

using graphs::AttributedGraph;

/// Connected node sets obtained by breadth-first growth from every node
/// (neighbors visited in ascending index): for each start, the first s BFS
/// nodes for s in [min_nodes, max_nodes]. Each set is sorted; duplicates are
/// removed and the result is in lexicographic order. Graphs with fewer than
/// min_nodes nodes contribute their whole node set (if non-empty).
std::vector<std::vector<int>> bfs_candidates(const AttributedGraph& g, int max_nodes, int min_nodes = 3);

/// Mean-pooled backbone embedding of the induced subgraph on `nodes`, run in
/// isolation (the same view the model gets of an extracted explanation).
Eigen::RowVectorXd subgraph_embedding(const AttributedGraph& g, const std::vector<int>& nodes,
                                      const gnn::GcnBackbone& backbone);

struct SubgraphMatch {
    int graph_id = -1;
    std::vector<int> nodes;
    double distance = 0.0;  // squared Euclidean
    bool found = false;
};

/// Deterministic ordering: distance, then graph id, then node set.
bool better_match(const SubgraphMatch& a, const SubgraphMatch& b);

} // namespace faithgnn::explainers
