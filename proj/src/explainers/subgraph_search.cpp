#include "faithgnn/explainers/subgraph_search.hpp"

#include <algorithm>
#include <queue>

namespace faithgnn::explainers {

std::vector<std::vector<int>> bfs_candidates(const AttributedGraph& g, int max_nodes, int min_nodes) {
    std::vector<std::vector<int>> out;
    if (g.num_nodes == 0) return out;
    if (g.num_nodes < min_nodes) {
        std::vector<int> all(static_cast<std::size_t>(g.num_nodes));
        for (int i = 0; i < g.num_nodes; ++i) all[static_cast<std::size_t>(i)] = i;
        out.push_back(std::move(all));
        return out;
    }
    const graphs::Adjacency adj = graphs::adjacency(g);
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(g.num_nodes));
    for (int start = 0; start < g.num_nodes; ++start) {
        order.clear();
        std::fill(seen.begin(), seen.end(), 0);
        std::queue<int> q;
        q.push(start);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!q.empty() && static_cast<int>(order.size()) < max_nodes) {
            const int u = q.front();
            q.pop();
            order.push_back(u);
            for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    q.push(v);
                }
            }
        }
        for (int s = min_nodes; s <= static_cast<int>(order.size()); ++s) {
            std::vector<int> nodes(order.begin(), order.begin() + s);
            std::sort(nodes.begin(), nodes.end());
            out.push_back(std::move(nodes));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Eigen::RowVectorXd subgraph_embedding(const AttributedGraph& g, const std::vector<int>& nodes,
                                      const gnn::GcnBackbone& backbone) {
    const graphs::Subgraph sub = graphs::extract_subgraph(g, graphs::induced_mask(g, nodes));
    return gnn::pool(gnn::gcn_forward(sub.graph, backbone), gnn::Pooling::Mean);
}

bool better_match(const SubgraphMatch& a, const SubgraphMatch& b) {
    if (a.found != b.found) return a.found;
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.graph_id != b.graph_id) return a.graph_id < b.graph_id;
    return a.nodes < b.nodes;
}

} // namespace faithgnn::explainers
