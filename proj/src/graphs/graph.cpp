#include "faithgnn/graphs/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "faithgnn/error.hpp"

namespace faithgnn::graphs {

namespace {

std::string graph_tag(int id) { return "graph " + std::to_string(id) + ": "; }

} // namespace

void AttributedGraph::validate(int num_classes) const {
    if (num_nodes < 0) throw ValidationError(graph_tag(id) + "negative node count");
    if (features.rows() != num_nodes) {
        throw ValidationError(graph_tag(id) + "feature matrix has " + std::to_string(features.rows()) +
                              " rows for " + std::to_string(num_nodes) + " nodes");
    }
    if (!features.allFinite()) throw ValidationError(graph_tag(id) + "non-finite feature value");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.u == e.v) throw ValidationError(graph_tag(id) + "self-loop on node " + std::to_string(e.u));
        if (e.u > e.v) throw ValidationError(graph_tag(id) + "edge not stored with u < v");
        if (e.u < 0 || e.v >= num_nodes) throw ValidationError(graph_tag(id) + "edge endpoint out of range");
        if (i > 0 && !(edges[i - 1] < e)) throw ValidationError(graph_tag(id) + "duplicate or unsorted edge");
    }
    if (label < 0 || (num_classes >= 0 && label >= num_classes)) {
        throw ValidationError(graph_tag(id) + "label " + std::to_string(label) + " out of range");
    }
}

AttributedGraph make_graph(int id, int num_nodes, const std::vector<std::pair<int, int>>& edges,
                           Eigen::MatrixXd features, int label) {
    AttributedGraph g;
    g.id = id;
    g.num_nodes = num_nodes;
    g.edges.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a == b) throw ValidationError(graph_tag(id) + "self-loop on node " + std::to_string(a));
        g.edges.push_back(make_edge(a, b));
    }
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
        throw ValidationError(graph_tag(id) + "duplicate edge");
    }
    g.features = std::move(features);
    g.label = label;
    g.validate();
    return g;
}

Adjacency adjacency(const AttributedGraph& g) {
    Adjacency adj(static_cast<std::size_t>(g.num_nodes));
    for (int e = 0; e < g.num_edges(); ++e) {
        adj[static_cast<std::size_t>(g.edges[e].u)].emplace_back(g.edges[e].v, e);
        adj[static_cast<std::size_t>(g.edges[e].v)].emplace_back(g.edges[e].u, e);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

bool is_connected(const AttributedGraph& g) {
    if (g.num_nodes <= 1) return true;
    const Adjacency adj = adjacency(g);
    std::vector<bool> seen(static_cast<std::size_t>(g.num_nodes), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                ++reached;
                q.push(v);
            }
        }
    }
    return reached == g.num_nodes;
}

AttributedGraph permute_graph(const AttributedGraph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.num_nodes) throw ParameterError("permute_graph: permutation length");
    AttributedGraph out;
    out.id = g.id;
    out.num_nodes = g.num_nodes;
    out.label = g.label;
    out.features.resize(g.features.rows(), g.features.cols());
    for (int i = 0; i < g.num_nodes; ++i) out.features.row(perm[static_cast<std::size_t>(i)]) = g.features.row(i);
    out.edges.reserve(g.edges.size());
    for (const Edge& e : g.edges) {
        out.edges.push_back(make_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]));
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

const char* to_string(MaskVariant v) { return v == MaskVariant::Model ? "model" : "random"; }

int ExplanationMask::node_count() const {
    return static_cast<int>(std::count(node_mask.begin(), node_mask.end(), true));
}

int ExplanationMask::edge_count() const {
    return static_cast<int>(std::count(edge_mask.begin(), edge_mask.end(), true));
}

ExplanationMask full_mask(const AttributedGraph& g, MaskVariant variant) {
    ExplanationMask m;
    m.node_mask.assign(static_cast<std::size_t>(g.num_nodes), true);
    m.edge_mask.assign(g.edges.size(), true);
    m.feature_mask.assign(static_cast<std::size_t>(g.num_features()), true);
    m.variant = variant;
    return m;
}

ExplanationMask induced_mask(const AttributedGraph& g, const std::vector<int>& nodes, MaskVariant variant) {
    ExplanationMask m;
    m.node_mask.assign(static_cast<std::size_t>(g.num_nodes), false);
    for (int v : nodes) {
        if (v < 0 || v >= g.num_nodes) throw ParameterError("induced_mask: node index out of range");
        m.node_mask[static_cast<std::size_t>(v)] = true;
    }
    m.edge_mask.resize(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        m.edge_mask[e] = m.node_mask[static_cast<std::size_t>(g.edges[e].u)] &&
                         m.node_mask[static_cast<std::size_t>(g.edges[e].v)];
    }
    m.feature_mask.assign(static_cast<std::size_t>(g.num_features()), true);
    m.variant = variant;
    return m;
}

bool is_valid_mask(const AttributedGraph& g, const ExplanationMask& m) {
    if (m.node_mask.size() != static_cast<std::size_t>(g.num_nodes)) return false;
    if (m.edge_mask.size() != g.edges.size()) return false;
    if (m.feature_mask.size() != static_cast<std::size_t>(g.num_features())) return false;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (m.edge_mask[e] && !(m.node_mask[static_cast<std::size_t>(g.edges[e].u)] &&
                                m.node_mask[static_cast<std::size_t>(g.edges[e].v)])) {
            return false;
        }
    }
    return true;
}

void require_valid_mask(const AttributedGraph& g, const ExplanationMask& m) {
    if (m.node_mask.size() != static_cast<std::size_t>(g.num_nodes) || m.edge_mask.size() != g.edges.size() ||
        m.feature_mask.size() != static_cast<std::size_t>(g.num_features())) {
        throw ParameterError("mask dimensions do not match graph " + std::to_string(g.id));
    }
    if (!is_valid_mask(g, m)) {
        throw ParameterError("mask for graph " + std::to_string(g.id) + " selects an edge without both endpoints");
    }
}

ExplanationMask complement_mask(const AttributedGraph& g, const ExplanationMask& m) {
    require_valid_mask(g, m);
    ExplanationMask c;
    c.variant = m.variant;
    c.node_mask.resize(m.node_mask.size());
    c.edge_mask.resize(m.edge_mask.size());
    c.feature_mask.resize(m.feature_mask.size());
    for (std::size_t i = 0; i < m.node_mask.size(); ++i) c.node_mask[i] = !m.node_mask[i];
    for (std::size_t i = 0; i < m.feature_mask.size(); ++i) c.feature_mask[i] = !m.feature_mask[i];
    for (std::size_t e = 0; e < m.edge_mask.size(); ++e) {
        c.edge_mask[e] = !m.edge_mask[e] && c.node_mask[static_cast<std::size_t>(g.edges[e].u)] &&
                         c.node_mask[static_cast<std::size_t>(g.edges[e].v)];
    }
    return c;
}

ExplanationMask permute_mask(const AttributedGraph& g, const ExplanationMask& m, const std::vector<int>& perm) {
    require_valid_mask(g, m);
    ExplanationMask out;
    out.variant = m.variant;
    out.feature_mask = m.feature_mask;
    out.node_mask.assign(m.node_mask.size(), false);
    for (std::size_t i = 0; i < m.node_mask.size(); ++i) out.node_mask[static_cast<std::size_t>(perm[i])] = m.node_mask[i];
    const AttributedGraph pg = permute_graph(g, perm);
    std::set<Edge> selected;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (m.edge_mask[e]) {
            selected.insert(make_edge(perm[static_cast<std::size_t>(g.edges[e].u)],
                                      perm[static_cast<std::size_t>(g.edges[e].v)]));
        }
    }
    out.edge_mask.resize(pg.edges.size());
    for (std::size_t e = 0; e < pg.edges.size(); ++e) out.edge_mask[e] = selected.count(pg.edges[e]) > 0;
    return out;
}

Subgraph extract_subgraph(const AttributedGraph& g, const ExplanationMask& m) {
    require_valid_mask(g, m);
    Subgraph s;
    std::vector<int> new_index(static_cast<std::size_t>(g.num_nodes), -1);
    for (int i = 0; i < g.num_nodes; ++i) {
        if (m.node_mask[static_cast<std::size_t>(i)]) {
            new_index[static_cast<std::size_t>(i)] = static_cast<int>(s.node_map.size());
            s.node_map.push_back(i);
        }
    }
    AttributedGraph& out = s.graph;
    out.id = g.id;
    out.label = g.label;
    out.num_nodes = static_cast<int>(s.node_map.size());
    out.features.resize(out.num_nodes, g.features.cols());
    for (int r = 0; r < out.num_nodes; ++r) out.features.row(r) = g.features.row(s.node_map[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < g.features.cols(); ++c) {
        if (!m.feature_mask[static_cast<std::size_t>(c)]) out.features.col(c).setZero();
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!m.edge_mask[e]) continue;
        // Compaction preserves order, so the edge list stays sorted with u < v.
        out.edges.push_back(Edge{new_index[static_cast<std::size_t>(g.edges[e].u)],
                                 new_index[static_cast<std::size_t>(g.edges[e].v)]});
    }
    return s;
}

Eigen::MatrixXd compute_structural_features(const AttributedGraph& g) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(g.num_nodes, 2);
    std::vector<std::set<int>> nbrs(static_cast<std::size_t>(g.num_nodes));
    for (const Edge& e : g.edges) {
        nbrs[static_cast<std::size_t>(e.u)].insert(e.v);
        nbrs[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    for (int i = 0; i < g.num_nodes; ++i) f(i, 0) = static_cast<double>(nbrs[static_cast<std::size_t>(i)].size());
    // Each triangle u < v < w is found once from its lowest edge (u, v).
    for (const Edge& e : g.edges) {
        for (int w : nbrs[static_cast<std::size_t>(e.u)]) {
            if (w > e.v && nbrs[static_cast<std::size_t>(e.v)].count(w)) {
                f(e.u, 1) += 1;
                f(e.v, 1) += 1;
                f(w, 1) += 1;
            }
        }
    }
    return f;
}

void Dataset::validate() const {
    if (graphs.empty()) throw ValidationError("dataset '" + name + "' contains no graphs");
    if (num_classes < 1) throw ValidationError("dataset '" + name + "' declares no classes");
    for (const auto& g : graphs) {
        g.validate(num_classes);
        if (g.num_nodes > 0 && g.num_features() != num_features) {
            throw ValidationError(graph_tag(g.id) + "has " + std::to_string(g.num_features()) +
                                  " features, dataset has " + std::to_string(num_features));
        }
    }
    if (ground_truth_masks) {
        if (ground_truth_masks->size() != graphs.size()) {
            throw ValidationError("dataset '" + name + "': ground-truth mask count differs from graph count");
        }
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            if (!is_valid_mask(graphs[i], (*ground_truth_masks)[i])) {
                throw ValidationError(graph_tag(graphs[i].id) + "inconsistent ground-truth mask");
            }
        }
    }
}

} // namespace faithgnn::graphs
