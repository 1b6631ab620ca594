#pragma once

#include <Eigen/Dense>

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace faithgnn::graphs {

/// Undirected edge, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Node-attributed undirected graph with a class label. Edges are kept
/// sorted and unique with u < v.
struct AttributedGraph {
    int id = 0;
    int num_nodes = 0;
    std::vector<Edge> edges;
    Eigen::MatrixXd features;  // num_nodes x num_features
    int label = 0;

    int num_features() const { return static_cast<int>(features.cols()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    /// Throws ValidationError naming the graph id when an invariant fails.
    /// `num_classes` < 0 skips the label range check.
    void validate(int num_classes = -1) const;
};

/// Builds a graph from arbitrary-orientation edges; sorts them and checks
/// the invariants.
AttributedGraph make_graph(int id, int num_nodes, const std::vector<std::pair<int, int>>& edges,
                           Eigen::MatrixXd features, int label);

/// neighbors[i] = list of (neighbor node, edge index), ascending by node.
using Adjacency = std::vector<std::vector<std::pair<int, int>>>;
Adjacency adjacency(const AttributedGraph& g);

bool is_connected(const AttributedGraph& g);

/// Graph with node i renamed to perm[i]; edges re-sorted.
AttributedGraph permute_graph(const AttributedGraph& g, const std::vector<int>& perm);

enum class MaskVariant { Model, Random };

const char* to_string(MaskVariant v);

/// Boolean relevance over a graph's nodes, edges and feature columns.
struct ExplanationMask {
    std::vector<bool> node_mask;
    std::vector<bool> edge_mask;
    std::vector<bool> feature_mask;
    MaskVariant variant = MaskVariant::Model;

    int node_count() const;
    int edge_count() const;

    bool operator==(const ExplanationMask&) const = default;
};

ExplanationMask full_mask(const AttributedGraph& g, MaskVariant variant = MaskVariant::Model);

/// Mask selecting `nodes` with every edge of g between two selected nodes.
ExplanationMask induced_mask(const AttributedGraph& g, const std::vector<int>& nodes,
                             MaskVariant variant = MaskVariant::Model);

/// Lengths match g and every selected edge has both endpoints selected.
bool is_valid_mask(const AttributedGraph& g, const ExplanationMask& m);

/// Throws ParameterError when is_valid_mask fails.
void require_valid_mask(const AttributedGraph& g, const ExplanationMask& m);

/// Negates nodes, edges and features, then drops edges that lost an endpoint.
ExplanationMask complement_mask(const AttributedGraph& g, const ExplanationMask& m);

/// Mask carried along a node relabeling (see permute_graph).
ExplanationMask permute_mask(const AttributedGraph& g, const ExplanationMask& m, const std::vector<int>& perm);

struct Subgraph {
    AttributedGraph graph;
    std::vector<int> node_map;  // compacted index -> original index
};

/// Keeps the selected nodes and edges (indices compacted in original order)
/// and zeroes feature columns whose feature_mask entry is false.
Subgraph extract_subgraph(const AttributedGraph& g, const ExplanationMask& m);

/// Per-node [degree, triangles containing the node].
Eigen::MatrixXd compute_structural_features(const AttributedGraph& g);

struct Dataset {
    std::string name;
    std::vector<AttributedGraph> graphs;
    int num_features = 0;
    int num_classes = 0;
    std::optional<std::vector<ExplanationMask>> ground_truth_masks;

    std::size_t size() const { return graphs.size(); }

    /// Checks every graph, the shared feature width and label range, and
    /// ground-truth mask consistency.
    void validate() const;
};

} // namespace faithgnn::graphs
