#include "faithgnn/graphs/generators.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>

#include "faithgnn/error.hpp"
#include "faithgnn/numerics/rng.hpp"

namespace faithgnn::graphs {

using numerics::Rng;

Motif make_motif(MotifKind kind) {
    switch (kind) {
        case MotifKind::House:
            return {kind, 5, {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}}};
        case MotifKind::Cycle5:
            return {kind, 5, {{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}}};
        case MotifKind::Wheel: {
            Motif m{kind, 6, {}};
            for (int r = 1; r <= 5; ++r) {
                m.edges.push_back({0, r});
                m.edges.push_back(make_edge(r, r % 5 + 1));
            }
            std::sort(m.edges.begin(), m.edges.end());
            return m;
        }
        case MotifKind::Grid: {
            Motif m{kind, 9, {}};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    const int v = 3 * r + c;
                    if (c < 2) m.edges.push_back({v, v + 1});
                    if (r < 2) m.edges.push_back({v, v + 3});
                }
            }
            std::sort(m.edges.begin(), m.edges.end());
            return m;
        }
    }
    throw ParameterError("unknown motif kind");
}

const char* to_string(MotifKind kind) {
    switch (kind) {
        case MotifKind::House: return "house";
        case MotifKind::Cycle5: return "cycle5";
        case MotifKind::Wheel: return "wheel";
        case MotifKind::Grid: return "grid";
    }
    return "?";
}

namespace {

int uniform_index(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

std::vector<std::pair<int, int>> ba_edges(int num_nodes, int attach_m, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    // Each endpoint appears once per incident edge: uniform draws from this
    // list are degree-proportional.
    std::vector<int> endpoints;
    for (int a = 0; a <= attach_m; ++a) {
        for (int b = a + 1; b <= attach_m; ++b) {
            edges.emplace_back(a, b);
            endpoints.push_back(a);
            endpoints.push_back(b);
        }
    }
    if (attach_m == 0) endpoints.push_back(0);
    for (int v = attach_m + 1; v < num_nodes; ++v) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < attach_m) {
            targets.insert(endpoints[static_cast<std::size_t>(uniform_index(rng, static_cast<int>(endpoints.size())))]);
        }
        for (int t : targets) {
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return edges;
}

struct Planted {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> gt_nodes;
    std::vector<std::pair<int, int>> gt_edges;
};

// Appends the motif after the existing nodes and links one random motif node
// to one random base node.
void plant(Planted& p, int& next_node, int base_nodes, const Motif& motif, Rng& rng) {
    const int offset = next_node;
    for (const Edge& e : motif.edges) {
        p.edges.emplace_back(offset + e.u, offset + e.v);
        p.gt_edges.emplace_back(offset + e.u, offset + e.v);
    }
    for (int i = 0; i < motif.num_nodes; ++i) p.gt_nodes.push_back(offset + i);
    const int motif_node = offset + uniform_index(rng, motif.num_nodes);
    const int base_node = uniform_index(rng, base_nodes);
    p.edges.emplace_back(base_node, motif_node);
    next_node += motif.num_nodes;
}

std::pair<AttributedGraph, ExplanationMask> finish(int id, int num_nodes, const Planted& p, int label) {
    AttributedGraph g = make_graph(id, num_nodes, p.edges, Eigen::MatrixXd(num_nodes, 0), label);
    g.features = compute_structural_features(g);
    ExplanationMask gt = induced_mask(g, p.gt_nodes);
    // Keep only motif-internal edges (the induced set equals them here, since
    // a bridge always has one endpoint outside the motif).
    std::set<Edge> motif_edges;
    for (auto [a, b] : p.gt_edges) motif_edges.insert(make_edge(a, b));
    for (std::size_t e = 0; e < g.edges.size(); ++e) gt.edge_mask[e] = motif_edges.count(g.edges[e]) > 0;
    return {std::move(g), std::move(gt)};
}

Rng graph_rng(std::uint64_t seed, int index) { return numerics::make_rng(seed ^ static_cast<std::uint64_t>(index)); }

} // namespace

AttributedGraph generate_ba(int num_nodes, int attach_m, std::uint64_t seed) {
    if (attach_m < 1 || num_nodes <= attach_m) {
        throw ParameterError("generate_ba: need num_nodes > attach_m >= 1 (got num_nodes=" +
                             std::to_string(num_nodes) + ", attach_m=" + std::to_string(attach_m) + ")");
    }
    Rng rng = numerics::make_rng(seed);
    return make_graph(0, num_nodes, ba_edges(num_nodes, attach_m, rng), Eigen::MatrixXd(num_nodes, 0), 0);
}

Dataset generate_ba2motif(int count, std::uint64_t seed, const Ba2MotifOptions& opt) {
    if (count < 2) throw ParameterError("generate_ba2motif: count must be at least 2");
    if (opt.attach_m < 1 || opt.base_nodes <= opt.attach_m) throw ParameterError("generate_ba2motif: bad BA size");
    Dataset ds;
    ds.name = "ba2motif";
    ds.num_features = 2;
    ds.num_classes = 2;
    ds.ground_truth_masks.emplace();
    for (int i = 0; i < count; ++i) {
        Rng rng = graph_rng(seed, i);
        const int label = i % 2;
        Planted p;
        p.edges = ba_edges(opt.base_nodes, opt.attach_m, rng);
        int next = opt.base_nodes;
        plant(p, next, opt.base_nodes, make_motif(label == 0 ? MotifKind::House : MotifKind::Cycle5), rng);
        auto [g, gt] = finish(i, next, p, label);
        ds.graphs.push_back(std::move(g));
        ds.ground_truth_masks->push_back(std::move(gt));
    }
    ds.validate();
    return ds;
}

Dataset generate_bams(int count, std::uint64_t seed, const BamsOptions& opt) {
    if (count < 2) throw ParameterError("generate_bams: count must be at least 2");
    constexpr std::array<MotifKind, 3> kinds{MotifKind::House, MotifKind::Wheel, MotifKind::Grid};
    // Bitmask subsets over {house, wheel, grid}.
    const std::vector<int> label0{0b000, 0b001, 0b010, 0b100, 0b111};
    const std::vector<int> label1{0b011, 0b101, 0b110};

    Dataset ds;
    ds.name = "bams";
    ds.num_features = 2;
    ds.num_classes = 2;
    ds.ground_truth_masks.emplace();
    for (int i = 0; i < count; ++i) {
        Rng rng = graph_rng(seed, i);
        const int label = i % 2;
        const auto& pool = label == 0 ? label0 : label1;
        const int subset = pool[static_cast<std::size_t>(uniform_index(rng, static_cast<int>(pool.size())))];
        int motif_nodes = 0;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            if (subset & (1 << k)) motif_nodes += make_motif(kinds[k]).num_nodes;
        }
        const int base = opt.total_nodes - motif_nodes;
        if (base <= opt.attach_m) {
            throw std::logic_error("generate_bams: motif budget exceeds node total");
        }
        Planted p;
        p.edges = ba_edges(base, opt.attach_m, rng);
        int next = base;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            if (subset & (1 << k)) plant(p, next, base, make_motif(kinds[k]), rng);
        }
        auto [g, gt] = finish(i, next, p, label);
        ds.graphs.push_back(std::move(g));
        ds.ground_truth_masks->push_back(std::move(gt));
    }
    ds.validate();
    return ds;
}

} // namespace faithgnn::graphs
