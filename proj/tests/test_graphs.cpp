#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

#include "faithgnn/error.hpp"
#include "faithgnn/graphs/generators.hpp"
#include "faithgnn/graphs/io.hpp"

using namespace faithgnn;
using namespace faithgnn::graphs;

namespace {

AttributedGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    }
    return make_graph(0, n, e, Eigen::MatrixXd::Zero(n, 1), 0);
}

std::vector<std::uint32_t> adjacency_bits(const AttributedGraph& g) {
    std::vector<std::uint32_t> bits(static_cast<std::size_t>(g.num_nodes), 0);
    for (const auto& e : g.edges) {
        bits[static_cast<std::size_t>(e.u)] |= 1u << e.v;
        bits[static_cast<std::size_t>(e.v)] |= 1u << e.u;
    }
    return bits;
}

// Induced isomorphism by trying all 5! node orders.
bool induced_isomorphic(const std::vector<std::uint32_t>& adj, const std::vector<int>& nodes, const Motif& motif) {
    std::set<std::pair<int, int>> target;
    for (const auto& e : motif.edges) target.insert({e.u, e.v});
    int induced = 0;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) induced += (adj[nodes[a]] >> nodes[b]) & 1u;
    }
    if (induced != static_cast<int>(target.size())) return false;
    std::vector<int> perm(nodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& [u, v] : target) {
            if (!((adj[nodes[perm[u]]] >> nodes[perm[v]]) & 1u)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Number of 5-node sets inducing `motif` and joined to the rest by exactly one edge.
int count_bridged_copies(const AttributedGraph& g, const Motif& motif) {
    const auto adj = adjacency_bits(g);
    const int n = g.num_nodes;
    int found = 0;
    std::vector<int> s(5);
    for (s[0] = 0; s[0] < n; ++s[0])
        for (s[1] = s[0] + 1; s[1] < n; ++s[1])
            for (s[2] = s[1] + 1; s[2] < n; ++s[2])
                for (s[3] = s[2] + 1; s[3] < n; ++s[3])
                    for (s[4] = s[3] + 1; s[4] < n; ++s[4]) {
                        std::uint32_t set = 0;
                        for (int v : s) set |= 1u << v;
                        int boundary = 0;
                        for (int v : s) boundary += std::popcount(adj[v] & ~set);
                        if (boundary != 1) continue;
                        if (induced_isomorphic(adj, s, motif)) ++found;
                    }
    return found;
}

int components_of(const AttributedGraph& g, const std::vector<bool>& nodes, std::vector<int>* sizes) {
    const Adjacency adj = adjacency(g);
    std::vector<int> comp(static_cast<std::size_t>(g.num_nodes), -1);
    int count = 0;
    for (int s = 0; s < g.num_nodes; ++s) {
        if (!nodes[s] || comp[s] >= 0) continue;
        int size = 0;
        std::vector<int> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            ++size;
            for (auto [v, e] : adj[u]) {
                if (nodes[v] && comp[v] < 0) {
                    comp[v] = count;
                    stack.push_back(v);
                }
            }
        }
        if (sizes) sizes->push_back(size);
        ++count;
    }
    return count;
}

} // namespace

TEST_CASE("motif shapes") {
    const Motif house = make_motif(MotifKind::House);
    const Motif cycle = make_motif(MotifKind::Cycle5);
    const Motif wheel = make_motif(MotifKind::Wheel);
    const Motif grid = make_motif(MotifKind::Grid);
    CHECK(house.num_nodes == 5);
    CHECK(house.edges.size() == 6);
    CHECK(cycle.num_nodes == 5);
    CHECK(cycle.edges.size() == 5);
    CHECK(wheel.num_nodes == 6);
    CHECK(wheel.edges.size() == 10);
    CHECK(grid.num_nodes == 9);
    CHECK(grid.edges.size() == 12);
    for (const Motif& m : {house, cycle, wheel, grid}) {
        std::vector<std::pair<int, int>> e;
        for (const auto& x : m.edges) e.emplace_back(x.u, x.v);
        CHECK(is_connected(make_graph(0, m.num_nodes, e, Eigen::MatrixXd::Zero(m.num_nodes, 1), 0)));
    }
}

TEST_CASE("BA with three nodes and m=1 is a tree") {
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        const AttributedGraph g = generate_ba(3, 1, seed);
        CHECK(g.num_edges() == 2);
        CHECK(is_connected(g));
    }
}

TEST_CASE("BA generation is deterministic") { CHECK(generate_ba(25, 1, 7).edges == generate_ba(25, 1, 7).edges); }

TEST_CASE("BA edge count follows the construction rule") {
    // Independent count: complete core on m+1 nodes, then m edges per added node.
    auto expected = [](int n, int m) { return m * (m + 1) / 2 + (n - m - 1) * m; };
    CHECK(expected(25, 2) == 47);
    for (int m : {1, 2, 3}) {
        for (int n : {m + 1, m + 2, 10, 25, 40}) {
            const AttributedGraph g = generate_ba(n, m, static_cast<std::uint64_t>(n * 31 + m));
            CHECK(g.num_edges() == expected(n, m));
            CHECK(is_connected(g));
        }
    }
}

TEST_CASE("BA rejects invalid sizes") {
    CHECK_THROWS_AS(generate_ba(2, 2, 0), ParameterError);
    CHECK_THROWS_AS(generate_ba(5, 0, 0), ParameterError);
}

TEST_CASE("Ba2Motif matches the dataset overview") {
    const Dataset ds = generate_ba2motif(1000, 7);
    CHECK(ds.size() == 1000);
    CHECK(ds.num_classes == 2);
    CHECK(ds.num_features == 2);
    double nodes = 0;
    int ones = 0;
    for (const auto& g : ds.graphs) {
        nodes += g.num_nodes;
        ones += g.label;
        CHECK(is_connected(g));
    }
    CHECK(nodes / 1000.0 == 30.0);
    CHECK(ones == 500);
    REQUIRE(ds.ground_truth_masks.has_value());
    ds.validate();
}

TEST_CASE("Ba2Motif with two graphs has one of each class") {
    const Dataset ds = generate_ba2motif(2, 3);
    CHECK(ds.graphs[0].label != ds.graphs[1].label);
}

TEST_CASE("Ba2Motif graphs carry exactly one bridged copy of their class motif") {
    const Dataset ds = generate_ba2motif(16, 21);
    const Motif house = make_motif(MotifKind::House);
    const Motif cycle = make_motif(MotifKind::Cycle5);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& g = ds.graphs[i];
        const Motif& own = g.label == 0 ? house : cycle;
        const Motif& other = g.label == 0 ? cycle : house;
        CHECK(count_bridged_copies(g, own) == 1);
        CHECK(count_bridged_copies(g, other) == 0);
        const auto& gt = (*ds.ground_truth_masks)[i];
        CHECK(gt.node_count() == 5);
        CHECK(gt.edge_count() == static_cast<int>(own.edges.size()));
    }
}

TEST_CASE("BaMS labels follow the exactly-two rule") {
    const Dataset ds = generate_bams(200, 5);
    CHECK(ds.num_classes == 2);
    int ones = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& g = ds.graphs[i];
        CHECK(g.num_nodes == 40);
        CHECK(is_connected(g));
        std::vector<int> sizes;
        const auto& gt = (*ds.ground_truth_masks)[i];
        const int motifs = components_of(g, gt.node_mask, &sizes);
        for (int s : sizes) CHECK((s == 5 || s == 6 || s == 9));
        CHECK(g.label == (motifs == 2 ? 1 : 0));
        ones += g.label;
    }
    CHECK(ones == 100);
}

TEST_CASE("generated datasets serialize byte-identically") {
    std::ostringstream a;
    std::ostringstream b;
    write_graphs(a, generate_bams(30, 4));
    write_graphs(b, generate_bams(30, 4));
    CHECK(a.str() == b.str());
}

TEST_CASE("structural features") {
    CHECK(compute_structural_features(complete_graph(3)).row(0) == Eigen::RowVector2d(2, 1));
    const Eigen::MatrixXd k4 = compute_structural_features(complete_graph(4));
    for (int i = 0; i < 4; ++i) CHECK(k4.row(i) == Eigen::RowVector2d(3, 3));
    const AttributedGraph single = make_graph(0, 1, {}, Eigen::MatrixXd::Zero(1, 1), 0);
    CHECK(compute_structural_features(single).row(0) == Eigen::RowVector2d(0, 0));
}

TEST_CASE("extract_subgraph") {
    const Dataset ds = generate_ba2motif(2, 1);
    const auto& g = ds.graphs[0];
    SUBCASE("all-true mask keeps the graph") {
        const Subgraph s = extract_subgraph(g, full_mask(g));
        CHECK(s.graph.num_nodes == g.num_nodes);
        CHECK(s.graph.edges == g.edges);
        CHECK(s.graph.features == g.features);
        const Subgraph again = extract_subgraph(s.graph, full_mask(s.graph));
        CHECK(again.graph.edges == s.graph.edges);
        CHECK(again.graph.features == s.graph.features);
    }
    SUBCASE("all-false mask gives an empty graph") {
        ExplanationMask m = full_mask(g);
        std::fill(m.node_mask.begin(), m.node_mask.end(), false);
        std::fill(m.edge_mask.begin(), m.edge_mask.end(), false);
        CHECK(extract_subgraph(g, m).graph.num_nodes == 0);
    }
    SUBCASE("house mask gives the house") {
        const Subgraph s = extract_subgraph(g, (*ds.ground_truth_masks)[0]);
        CHECK(s.graph.num_nodes == 5);
        CHECK(s.graph.num_edges() == 6);
    }
    SUBCASE("masked features are zeroed") {
        ExplanationMask m = full_mask(g);
        m.feature_mask[1] = false;
        const Subgraph s = extract_subgraph(g, m);
        CHECK(s.graph.features.col(1).isZero());
        CHECK(s.graph.features.col(0) == g.features.col(0));
    }
    SUBCASE("dimension mismatch") {
        ExplanationMask m = full_mask(g);
        m.node_mask.pop_back();
        CHECK_THROWS_AS(extract_subgraph(g, m), ParameterError);
    }
}

TEST_CASE("complement_mask") {
    const Dataset ds = generate_ba2motif(2, 9);
    const auto& g = ds.graphs[1];
    const ExplanationMask all = full_mask(g);
    const ExplanationMask none = complement_mask(g, all);
    CHECK(none.node_count() == 0);
    CHECK(none.edge_count() == 0);
    CHECK(std::none_of(none.feature_mask.begin(), none.feature_mask.end(), [](bool b) { return b; }));

    const ExplanationMask& motif = (*ds.ground_truth_masks)[1];
    const ExplanationMask c = complement_mask(g, motif);
    CHECK(complement_mask(g, c).node_mask == motif.node_mask);
    CHECK(c.node_count() == 25);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const bool u_in = motif.node_mask[g.edges[e].u];
        const bool v_in = motif.node_mask[g.edges[e].v];
        if (u_in && v_in) CHECK_FALSE(c.edge_mask[e]);
        if (!u_in && !v_in) CHECK(c.edge_mask[e]);
        if (u_in != v_in) CHECK_FALSE(c.edge_mask[e]);  // the bridge
    }
    CHECK(is_valid_mask(g, c));
}

TEST_CASE("dataset files round-trip") {
    const Dataset ds = generate_ba2motif(10, 2);
    std::stringstream buf;
    write_graphs(buf, ds);
    const Dataset back = read_graphs(buf, "ba2motif");
    REQUIRE(back.size() == ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(back.graphs[i].edges == ds.graphs[i].edges);
        CHECK(back.graphs[i].features == ds.graphs[i].features);
        CHECK(back.graphs[i].label == ds.graphs[i].label);
        CHECK((*back.ground_truth_masks)[i] == (*ds.ground_truth_masks)[i]);
    }
    std::ostringstream again;
    write_graphs(again, back);
    CHECK(again.str() == buf.str());
}

TEST_CASE("dataset parsing errors") {
    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS_AS(read_graphs(in, "x"), ValidationError);
    }
    SUBCASE("malformed line names the line") {
        std::istringstream in(
            "{\"id\":0,\"num_nodes\":1,\"edges\":[],\"features\":[[1]],\"label\":0}\n{not json\n");
        try {
            read_graphs(in, "x");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("invariant violation names the graph") {
        std::istringstream in("{\"id\":17,\"num_nodes\":2,\"edges\":[[0,5]],\"features\":[[1],[1]],\"label\":0}\n");
        try {
            read_graphs(in, "x");
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("17") != std::string::npos);
        }
    }
}

TEST_CASE("graph invariants") {
    CHECK_THROWS_AS(make_graph(3, 2, {{0, 0}}, Eigen::MatrixXd::Zero(2, 1), 0), ValidationError);
    CHECK_THROWS_AS(make_graph(3, 2, {{0, 1}, {1, 0}}, Eigen::MatrixXd::Zero(2, 1), 0), ValidationError);
    CHECK_THROWS_AS(make_graph(3, 2, {{0, 1}}, Eigen::MatrixXd::Zero(3, 1), 0), ValidationError);
}

TEST_CASE("permute_mask keeps masks consistent") {
    const Dataset ds = generate_ba2motif(2, 4);
    const auto& g = ds.graphs[0];
    std::vector<int> perm(static_cast<std::size_t>(g.num_nodes));
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    const ExplanationMask pm = permute_mask(g, (*ds.ground_truth_masks)[0], perm);
    const AttributedGraph pg = permute_graph(g, perm);
    CHECK(is_valid_mask(pg, pm));
    CHECK(pm.node_count() == 5);
    CHECK(pm.edge_count() == 6);
}
