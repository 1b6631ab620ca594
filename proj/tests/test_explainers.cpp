#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "faithgnn/error.hpp"
#include "faithgnn/explainers/factory.hpp"
#include "faithgnn/explainers/gisst.hpp"
#include "faithgnn/explainers/pignn.hpp"
#include "faithgnn/explainers/protgnn.hpp"
#include "support.hpp"

using namespace faithgnn;
using namespace faithgnn::explainers;
using faithgnn::testing::check_model_gradients;
using faithgnn::testing::path_graph;
using faithgnn::testing::toy_batch;

namespace {

double plain_ce(const MatrixXd& logits, int label) {
    const double m = logits.maxCoeff();
    double z = 0.0;
    for (Eigen::Index c = 0; c < logits.cols(); ++c) z += std::exp(logits(0, c) - m);
    return -(logits(0, label) - m - std::log(z));
}

double loss_value(const gnn::Model& m, const AttributedGraph& g) {
    Tape tape(false);
    return m.loss(tape, g).total.scalar();
}

double ce_value(const gnn::Model& m, const AttributedGraph& g) {
    Tape tape(false);
    return plain_ce(m.logits(tape, g).value(), g.label);
}

graphs::Dataset small_ba2motif(int count, std::uint64_t seed) {
    graphs::Ba2MotifOptions opt;
    opt.base_nodes = 10;
    return graphs::generate_ba2motif(count, seed, opt);
}

// Mean-pooled embedding of an induced subgraph, computed without the library helper.
Eigen::RowVectorXd induced_embedding(const AttributedGraph& g, const std::vector<int>& nodes,
                                     const gnn::GcnBackbone& b) {
    std::vector<int> index(static_cast<std::size_t>(g.num_nodes), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges) {
        if (index[e.u] >= 0 && index[e.v] >= 0) edges.emplace_back(index[e.u], index[e.v]);
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(nodes.size()), g.num_features());
    for (std::size_t i = 0; i < nodes.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = g.features.row(nodes[i]);
    const AttributedGraph sub = graphs::make_graph(0, static_cast<int>(nodes.size()), edges, x, 0);
    return gnn::gcn_forward(sub, b).colwise().mean();
}

} // namespace

// ---------------------------------------------------------------- GISST

TEST_CASE("GISST with all penalties off is plain cross-entropy") {
    GisstModel::Config c;
    c.lambda_edge_l1 = c.lambda_edge_ent = c.lambda_feat_l1 = c.lambda_feat_ent = 0.0;
    const GisstModel m(2, 2, c, 3);
    for (const auto& g : toy_batch()) CHECK(loss_value(m, g) == doctest::Approx(ce_value(m, g)).epsilon(1e-12));
}

TEST_CASE("binary entropy peaks at ln 2") {
    Tape tape(false);
    const Var s = tape.constant(MatrixXd::Constant(4, 1, 0.5));
    CHECK(numerics::mean(numerics::binary_entropy(s)).scalar() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("raising the edge L1 weight raises the loss") {
    GisstModel m(2, 2, {}, 5);
    const AttributedGraph g = toy_batch()[0];
    const double base = loss_value(m, g);
    m.mutable_config().lambda_edge_l1 *= 10.0;
    CHECK(m.edge_scores(g).mean() > 0.0);
    CHECK(loss_value(m, g) > base);
}

TEST_CASE("edge scores are symmetric in the endpoints") {
    const GisstModel m(2, 2, {}, 5);
    const AttributedGraph g = toy_batch()[1];
    const Eigen::VectorXd s = m.edge_scores(g);
    std::vector<int> perm(static_cast<std::size_t>(g.num_nodes));
    for (int i = 0; i < g.num_nodes; ++i) perm[i] = g.num_nodes - 1 - i;
    const AttributedGraph pg = graphs::permute_graph(g, perm);
    const Eigen::VectorXd ps = m.edge_scores(pg);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const graphs::Edge pe = graphs::make_edge(perm[g.edges[e].u], perm[g.edges[e].v]);
        const auto it = std::find(pg.edges.begin(), pg.edges.end(), pe);
        CHECK(std::abs(ps(it - pg.edges.begin()) - s(static_cast<Eigen::Index>(e))) < 1e-12);
    }
}

TEST_CASE("top-edge selection") {
    const Eigen::VectorXd gates = Eigen::Vector2d(0.9, 0.2);
    const AttributedGraph path = path_graph(0, 3, 0, 0);
    SUBCASE("budget at least the graph size takes everything") {
        const auto m = select_top_edges(path, Eigen::Vector2d(0.1, 0.2), gates, 3);
        CHECK(m.node_count() == 3);
        CHECK(m.edge_count() == 2);
    }
    SUBCASE("greedy picks the higher edge") {
        const auto m = select_top_edges(path, Eigen::Vector2d(0.9, 0.1), gates, 2);
        CHECK(m.edge_mask == std::vector<bool>{true, false});
        CHECK(m.node_mask == std::vector<bool>{true, true, false});
        CHECK(m.feature_mask == std::vector<bool>{true, false});
    }
    SUBCASE("ties go to the lower edge index") {
        const auto m = select_top_edges(path, Eigen::Vector2d(0.5, 0.5), gates, 2);
        CHECK(m.edge_mask == std::vector<bool>{true, false});
    }
    SUBCASE("size mismatch") { CHECK_THROWS_AS(select_top_edges(path, Eigen::Vector3d(1, 1, 1), gates, 2), ParameterError); }
}

TEST_CASE("GISST explanations respect the node budget") {
    const GisstModel m(2, 2, {}, 8);
    const graphs::Dataset ds = graphs::generate_ba2motif(20, 3);
    const int k = m.config().node_budget;
    for (const auto& g : ds.graphs) {
        const auto mask = m.explain(g);
        CHECK(graphs::is_valid_mask(g, mask));
        CHECK(mask.node_count() >= std::min(k, g.num_nodes));
        CHECK(mask.node_count() <= k + 1);
        CHECK(mask == m.explain(g));
    }
}

// ----------------------------------------------------------- prototypes

TEST_CASE("log-activation similarity") {
    const Eigen::VectorXd z = Eigen::Vector3d(0.3, -1.0, 2.0);
    CHECK(proto_similarity_p(z, z, 1e-4) == doctest::Approx(9.2103).epsilon(1e-4));
    CHECK(proto_similarity_p(z, z, 1e-4) == doctest::Approx(std::log(1e4)).epsilon(1e-12));
    const Eigen::VectorXd p = z + Eigen::Vector3d(1.0, 0.0, 0.0);
    CHECK(proto_similarity_p(z, p, 1e-4) == doctest::Approx(0.6930).epsilon(1e-4));
    double prev = proto_similarity_p(z, z, 1e-4);
    for (double d = 0.5; d < 1e4; d *= 2.0) {
        const double s = proto_similarity_p(z, z + Eigen::Vector3d(d, 0.0, 0.0), 1e-4);
        CHECK(s > 0.0);
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("orthonormality penalty") {
    MatrixXd same(2, 2);
    same << 1, 0, 1, 0;
    CHECK(orthonormality_penalty(same, 2) == doctest::Approx(2.0));
    numerics::Rng rng = numerics::make_rng(4);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 5; ++trial) {
        MatrixXd a(8, 3);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n01(rng);
        const MatrixXd q = Eigen::HouseholderQR<MatrixXd>(a).householderQ() * MatrixXd::Identity(8, 3);
        MatrixXd bank(6, 8);
        bank.topRows(3) = q.transpose();
        bank.bottomRows(3) = q.transpose();
        CHECK(orthonormality_penalty(bank, 3) < 1e-24 + 1e-20);
        const TesnetSimilarity t = proto_similarity_t(q.col(1), q.transpose());
        CHECK(std::abs(t.similarity(1)) < 1e-20);
        CHECK(t.similarity(1) >= t.similarity.maxCoeff());
        CHECK(t.similarity.maxCoeff() <= 0.0);
    }
}

TEST_CASE("tape penalty agrees with the value version") {
    numerics::Rng rng = numerics::make_rng(5);
    MatrixXd p = gnn::glorot(6, 4, rng);
    Tape tape(false);
    CHECK(orthonormality_penalty(tape.constant(p), 3).scalar() == doctest::Approx(orthonormality_penalty(p, 3)));
}

TEST_CASE("prototype bank layout") {
    numerics::Rng rng = numerics::make_rng(0);
    const PrototypeBank bank(2, 3, 4, 0.1, rng);
    CHECK(bank.size() == 6);
    CHECK(bank.class_of == std::vector<int>{0, 0, 0, 1, 1, 1});
    const MatrixXd head = bank.default_head();
    CHECK(head(0, 0) == 1.0);
    CHECK(head(0, 1) == -0.5);
    CHECK(head(4, 1) == 1.0);
    CHECK(bank.mask_of(1) == std::vector<bool>{false, false, false, true, true, true});
}

// -------------------------------------------------------------- ProtGNN

TEST_CASE("ProtGNN logits follow a coinciding prototype") {
    const AttributedGraph g = toy_batch()[0];
    for (int c : {0, 1}) {
        ProtGnnModel m(2, 2, {}, 21);
        Tape tape(false);
        const Eigen::RowVectorXd z = m.forward(tape, g).embedding.value();
        auto& protos = m.bank().prototypes.value;
        protos.setConstant(50.0);
        protos.row(m.bank().first_of(c)) = z;
        const Eigen::RowVectorXd act = m.activations(g);
        CHECK(act(m.bank().first_of(c)) == doctest::Approx(std::log(1e4)));
        CHECK(gnn::predict_label(m, g) == c);
    }
}

TEST_CASE("ProtGNN zero head gives uniform") {
    ProtGnnModel m(2, 2, {}, 2);
    m.head().value.setZero();
    CHECK(gnn::predict_distribution(m, toy_batch()[1]).probs(1) == doctest::Approx(0.5));
}

TEST_CASE("ProtGNN activations are permutation invariant") {
    const ProtGnnModel m(2, 2, {}, 6);
    const AttributedGraph g = toy_batch()[2];
    std::vector<int> perm(static_cast<std::size_t>(g.num_nodes));
    for (int i = 0; i < g.num_nodes; ++i) perm[i] = (i * 5 + 3) % g.num_nodes;
    std::set<int> distinct(perm.begin(), perm.end());
    REQUIRE(distinct.size() == perm.size());
    CHECK((m.activations(g) - m.activations(graphs::permute_graph(g, perm))).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ProtGNN loss terms") {
    const AttributedGraph g = toy_batch()[0];
    SUBCASE("no penalties is plain cross-entropy") {
        ProtGnnModel::Config c;
        c.lambda_clst = c.lambda_sep = c.lambda_div = 0.0;
        const ProtGnnModel m(2, 2, c, 1);
        CHECK(loss_value(m, g) == doctest::Approx(ce_value(m, g)).epsilon(1e-12));
    }
    SUBCASE("cluster term vanishes on an own-class prototype") {
        ProtGnnModel::Config c;
        c.lambda_sep = c.lambda_div = 0.0;
        c.lambda_clst = 1.0;
        ProtGnnModel m(2, 2, c, 1);
        Tape tape(false);
        m.bank().prototypes.value.row(m.bank().first_of(g.label) + 1) = m.forward(tape, g).embedding.value();
        CHECK(loss_value(m, g) == doctest::Approx(ce_value(m, g)).epsilon(1e-12));
    }
    SUBCASE("diversity term is zero below the margin") {
        ProtGnnModel::Config c;
        c.lambda_clst = c.lambda_sep = 0.0;
        c.lambda_div = 1.0;
        c.per_class = 2;
        ProtGnnModel m(2, 2, c, 1);
        auto& p = m.bank().prototypes.value;
        p.setZero();
        p(0, 0) = 1.0;
        p(1, 0) = 0.2;
        p(1, 1) = std::sqrt(1.0 - 0.04);
        p(2, 2) = 1.0;
        p(3, 3) = 1.0;
        CHECK(loss_value(m, g) == doctest::Approx(ce_value(m, g)).epsilon(1e-12));
        p.row(1) = p.row(0);  // cosine 1 exceeds the margin
        CHECK(loss_value(m, g) > ce_value(m, g) + 0.5);
    }
}

TEST_CASE("candidate enumeration") {
    const AttributedGraph tri = graphs::make_graph(0, 3, {{0, 1}, {1, 2}, {0, 2}}, Eigen::MatrixXd::Ones(3, 1), 0);
    CHECK(bfs_candidates(tri, 3) == std::vector<std::vector<int>>{{0, 1, 2}});
    const AttributedGraph path = path_graph(0, 4, 0, 0);
    // Prefixes from 0: {0,1,2},{0,1,2,3}; from 1: {0,1,2},{0,1,2,3}; from 2: {1,2,3},{0,1,2,3}; from 3: {1,2,3},...
    CHECK(bfs_candidates(path, 4) == std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 2, 3}, {1, 2, 3}});
    const AttributedGraph pair = path_graph(0, 2, 0, 0);
    CHECK(bfs_candidates(pair, 10) == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("projection picks the exhaustive minimum") {
    ProtGnnModel::Config c;
    c.max_subgraph_nodes = 6;
    ProtGnnModel m(2, 2, c, 17);
    const graphs::Dataset ds = small_ba2motif(6, 2);
    const MatrixXd before = m.bank().prototypes.value;
    const auto sources = m.project_prototypes(ds.graphs);
    REQUIRE(static_cast<int>(sources.size()) == m.bank().size());
    for (int k = 0; k < m.bank().size(); ++k) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::RowVectorXd arg;
        for (const auto& g : ds.graphs) {
            if (g.label != m.bank().class_of[k]) continue;
            for (const auto& nodes : bfs_candidates(g, c.max_subgraph_nodes)) {
                const Eigen::RowVectorXd z = induced_embedding(g, nodes, m.backbone());
                const double d = (z - before.row(k)).squaredNorm();
                if (d < best) {
                    best = d;
                    arg = z;
                }
            }
        }
        CHECK(sources[k].found);
        CHECK(sources[k].distance == doctest::Approx(best).epsilon(1e-10));
        CHECK((m.bank().prototypes.value.row(k) - arg).cwiseAbs().maxCoeff() < 1e-12);
        const AttributedGraph& src = ds.graphs[static_cast<std::size_t>(sources[k].graph_id)];
        CHECK(src.label == m.bank().class_of[k]);
        // The source subgraph is now at distance zero.
        const SubgraphMatch again = m.closest_subgraph(src, k);
        CHECK(again.distance == 0.0);
    }
    // A second projection finds every prototype on a candidate already.
    for (const auto& s : m.project_prototypes(ds.graphs)) CHECK(s.distance == 0.0);
}

TEST_CASE("projection without a class keeps its prototypes") {
    ProtGnnModel m(2, 2, {}, 3);
    const graphs::Dataset ds = small_ba2motif(6, 2);
    std::vector<AttributedGraph> zeros;
    for (const auto& g : ds.graphs) {
        if (g.label == 0) zeros.push_back(g);
    }
    const MatrixXd before = m.bank().prototypes.value;
    const auto sources = m.project_prototypes(zeros);
    for (int k = m.bank().first_of(1); k < m.bank().size(); ++k) {
        CHECK_FALSE(sources[k].found);
        CHECK(m.bank().prototypes.value.row(k) == before.row(k));
    }
}

TEST_CASE("ProtGNN explanation is the brute-force closest candidate") {
    const ProtGnnModel m(2, 2, {}, 9);
    for (const auto& g : small_ba2motif(6, 4).graphs) {
        const auto mask = m.explain(g);
        CHECK(graphs::is_valid_mask(g, mask));
        CHECK(graphs::is_connected(graphs::extract_subgraph(g, mask).graph));
        const int y = gnn::predict_label(m, g);
        const Eigen::RowVectorXd act = m.activations(g);
        int top = m.bank().first_of(y);
        for (int k = top; k < top + m.bank().per_class; ++k) {
            if (act(k) > act(top)) top = k;
        }
        double best = std::numeric_limits<double>::infinity();
        std::vector<int> arg;
        for (const auto& nodes : bfs_candidates(g, m.config().max_subgraph_nodes)) {
            const double d = (induced_embedding(g, nodes, m.backbone()) - m.bank().prototypes.value.row(top)).squaredNorm();
            if (d < best) {
                best = d;
                arg = nodes;
            }
        }
        std::vector<int> chosen;
        for (int v = 0; v < g.num_nodes; ++v) {
            if (mask.node_mask[v]) chosen.push_back(v);
        }
        CHECK(chosen == arg);
    }
}

TEST_CASE("projection schedule") {
    ProtGnnModel::Config c;
    c.projection_start = 2;
    c.projection_interval = 3;
    ProtGnnModel m(2, 2, c, 1);
    const graphs::Dataset ds = small_ba2motif(4, 1);
    m.on_epoch_end(1, ds.graphs);
    CHECK(m.projection_sources().front().found == false);
    m.on_epoch_end(2, ds.graphs);
    CHECK(m.projection_sources().front().found);
}

// ---------------------------------------------------------------- PIGNN

TEST_CASE("PIGNN single node activations are its similarities") {
    for (PignnVariant v : {PignnVariant::P, PignnVariant::T}) {
        const PignnModel m(2, 2, v, {}, 4);
        const AttributedGraph g = graphs::make_graph(0, 1, {}, (Eigen::MatrixXd(1, 2) << 1.0, 0.5).finished(), 0);
        const MatrixXd s = m.similarities(g);
        REQUIRE(s.rows() == 1);
        Tape tape(false);
        const MatrixXd logits = m.logits(tape, g).value();
        PignnModel copy = m;
        CHECK(logits.isApprox(s * copy.head().value, 1e-12));
    }
}

TEST_CASE("PIGNN duplicated node leaves logits unchanged") {
    Eigen::MatrixXd x(4, 2);
    x << 1, 0, 2, 1, 0, 3, 2, 2;
    const AttributedGraph g = graphs::make_graph(0, 4, {{1, 2}, {2, 3}}, x, 0);
    Eigen::MatrixXd x2(5, 2);
    x2 << x, Eigen::RowVector2d(1, 0);
    const AttributedGraph dup = graphs::make_graph(0, 5, {{1, 2}, {2, 3}}, x2, 0);
    for (PignnVariant v : {PignnVariant::P, PignnVariant::T}) {
        const PignnModel m(2, 2, v, {}, 8);
        Tape t1(false);
        Tape t2(false);
        CHECK((m.logits(t1, g).value() - m.logits(t2, dup).value()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("prototype node selection thresholds") {
    MatrixXd s(4, 2);
    s << 1.0, 0.2, 3.0, 0.1, 2.9, 0.9, 0.5, 0.9;
    CHECK(select_prototype_nodes(s, {0}, 1.0, PignnVariant::P) == std::vector<bool>{false, true, false, false});
    CHECK(select_prototype_nodes(s, {0, 1}, 1.0, PignnVariant::P) == std::vector<bool>{false, true, true, true});
    CHECK(select_prototype_nodes(s, {0}, 0.0, PignnVariant::P) == std::vector<bool>{true, true, true, true});
    CHECK(select_prototype_nodes(s, {0}, 0.9, PignnVariant::P) == std::vector<bool>{false, true, true, false});
    MatrixXd t = -s;
    // Shifted scores for column 0 are 2.0, 0.0, 0.1, 2.5.
    CHECK(select_prototype_nodes(t, {0}, 1.0, PignnVariant::T) == std::vector<bool>{false, false, false, true});
    CHECK(select_prototype_nodes(t, {0}, 0.8, PignnVariant::T) == std::vector<bool>{true, false, false, true});
    CHECK(select_prototype_nodes(t, {0}, 0.0, PignnVariant::T) == std::vector<bool>{true, true, true, true});
}

TEST_CASE("PIGNN explanation contains the most similar nodes") {
    for (PignnVariant v : {PignnVariant::P, PignnVariant::T}) {
        PignnModel::Config c;
        c.tau = 1.0;
        const PignnModel m(2, 2, v, c, 12);
        for (const auto& g : small_ba2motif(6, 3).graphs) {
            const auto mask = m.explain(g);
            CHECK(graphs::is_valid_mask(g, mask));
            const MatrixXd s = m.similarities(g);
            const int y = gnn::predict_label(m, g);
            for (int k = m.bank().first_of(y); k < m.bank().first_of(y) + m.bank().per_class; ++k) {
                Eigen::Index arg = 0;
                s.col(k).maxCoeff(&arg);
                CHECK(mask.node_mask[static_cast<std::size_t>(arg)]);
            }
        }
        PignnModel all = m;
        all.mutable_config().tau = 0.0;
        const AttributedGraph g = small_ba2motif(2, 3).graphs[0];
        CHECK(all.explain(g).node_count() == g.num_nodes);
    }
}

TEST_CASE("PIGNN rejects tau outside [0, 1]") {
    PignnModel::Config c;
    c.tau = 1.5;
    CHECK_THROWS_AS(PignnModel(2, 2, PignnVariant::P, c, 1), ParameterError);
}

// ------------------------------------------------------------ gradients

TEST_CASE("finite-difference checks for every architecture") {
    const auto batch = toy_batch();
    for (gnn::ModelKind k : {gnn::ModelKind::Gisst, gnn::ModelKind::ProtGnn, gnn::ModelKind::PignnP, gnn::ModelKind::PignnT}) {
        CAPTURE(gnn::to_string(k));
        auto m = make_model(k, nlohmann::json::object(), 2, 2, 31);
        const auto report = check_model_gradients(*m, batch);
        CHECK(report.pass);
        CHECK(report.max_rel_error <= 1e-4);
    }
}

// ------------------------------------------------------------ persistence

TEST_CASE("checkpoints round-trip") {
    const auto batch = toy_batch();
    for (gnn::ModelKind k : {gnn::ModelKind::Gcn, gnn::ModelKind::Gisst, gnn::ModelKind::ProtGnn, gnn::ModelKind::PignnP,
                             gnn::ModelKind::PignnT}) {
        CAPTURE(gnn::to_string(k));
        auto m = make_model(k, {{"hidden", 8}}, 2, 2, 40);
        if (auto* p = dynamic_cast<ProtGnnModel*>(m.get())) p->project_prototypes(batch);
        const nlohmann::json j = checkpoint_to_json(*m, 40, "toy");
        const Checkpoint back = checkpoint_from_json(nlohmann::json::parse(j.dump()));
        CHECK(back.seed == 40);
        CHECK(back.dataset_name == "toy");
        CHECK(back.model->kind() == k);
        CHECK(checkpoint_to_json(*back.model, 40, "toy") == j);
        for (const auto& g : batch) {
            CHECK(gnn::predict_distribution(*back.model, g).probs == gnn::predict_distribution(*m, g).probs);
            if (k != gnn::ModelKind::Gcn) CHECK(back.model->explain(g) == m->explain(g));
        }
    }
}

TEST_CASE("malformed checkpoints are rejected") {
    auto m = make_model(gnn::ModelKind::PignnP, nlohmann::json::object(), 2, 2, 1);
    nlohmann::json j = checkpoint_to_json(*m, 1, "x");
    SUBCASE("unknown kind") {
        j["model_kind"] = "GAT";
        CHECK_THROWS(checkpoint_from_json(j));
    }
    SUBCASE("missing parameter") {
        j["params"].erase(j["params"].begin());
        CHECK_THROWS_AS(checkpoint_from_json(j), ValidationError);
    }
    SUBCASE("wrong shape") {
        j["params"].begin().value() = nlohmann::json::array({nlohmann::json::array({1.0})});
        CHECK_THROWS_AS(checkpoint_from_json(j), ValidationError);
    }
}

TEST_CASE("explanation records round-trip") {
    const auto batch = toy_batch();
    auto m = make_model(gnn::ModelKind::Gisst, nlohmann::json::object(), 2, 2, 2);
    for (const auto& g : batch) {
        const auto mask = m->explain(g);
        const nlohmann::json j = explanation_to_json(g, mask, "GISST");
        CHECK(j.at("graph_id") == g.id);
        CHECK(explanation_from_json(g, j) == mask);
        nlohmann::json bad = j;
        bad["nodes"].push_back(g.num_nodes + 3);
        CHECK_THROWS_AS(explanation_from_json(g, bad), ValidationError);
    }
}

TEST_CASE("model factory validation") {
    CHECK_THROWS_AS(make_model(gnn::ModelKind::Gisst, nlohmann::json::object(), 0, 2, 0), ParameterError);
    CHECK_THROWS_AS(make_model(gnn::ModelKind::Gisst, nlohmann::json::object(), 2, 1, 0), ParameterError);
    CHECK_THROWS_AS(make_model(gnn::ModelKind::Gisst, {{"node_budget", 1}}, 2, 2, 0), ParameterError);
}
