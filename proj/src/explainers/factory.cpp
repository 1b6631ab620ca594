#include "faithgnn/explainers/factory.hpp"

#include <fstream>
#include <map>

#include "faithgnn/error.hpp"
#include "faithgnn/explainers/gisst.hpp"
#include "faithgnn/explainers/pignn.hpp"
#include "faithgnn/explainers/protgnn.hpp"

namespace faithgnn::explainers {

using gnn::ModelKind;

std::unique_ptr<gnn::Model> make_model(ModelKind kind, const nlohmann::json& hp, int num_features, int num_classes,
                                       std::uint64_t seed) {
    if (num_features < 1 || num_classes < 2) throw ParameterError("make_model: need >= 1 feature and >= 2 classes");
    const nlohmann::json h = hp.is_null() ? nlohmann::json::object() : hp;
    switch (kind) {
        case ModelKind::Gcn: {
            gnn::GcnClassifier::Config c;
            c.hidden = h.value("hidden", c.hidden);
            c.layers = h.value("layers", c.layers);
            c.pooling = gnn::parse_pooling(h.value("pooling", std::string(gnn::to_string(c.pooling))));
            return std::make_unique<gnn::GcnClassifier>(num_features, num_classes, c, seed);
        }
        case ModelKind::Gisst:
            return std::make_unique<GisstModel>(num_features, num_classes, GisstModel::config_from_json(h), seed);
        case ModelKind::ProtGnn:
            return std::make_unique<ProtGnnModel>(num_features, num_classes, ProtGnnModel::config_from_json(h), seed);
        case ModelKind::PignnP:
            return std::make_unique<PignnModel>(num_features, num_classes, PignnVariant::P,
                                                PignnModel::config_from_json(h), seed);
        case ModelKind::PignnT:
            return std::make_unique<PignnModel>(num_features, num_classes, PignnVariant::T,
                                                PignnModel::config_from_json(h), seed);
    }
    throw ParameterError("make_model: unknown kind");
}

namespace {

nlohmann::json matrix_to_json(const MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixXd matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols, const std::string& name) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        throw ValidationError("checkpoint: parameter '" + name + "' has wrong row count");
    }
    MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ValidationError("checkpoint: parameter '" + name + "' has wrong column count");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

} // namespace

nlohmann::json checkpoint_to_json(const gnn::Model& model, std::uint64_t seed, const std::string& dataset_name) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto* p : model.parameters()) params[p->name] = matrix_to_json(p->value);
    return {{"model_kind", gnn::to_string(model.kind())},
            {"hyperparams", model.hyperparams()},
            {"num_features", model.num_features()},
            {"num_classes", model.num_classes()},
            {"params", params},
            {"seed", seed},
            {"dataset_name", dataset_name},
            {"extra", model.extra_state()}};
}

Checkpoint checkpoint_from_json(const nlohmann::json& j) {
    Checkpoint ck;
    try {
        const ModelKind kind = gnn::parse_model_kind(j.at("model_kind").get<std::string>());
        ck.seed = j.at("seed").get<std::uint64_t>();
        ck.dataset_name = j.value("dataset_name", std::string());
        ck.model = make_model(kind, j.at("hyperparams"), j.at("num_features").get<int>(),
                              j.at("num_classes").get<int>(), ck.seed);
        const auto& params = j.at("params");
        for (auto* p : ck.model->parameters()) {
            if (!params.contains(p->name)) throw ValidationError("checkpoint: missing parameter '" + p->name + "'");
            p->value = matrix_from_json(params.at(p->name), p->value.rows(), p->value.cols(), p->name);
        }
        if (j.contains("extra")) ck.model->load_extra_state(j.at("extra"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("checkpoint: ") + e.what());
    } catch (const ParameterError& e) {
        throw ValidationError(std::string("checkpoint: ") + e.what());
    }
    return ck;
}

void save_checkpoint(const std::filesystem::path& path, const gnn::Model& model, std::uint64_t seed,
                     const std::string& dataset_name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << checkpoint_to_json(model, seed, dataset_name).dump() << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open checkpoint " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return checkpoint_from_json(j);
}

nlohmann::json explanation_to_json(const graphs::AttributedGraph& g, const graphs::ExplanationMask& m,
                                   const std::string& model_kind) {
    graphs::require_valid_mask(g, m);
    nlohmann::json nodes = nlohmann::json::array();
    nlohmann::json edges = nlohmann::json::array();
    nlohmann::json features = nlohmann::json::array();
    for (int v = 0; v < g.num_nodes; ++v) {
        if (m.node_mask[static_cast<std::size_t>(v)]) nodes.push_back(v);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (m.edge_mask[e]) edges.push_back({g.edges[e].u, g.edges[e].v});
    }
    for (std::size_t f = 0; f < m.feature_mask.size(); ++f) {
        if (m.feature_mask[f]) features.push_back(f);
    }
    return {{"graph_id", g.id},
            {"variant", graphs::to_string(m.variant)},
            {"nodes", nodes},
            {"edges", edges},
            {"features", features},
            {"model_kind", model_kind}};
}

graphs::ExplanationMask explanation_from_json(const graphs::AttributedGraph& g, const nlohmann::json& j) {
    graphs::ExplanationMask m;
    const std::string where = "explanation for graph " + std::to_string(g.id);
    try {
        const std::string variant = j.value("variant", std::string("model"));
        if (variant == "model") {
            m.variant = graphs::MaskVariant::Model;
        } else if (variant == "random") {
            m.variant = graphs::MaskVariant::Random;
        } else {
            throw ValidationError(where + ": unknown variant '" + variant + "'");
        }
        m.node_mask.assign(static_cast<std::size_t>(g.num_nodes), false);
        m.edge_mask.assign(g.edges.size(), false);
        m.feature_mask.assign(static_cast<std::size_t>(g.num_features()), false);
        for (const auto& v : j.at("nodes")) {
            const int i = v.get<int>();
            if (i < 0 || i >= g.num_nodes) throw ValidationError(where + ": node out of range");
            m.node_mask[static_cast<std::size_t>(i)] = true;
        }
        std::map<graphs::Edge, std::size_t> index;
        for (std::size_t e = 0; e < g.edges.size(); ++e) index.emplace(g.edges[e], e);
        for (const auto& e : j.at("edges")) {
            const auto it = index.find(graphs::make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
            if (it == index.end()) throw ValidationError(where + ": edge not in graph");
            m.edge_mask[it->second] = true;
        }
        for (const auto& f : j.at("features")) {
            const int i = f.get<int>();
            if (i < 0 || i >= g.num_features()) throw ValidationError(where + ": feature out of range");
            m.feature_mask[static_cast<std::size_t>(i)] = true;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
    if (!graphs::is_valid_mask(g, m)) throw ValidationError(where + ": edge selected without both endpoints");
    return m;
}

void write_explanations(std::ostream& out, const std::vector<graphs::AttributedGraph>& graphs,
                        const std::vector<graphs::ExplanationMask>& masks, const std::string& model_kind) {
    if (graphs.size() != masks.size()) throw ParameterError("write_explanations: one mask per graph required");
    for (std::size_t i = 0; i < graphs.size(); ++i) out << explanation_to_json(graphs[i], masks[i], model_kind).dump() << '\n';
}

void save_explanations(const std::filesystem::path& path, const std::vector<graphs::AttributedGraph>& graphs,
                       const std::vector<graphs::ExplanationMask>& masks, const std::string& model_kind) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_explanations(out, graphs, masks, model_kind);
}

std::vector<nlohmann::json> load_explanation_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<nlohmann::json> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(nlohmann::json::parse(line));
            if (!out.back().contains("graph_id")) throw ParseError("missing graph_id");
        } catch (const std::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

} // namespace faithgnn::explainers
