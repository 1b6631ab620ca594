#include "faithgnn/graphs/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "faithgnn/error.hpp"

namespace faithgnn::graphs {

using nlohmann::json;

json graph_to_json(const AttributedGraph& g, const ExplanationMask* ground_truth) {
    json j;
    j["id"] = g.id;
    j["num_nodes"] = g.num_nodes;
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
    json feats = json::array();
    for (int r = 0; r < g.num_nodes; ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < g.features.cols(); ++c) row.push_back(g.features(r, c));
        feats.push_back(std::move(row));
    }
    j["features"] = std::move(feats);
    j["label"] = g.label;
    if (ground_truth != nullptr) {
        json nodes = json::array();
        for (int i = 0; i < g.num_nodes; ++i) {
            if (ground_truth->node_mask[static_cast<std::size_t>(i)]) nodes.push_back(i);
        }
        json gt_edges = json::array();
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (ground_truth->edge_mask[e]) gt_edges.push_back({g.edges[e].u, g.edges[e].v});
        }
        j["gt_nodes"] = std::move(nodes);
        j["gt_edges"] = std::move(gt_edges);
    }
    return j;
}

namespace {

struct ParsedLine {
    AttributedGraph graph;
    std::optional<ExplanationMask> gt;
};

ParsedLine parse_record(const json& j) {
    ParsedLine out;
    AttributedGraph& g = out.graph;
    g.id = j.at("id").get<int>();
    g.num_nodes = j.at("num_nodes").get<int>();
    g.label = j.at("label").get<int>();
    const auto& feats = j.at("features");
    if (!feats.is_array()) throw ParseError("features must be an array");
    const int width = feats.empty() ? 0 : static_cast<int>(feats.front().size());
    g.features.resize(static_cast<Eigen::Index>(feats.size()), width);
    for (std::size_t r = 0; r < feats.size(); ++r) {
        if (static_cast<int>(feats[r].size()) != width) {
            throw ValidationError("graph " + std::to_string(g.id) + ": feature rows have different widths");
        }
        for (int c = 0; c < width; ++c) g.features(static_cast<Eigen::Index>(r), c) = feats[r][static_cast<std::size_t>(c)].get<double>();
    }
    for (const auto& e : j.at("edges")) {
        if (e.size() != 2) throw ParseError("edge entries must be [u, v] pairs");
        g.edges.push_back(Edge{e[0].get<int>(), e[1].get<int>()});
    }
    g.validate();
    if (j.contains("gt_nodes") || j.contains("gt_edges")) {
        ExplanationMask m;
        m.node_mask.assign(static_cast<std::size_t>(g.num_nodes), false);
        m.edge_mask.assign(g.edges.size(), false);
        m.feature_mask.assign(static_cast<std::size_t>(g.num_features()), true);
        for (const auto& v : j.value("gt_nodes", json::array())) {
            const int n = v.get<int>();
            if (n < 0 || n >= g.num_nodes) throw ValidationError("graph " + std::to_string(g.id) + ": gt node out of range");
            m.node_mask[static_cast<std::size_t>(n)] = true;
        }
        for (const auto& e : j.value("gt_edges", json::array())) {
            const Edge edge = make_edge(e.at(0).get<int>(), e.at(1).get<int>());
            auto it = std::lower_bound(g.edges.begin(), g.edges.end(), edge);
            if (it == g.edges.end() || *it != edge) {
                throw ValidationError("graph " + std::to_string(g.id) + ": gt edge not in graph");
            }
            m.edge_mask[static_cast<std::size_t>(it - g.edges.begin())] = true;
        }
        out.gt = std::move(m);
    }
    return out;
}

} // namespace

Dataset read_graphs(std::istream& in, const std::string& name) {
    Dataset ds;
    ds.name = name;
    std::vector<std::optional<ExplanationMask>> gts;
    std::string line;
    int line_no = 0;
    int max_label = -1;
    bool have_width = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        ParsedLine rec;
        try {
            rec = parse_record(json::parse(line));
        } catch (const json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (rec.graph.num_nodes > 0) {
            if (!have_width) {
                ds.num_features = rec.graph.num_features();
                have_width = true;
            }
        }
        max_label = std::max(max_label, rec.graph.label);
        ds.graphs.push_back(std::move(rec.graph));
        gts.push_back(std::move(rec.gt));
    }
    ds.num_classes = max_label + 1;
    const bool any_gt = std::any_of(gts.begin(), gts.end(), [](const auto& m) { return m.has_value(); });
    if (any_gt) {
        ds.ground_truth_masks.emplace();
        for (std::size_t i = 0; i < gts.size(); ++i) {
            if (!gts[i]) throw ValidationError("graph " + std::to_string(ds.graphs[i].id) + ": missing ground truth");
            ds.ground_truth_masks->push_back(std::move(*gts[i]));
        }
    }
    ds.validate();
    return ds;
}

Dataset load_graphs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open dataset file " + path.string());
    return read_graphs(in, path.stem().string());
}

void write_graphs(std::ostream& out, const Dataset& ds) {
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
        const ExplanationMask* gt = ds.ground_truth_masks ? &(*ds.ground_truth_masks)[i] : nullptr;
        out << graph_to_json(ds.graphs[i], gt).dump() << '\n';
    }
}

void save_graphs(const std::filesystem::path& path, const Dataset& ds) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write dataset file " + path.string());
    write_graphs(out, ds);
}

} // namespace faithgnn::graphs
