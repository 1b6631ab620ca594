#include "faithgnn/faithfulness/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "faithgnn/error.hpp"
#include "faithgnn/numerics/ops.hpp"
#include "faithgnn/numerics/rng.hpp"

namespace faithgnn::faithfulness {

double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    if (p.size() != q.size()) throw ParameterError("kl_divergence: length mismatch");
    if ((p - q).cwiseAbs().maxCoeff() <= 1e-12) return 0.0;
    double kl = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double pi = std::max(p(i), numerics::kProbabilityFloor);
        const double qi = std::max(q(i), numerics::kProbabilityFloor);
        kl += pi * (std::log(pi) - std::log(qi));
    }
    return std::max(kl, 0.0);
}

double kl_divergence(const LabelDistribution& p, const LabelDistribution& q) { return kl_divergence(p.probs, q.probs); }

double unfaithfulness_from_kl(double kl) { return -std::expm1(-kl); }

double unfaithfulness(const Model& model, const AttributedGraph& g, const ExplanationMask& mask) {
    const graphs::Subgraph e = graphs::extract_subgraph(g, mask);
    return unfaithfulness_from_kl(
        kl_divergence(gnn::predict_distribution(model, g), gnn::predict_distribution(model, e.graph)));
}

Fidelity fidelity(const Model& model, const AttributedGraph& g, const ExplanationMask& mask, int y) {
    Fidelity f;
    f.y_hat = gnn::predict_label(model, g);
    f.y_hat_expl = gnn::predict_label(model, graphs::extract_subgraph(g, mask).graph);
    f.y_hat_compl = gnn::predict_label(model, graphs::extract_subgraph(g, graphs::complement_mask(g, mask)).graph);
    const int hit = f.y_hat == y ? 1 : 0;
    f.fid_plus = std::abs(hit - (f.y_hat_compl == y ? 1 : 0));
    f.fid_minus = std::abs(hit - (f.y_hat_expl == y ? 1 : 0));
    return f;
}

ExplanationMask random_subgraph(const AttributedGraph& g, const ExplanationMask& reference, std::uint64_t seed,
                                int draw) {
    graphs::require_valid_mask(g, reference);
    const int k = reference.node_count();
    std::vector<int> all(static_cast<std::size_t>(g.num_nodes));
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(k));
    numerics::Rng rng(numerics::derive_seed(seed, "random-subgraph",
                                            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g.id)) << 32) |
                                                static_cast<std::uint32_t>(draw)));
    std::sample(all.begin(), all.end(), std::back_inserter(picked), k, rng);
    ExplanationMask m = graphs::induced_mask(g, picked, MaskVariant::Random);
    m.feature_mask = reference.feature_mask;
    return m;
}

MetricRecord evaluate_mask(const Model& model, const AttributedGraph& g, const ExplanationMask& mask) {
    MetricRecord r;
    r.graph_id = g.id;
    r.variant = mask.variant;
    r.y = g.label;
    r.unf = unfaithfulness(model, g, mask);
    const Fidelity f = fidelity(model, g, mask, g.label);
    r.fid_plus = f.fid_plus;
    r.fid_minus = f.fid_minus;
    r.y_hat = f.y_hat;
    r.y_hat_expl = f.y_hat_expl;
    r.y_hat_compl = f.y_hat_compl;
    return r;
}

namespace {

Aggregate mean_of(const std::vector<Aggregate>& rows) {
    Aggregate a;
    a.graphs = static_cast<int>(rows.size());
    if (rows.empty()) return a;
    for (const auto& r : rows) {
        a.unf += r.unf;
        a.fid_plus += r.fid_plus;
        a.fid_minus += r.fid_minus;
    }
    a.unf /= static_cast<double>(rows.size());
    a.fid_plus /= static_cast<double>(rows.size());
    a.fid_minus /= static_cast<double>(rows.size());
    return a;
}

} // namespace

EvaluationResult evaluate_explanations(const Model& model, std::span<const AttributedGraph> graphs,
                                       const std::vector<std::optional<ExplanationMask>>& masks,
                                       const EvaluationOptions& options) {
    if (masks.size() != graphs.size()) throw ParameterError("evaluate_explanations: one mask slot per graph");
    if (options.baseline_draws < 1) throw ParameterError("evaluate_explanations: baseline draws must be >= 1");
    std::vector<std::size_t> order(graphs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return graphs[a].id < graphs[b].id; });

    EvaluationResult out;
    for (std::size_t i : order) {
        const AttributedGraph& g = graphs[i];
        if (!masks[i]) {
            out.excluded_graph_ids.push_back(g.id);
            continue;
        }
        ExplanationMask em = *masks[i];
        em.variant = MaskVariant::Model;
        const MetricRecord mr = evaluate_mask(model, g, em);
        out.records.push_back(mr);
        out.per_graph_model.push_back({mr.unf, double(mr.fid_plus), double(mr.fid_minus), 1});
        std::vector<Aggregate> draws;
        for (int d = 0; d < options.baseline_draws; ++d) {
            MetricRecord rr = evaluate_mask(model, g, random_subgraph(g, em, options.seed, d));
            rr.draw = d;
            out.records.push_back(rr);
            draws.push_back({rr.unf, double(rr.fid_plus), double(rr.fid_minus), 1});
        }
        Aggregate per = mean_of(draws);
        per.graphs = 1;
        out.per_graph_random.push_back(per);
    }
    out.model = mean_of(out.per_graph_model);
    out.random = mean_of(out.per_graph_random);
    return out;
}

double node_jaccard(const std::vector<bool>& a, const std::vector<bool>& b) {
    if (a.size() != b.size()) throw ParameterError("node_jaccard: length mismatch");
    int inter = 0;
    int uni = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] && b[i]) ? 1 : 0;
        uni += (a[i] || b[i]) ? 1 : 0;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricRecord>& records) {
    out << "graph_id,variant,unf,fid_plus,fid_minus,y,y_hat,y_hat_expl,y_hat_compl\n";
    for (const auto& r : records) {
        out << r.graph_id << ',' << graphs::to_string(r.variant) << ',' << format_double(r.unf) << ',' << r.fid_plus
            << ',' << r.fid_minus << ',' << r.y << ',' << r.y_hat << ',' << r.y_hat_expl << ',' << r.y_hat_compl
            << '\n';
    }
}

} // namespace faithgnn::faithfulness
