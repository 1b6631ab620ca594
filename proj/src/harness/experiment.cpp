#include "faithgnn/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>

#include "faithgnn/error.hpp"
#include "faithgnn/explainers/factory.hpp"
#include "faithgnn/gnn/train.hpp"
#include "faithgnn/graphs/io.hpp"
#include "faithgnn/harness/report.hpp"
#include "faithgnn/numerics/rng.hpp"

namespace faithgnn::harness {

namespace fs = std::filesystem;

Splits make_splits(const std::vector<int>& labels, double train_fraction, double val_fraction, double test_fraction,
                   std::uint64_t seed) {
    if (std::abs(train_fraction + val_fraction + test_fraction - 1.0) > 1e-9) {
        throw ValidationError("make_splits: fractions must sum to 1");
    }
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(static_cast<int>(i));
    const int slots = (train_fraction > 0) + (val_fraction > 0) + (test_fraction > 0);
    Splits s;
    for (auto& [label, members] : by_class) {
        const int n = static_cast<int>(members.size());
        if (n < slots) {
            throw ValidationError("make_splits: class " + std::to_string(label) + " has " + std::to_string(n) +
                                  " graphs, fewer than the " + std::to_string(slots) + " split slots");
        }
        numerics::Rng rng(numerics::derive_seed(seed, "split", static_cast<std::uint64_t>(label)));
        std::shuffle(members.begin(), members.end(), rng);
        auto share = [&](double f) {
            if (f <= 0.0) return 0;
            return std::max(1, static_cast<int>(std::lround(f * n)));
        };
        const int n_val = share(val_fraction);
        const int n_test = share(test_fraction);
        const int n_train = n - n_val - n_test;
        if (n_train < (train_fraction > 0 ? 1 : 0)) {
            throw ValidationError("make_splits: class " + std::to_string(label) + " is too small for the split");
        }
        s.train.insert(s.train.end(), members.begin(), members.begin() + n_train);
        s.val.insert(s.val.end(), members.begin() + n_train, members.begin() + n_train + n_val);
        s.test.insert(s.test.end(), members.begin() + n_train + n_val, members.end());
    }
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.val.begin(), s.val.end());
    std::sort(s.test.begin(), s.test.end());
    return s;
}

double majority_frequency(const std::vector<int>& labels) {
    if (labels.empty()) return 0.0;
    std::map<int, int> counts;
    for (int l : labels) ++counts[l];
    int best = 0;
    for (const auto& [l, c] : counts) best = std::max(best, c);
    return static_cast<double>(best) / static_cast<double>(labels.size());
}

Validity validity_filter(const std::vector<double>& accuracies, double majority) {
    if (accuracies.empty()) return {false, "no evaluated seeds"};
    const double mean = std::accumulate(accuracies.begin(), accuracies.end(), 0.0) / accuracies.size();
    // Small slack keeps the inclusive boundary robust to summation rounding.
    if (mean <= majority + 0.05 + 1e-12) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "mean accuracy %.4f <= majority frequency %.4f + 0.05", mean, majority);
        return {false, buf};
    }
    return {true, ""};
}

const char* to_string(ColorClass c) {
    switch (c) {
        case ColorClass::Red: return "red";
        case ColorClass::Orange: return "orange";
        case ColorClass::Green: return "green";
    }
    return "?";
}

ColorClass color_class(MetricDirection direction, double v_e, double v_r) {
    const long long e = std::llround(v_e * 100.0);
    const long long r = std::llround(v_r * 100.0);
    const long long worse = direction == MetricDirection::LowerBetter ? r - e : e - r;
    if (worse <= 0) return ColorClass::Red;
    if (worse <= 10) return ColorClass::Orange;
    return ColorClass::Green;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd m;
    if (values.empty()) return m;
    m.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return m;
}

void RunReport::summarize() {
    std::vector<double> a, ue, ur, fme, fmr, fpe, fpr;
    double majority = 0.0;
    for (const auto& s : seeds) {
        a.push_back(s.test_accuracy);
        ue.push_back(s.model.unf);
        ur.push_back(s.random.unf);
        fme.push_back(s.model.fid_minus);
        fmr.push_back(s.random.fid_minus);
        fpe.push_back(s.model.fid_plus);
        fpr.push_back(s.random.fid_plus);
        majority += s.majority_frequency;
    }
    if (!seeds.empty()) majority /= static_cast<double>(seeds.size());
    acc = mean_std(a);
    unf_e = mean_std(ue);
    unf_r = mean_std(ur);
    fid_minus_e = mean_std(fme);
    fid_minus_r = mean_std(fmr);
    fid_plus_e = mean_std(fpe);
    fid_plus_r = mean_std(fpr);
    validity = validity_filter(a, majority);
    complete = failed_seeds.empty();
}

namespace {

nlohmann::json aggregate_json(const faithfulness::Aggregate& a) {
    return {{"unf", a.unf}, {"fid_plus", a.fid_plus}, {"fid_minus", a.fid_minus}, {"graphs", a.graphs}};
}

faithfulness::Aggregate aggregate_from(const nlohmann::json& j) {
    faithfulness::Aggregate a;
    a.unf = j.at("unf").get<double>();
    a.fid_plus = j.at("fid_plus").get<double>();
    a.fid_minus = j.at("fid_minus").get<double>();
    a.graphs = j.at("graphs").get<int>();
    return a;
}

nlohmann::json ms_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}}; }

nlohmann::json seed_json(const SeedResult& s) {
    nlohmann::json j = {{"seed", s.seed},
                        {"test_accuracy", s.test_accuracy},
                        {"majority_frequency", s.majority_frequency},
                        {"best_epoch", s.best_epoch},
                        {"model", aggregate_json(s.model)},
                        {"random", aggregate_json(s.random)},
                        {"excluded_graph_ids", s.excluded_graph_ids}};
    if (s.gt_jaccard_model) j["gt_jaccard_model"] = *s.gt_jaccard_model;
    if (s.gt_jaccard_random) j["gt_jaccard_random"] = *s.gt_jaccard_random;
    return j;
}

SeedResult seed_from(const nlohmann::json& j) {
    SeedResult s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.test_accuracy = j.at("test_accuracy").get<double>();
    s.majority_frequency = j.at("majority_frequency").get<double>();
    s.best_epoch = j.value("best_epoch", 0);
    s.model = aggregate_from(j.at("model"));
    s.random = aggregate_from(j.at("random"));
    s.excluded_graph_ids = j.value("excluded_graph_ids", std::vector<int>{});
    if (j.contains("gt_jaccard_model")) s.gt_jaccard_model = j.at("gt_jaccard_model").get<double>();
    if (j.contains("gt_jaccard_random")) s.gt_jaccard_random = j.at("gt_jaccard_random").get<double>();
    return s;
}

std::string display_name(const std::string& dataset) {
    if (dataset == "ba2motif") return "Ba2Motif";
    if (dataset == "bams") return "BaMS";
    return dataset;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

} // namespace

nlohmann::json to_json(const RunReport& r) {
    nlohmann::json seeds = nlohmann::json::array();
    for (const auto& s : r.seeds) seeds.push_back(seed_json(s));
    return {{"dataset", r.dataset},
            {"model", r.model},
            {"config_hash", r.config_hash},
            {"complete", r.complete},
            {"failed_seeds", r.failed_seeds},
            {"failure_messages", r.failure_messages},
            {"valid", r.validity.valid},
            {"exclusion_reason", r.validity.reason},
            {"seeds", seeds},
            {"summary",
             {{"acc", ms_json(r.acc)},
              {"unf_e", ms_json(r.unf_e)},
              {"unf_r", ms_json(r.unf_r)},
              {"fid_minus_e", ms_json(r.fid_minus_e)},
              {"fid_minus_r", ms_json(r.fid_minus_r)},
              {"fid_plus_e", ms_json(r.fid_plus_e)},
              {"fid_plus_r", ms_json(r.fid_plus_r)}}}};
}

RunReport run_report_from_json(const nlohmann::json& j) {
    RunReport r;
    try {
        r.dataset = j.at("dataset").get<std::string>();
        r.model = j.at("model").get<std::string>();
        r.config_hash = j.value("config_hash", std::string());
        for (const auto& s : j.at("seeds")) r.seeds.push_back(seed_from(s));
        r.failed_seeds = j.value("failed_seeds", std::vector<std::uint64_t>{});
        r.failure_messages = j.value("failure_messages", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("run report: ") + e.what());
    }
    r.summarize();
    return r;
}

TrainedSeed train_seed(const ExperimentConfig& config, const graphs::Dataset& dataset, std::uint64_t seed) {
    std::vector<int> labels;
    for (const auto& g : dataset.graphs) labels.push_back(g.label);
    TrainedSeed ts;
    ts.splits = make_splits(labels, config.train_fraction, config.val_fraction, config.test_fraction,
                            numerics::derive_seed(seed, "split"));
    auto pick = [&](const std::vector<int>& idx) {
        std::vector<graphs::AttributedGraph> v;
        v.reserve(idx.size());
        for (int i : idx) v.push_back(dataset.graphs[static_cast<std::size_t>(i)]);
        return v;
    };
    ts.train_set = pick(ts.splits.train);
    ts.val_set = pick(ts.splits.val);
    ts.test_set = pick(ts.splits.test);
    ts.model = explainers::make_model(config.model_kind, config.hyperparams, dataset.num_features,
                                      dataset.num_classes, numerics::derive_seed(seed, "init"));
    gnn::TrainConfig tc;
    tc.epochs = config.epochs;
    tc.adam = {config.lr, config.beta1, config.beta2, config.adam_eps};
    ts.result = gnn::train(*ts.model, ts.train_set, ts.val_set, tc);
    return ts;
}

void write_train_log(const fs::path& path, const gnn::TrainResult& result) {
    std::ofstream log(path, std::ios::binary);
    if (!log) throw std::runtime_error("cannot write " + path.string());
    log << "epoch,train_loss,train_acc,val_loss,val_acc\n";
    for (const auto& e : result.log) {
        log << e.epoch << ',' << faithfulness::format_double(e.train_loss) << ','
            << faithfulness::format_double(e.train_acc) << ',' << faithfulness::format_double(e.val_loss) << ','
            << faithfulness::format_double(e.val_acc) << '\n';
    }
}

RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const fs::path out = config.output_dir;
    fs::create_directories(out);
    graphs::Dataset dataset = load_dataset(config.dataset);
    dataset.validate();
    graphs::save_graphs(out / "dataset.jsonl", dataset);

    RunReport report;
    report.dataset = display_name(dataset.name);
    report.model = gnn::to_string(config.model_kind);
    report.config_hash = config_hash(config);

    nlohmann::json manifest = {{"config_hash", report.config_hash},
                               {"config", canonical_text(config)},
                               {"seeds", config.seeds},
                               {"dataset", dataset.name},
                               {"model", report.model},
                               {"num_graphs", dataset.size()}};
    write_text(out / "manifest.json", manifest.dump(2) + "\n");

    for (std::uint64_t seed : config.seeds) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const fs::path dir = out / ("seed_" + std::to_string(seed));
            fs::create_directories(dir);
            TrainedSeed ts = train_seed(config, dataset, seed);
            const Splits& splits = ts.splits;
            const auto& test_set = ts.test_set;
            auto& model = ts.model;
            const gnn::TrainResult& tr = ts.result;
            write_train_log(dir / "train_log.csv", tr);
            explainers::save_checkpoint(dir / "checkpoint.json", *model, seed, dataset.name);

            std::vector<graphs::ExplanationMask> masks;
            std::vector<std::optional<graphs::ExplanationMask>> slots;
            for (const auto& g : test_set) {
                masks.push_back(model->explain(g));
                graphs::require_valid_mask(g, masks.back());
                slots.emplace_back(masks.back());
            }
            explainers::save_explanations(dir / "explanations.jsonl", test_set, masks, report.model);

            faithfulness::EvaluationOptions eo;
            eo.baseline_draws = config.baseline_draws;
            eo.seed = numerics::derive_seed(seed, "baseline");
            const auto ev = faithfulness::evaluate_explanations(*model, test_set, slots, eo);
            {
                std::ofstream csv(dir / "metrics.csv", std::ios::binary);
                faithfulness::write_metrics_csv(csv, ev.records);
            }

            SeedResult sr;
            sr.seed = seed;
            sr.test_accuracy = gnn::evaluate_accuracy(*model, test_set);
            std::vector<int> test_labels;
            for (const auto& g : test_set) test_labels.push_back(g.label);
            sr.majority_frequency = majority_frequency(test_labels);
            sr.best_epoch = tr.best_epoch;
            sr.model = ev.model;
            sr.random = ev.random;
            sr.excluded_graph_ids = ev.excluded_graph_ids;
            if (dataset.ground_truth_masks) {
                double jm = 0.0;
                double jr = 0.0;
                for (std::size_t t = 0; t < test_set.size(); ++t) {
                    const auto& gt =
                        (*dataset.ground_truth_masks)[static_cast<std::size_t>(splits.test[t])].node_mask;
                    jm += faithfulness::node_jaccard(masks[t].node_mask, gt);
                    double r = 0.0;
                    for (int d = 0; d < config.baseline_draws; ++d) {
                        r += faithfulness::node_jaccard(
                            faithfulness::random_subgraph(test_set[t], masks[t], eo.seed, d).node_mask, gt);
                    }
                    jr += r / config.baseline_draws;
                }
                sr.gt_jaccard_model = jm / static_cast<double>(test_set.size());
                sr.gt_jaccard_random = jr / static_cast<double>(test_set.size());
            }
            write_text(dir / "summary.json", seed_json(sr).dump(2) + "\n");
            report.seeds.push_back(std::move(sr));
            if (options.verbose) {
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                std::fprintf(stderr, "[%s/%s] seed %llu: acc %.4f, best epoch %d (%.1fs)\n", report.dataset.c_str(),
                             report.model.c_str(), static_cast<unsigned long long>(seed),
                             report.seeds.back().test_accuracy, tr.best_epoch, secs);
            }
        } catch (const std::exception& e) {
            report.failed_seeds.push_back(seed);
            report.failure_messages.push_back(e.what());
            std::fprintf(stderr, "[%s/%s] seed %llu failed: %s\n", report.dataset.c_str(), report.model.c_str(),
                         static_cast<unsigned long long>(seed), e.what());
        }
    }
    report.summarize();
    write_text(out / "run_report.json", to_json(report).dump(2) + "\n");
    write_text(out / "report.md", render_report({report}, ReportFormat::Markdown));
    write_text(out / "report.csv", render_report({report}, ReportFormat::Csv));
    return report;
}

} // namespace faithgnn::harness
