#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "faithgnn/error.hpp"
#include "faithgnn/explainers/factory.hpp"
#include "faithgnn/faithfulness/metrics.hpp"
#include "faithgnn/graphs/generators.hpp"
#include "faithgnn/graphs/io.hpp"
#include "faithgnn/harness/config.hpp"
#include "faithgnn/harness/experiment.hpp"
#include "faithgnn/harness/report.hpp"

namespace fs = std::filesystem;
using namespace faithgnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitFailedSeeds = 3;

void ensure_parent(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

int cmd_generate(const std::string& dataset, int count, std::uint64_t seed, const fs::path& out) {
    graphs::Dataset ds;
    if (dataset == "ba2motif") {
        ds = graphs::generate_ba2motif(count, seed);
    } else if (dataset == "bams") {
        ds = graphs::generate_bams(count, seed);
    } else {
        throw ParameterError("unknown dataset '" + dataset + "'");
    }
    ensure_parent(out);
    graphs::save_graphs(out, ds);
    std::cout << "wrote " << ds.size() << " graphs to " << out.string() << "\n";
    return kExitOk;
}

int cmd_train(const fs::path& config_path, std::uint64_t seed, const fs::path& out) {
    const harness::ExperimentConfig config = harness::load_config(config_path);
    graphs::Dataset ds = harness::load_dataset(config.dataset);
    ds.validate();
    fs::create_directories(out);
    harness::TrainedSeed ts = harness::train_seed(config, ds, seed);
    harness::write_train_log(out / "train_log.csv", ts.result);
    explainers::save_checkpoint(out / "checkpoint.json", *ts.model, seed, ds.name);
    graphs::Dataset test;
    test.name = ds.name + "_test";
    test.num_features = ds.num_features;
    test.num_classes = ds.num_classes;
    test.graphs = ts.test_set;
    if (ds.ground_truth_masks) {
        std::vector<graphs::ExplanationMask> gt;
        for (int i : ts.splits.test) gt.push_back((*ds.ground_truth_masks)[static_cast<std::size_t>(i)]);
        test.ground_truth_masks = std::move(gt);
    }
    graphs::save_graphs(out / "test.jsonl", test);
    std::cout << "best epoch " << ts.result.best_epoch << ", validation accuracy " << ts.result.best_val_acc
              << ", test accuracy " << gnn::evaluate_accuracy(*ts.model, ts.test_set) << "\n";
    return kExitOk;
}

int cmd_explain(const fs::path& checkpoint, const fs::path& data, const fs::path& out) {
    const explainers::Checkpoint ck = explainers::load_checkpoint(checkpoint);
    const graphs::Dataset ds = graphs::load_graphs(data);
    std::vector<graphs::ExplanationMask> masks;
    for (const auto& g : ds.graphs) masks.push_back(ck.model->explain(g));
    ensure_parent(out);
    explainers::save_explanations(out, ds.graphs, masks, gnn::to_string(ck.model->kind()));
    std::cout << "wrote " << masks.size() << " explanations to " << out.string() << "\n";
    return kExitOk;
}

int cmd_evaluate(const fs::path& checkpoint, const fs::path& data, const fs::path& explanations, int draws,
                 std::uint64_t seed, const fs::path& out) {
    const explainers::Checkpoint ck = explainers::load_checkpoint(checkpoint);
    const graphs::Dataset ds = graphs::load_graphs(data);
    std::map<int, nlohmann::json> by_id;
    for (auto& rec : explainers::load_explanation_records(explanations)) {
        if (rec.value("variant", std::string("model")) != "model") continue;
        by_id[rec.at("graph_id").get<int>()] = rec;
    }
    std::vector<std::optional<graphs::ExplanationMask>> masks;
    for (const auto& g : ds.graphs) {
        const auto it = by_id.find(g.id);
        if (it == by_id.end()) {
            masks.emplace_back();
        } else {
            masks.emplace_back(explainers::explanation_from_json(g, it->second));
        }
    }
    faithfulness::EvaluationOptions opt;
    opt.baseline_draws = draws;
    opt.seed = seed;
    const auto ev = faithfulness::evaluate_explanations(*ck.model, ds.graphs, masks, opt);
    ensure_parent(out);
    {
        std::ofstream csv(out, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + out.string());
        faithfulness::write_metrics_csv(csv, ev.records);
    }
    std::cout << "model:  unf " << ev.model.unf << "  fid+ " << ev.model.fid_plus << "  fid- " << ev.model.fid_minus
              << "  (" << ev.model.graphs << " graphs)\n"
              << "random: unf " << ev.random.unf << "  fid+ " << ev.random.fid_plus << "  fid- "
              << ev.random.fid_minus << "\n";
    if (!ev.excluded_graph_ids.empty()) {
        std::cout << "excluded (no explanation):";
        for (int id : ev.excluded_graph_ids) std::cout << ' ' << id;
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_run(const fs::path& config_path, const std::optional<fs::path>& out, bool quiet) {
    harness::ExperimentConfig config = harness::load_config(config_path);
    if (out) config.output_dir = *out;
    harness::RunOptions opt;
    opt.verbose = !quiet;
    const harness::RunReport report = harness::run_experiment(config, opt);
    std::cout << harness::render_report({report}, harness::ReportFormat::Markdown);
    if (!report.validity.valid) std::cout << "excluded: " << report.validity.reason << "\n";
    return report.complete ? kExitOk : kExitFailedSeeds;
}

int cmd_report(const fs::path& runs, const std::string& format, const fs::path& out) {
    const auto fmt = harness::parse_report_format(format);
    const auto reports = harness::collect_reports(runs);
    ensure_parent(out);
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out.string());
    f << harness::render_report(reports, fmt);
    std::cout << "wrote " << reports.size() << " rows to " << out.string() << "\n";
    bool complete = true;
    for (const auto& r : reports) complete = complete && r.complete;
    return complete ? kExitOk : kExitFailedSeeds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train self-explainable graph classifiers and measure explanation faithfulness"};
    app.require_subcommand(1);

    std::string dataset;
    int count = 1000;
    std::uint64_t seed = 0;
    std::string out;
    auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset as JSON lines");
    gen->add_option("--dataset", dataset, "ba2motif or bams")->required()->check(CLI::IsMember({"ba2motif", "bams"}));
    gen->add_option("--count", count, "Number of graphs")->default_val(1000);
    gen->add_option("--seed", seed, "Generator seed")->default_val(0);
    gen->add_option("--out", out, "Output file")->required();

    std::string config;
    auto* train = app.add_subcommand("train", "Train one seed of a configured experiment");
    train->add_option("--config", config, "Experiment config")->required()->check(CLI::ExistingFile);
    train->add_option("--seed", seed, "Run seed")->default_val(0);
    train->add_option("--out", out, "Output directory")->required();

    std::string checkpoint;
    std::string data;
    auto* explain = app.add_subcommand("explain", "Write explanations for every graph of a dataset");
    explain->add_option("--checkpoint", checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
    explain->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
    explain->add_option("--out", out, "Output JSON-lines file")->required();

    std::string explanations;
    int draws = 5;
    auto* evaluate = app.add_subcommand("evaluate", "Compute Unf, Fid+ and Fid- for explanations and random baselines");
    evaluate->add_option("--checkpoint", checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--explanations", explanations, "Explanations file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--baseline-draws", draws, "Random subgraphs per graph")->default_val(5);
    evaluate->add_option("--seed", seed, "Baseline seed")->default_val(0);
    evaluate->add_option("--out", out, "Metric CSV")->required();

    std::string run_out;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "Run the full multi-seed pipeline of a config");
    run->add_option("--config", config, "Experiment config")->required()->check(CLI::ExistingFile);
    run->add_option("--out", run_out, "Override the output directory");
    run->add_flag("--quiet", quiet, "No progress output");

    std::string runs;
    std::string format = "markdown";
    auto* report = app.add_subcommand("report", "Render a results table from run directories");
    report->add_option("--runs", runs, "Directory searched for run_report.json")->required();
    report->add_option("--format", format, "csv or markdown")->default_val("markdown");
    report->add_option("--out", out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*gen) return cmd_generate(dataset, count, seed, out);
        if (*train) return cmd_train(config, seed, out);
        if (*explain) return cmd_explain(checkpoint, data, out);
        if (*evaluate) return cmd_evaluate(checkpoint, data, explanations, draws, seed, out);
        if (*run) return cmd_run(config, run_out.empty() ? std::nullopt : std::optional<fs::path>(run_out), quiet);
        if (*report) return cmd_report(runs, format, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
