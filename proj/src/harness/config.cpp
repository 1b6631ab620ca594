#include "faithgnn/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "faithgnn/error.hpp"
#include "faithgnn/explainers/factory.hpp"
#include "faithgnn/faithfulness/metrics.hpp"
#include "faithgnn/graphs/generators.hpp"
#include "faithgnn/graphs/io.hpp"
#include "faithgnn/numerics/rng.hpp"

namespace faithgnn::harness {

namespace pt = boost::property_tree;

namespace {

template <typename T>
T convert(const std::string& section, const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw ValidationError("config [" + section + "] " + key + ": cannot parse '" + text + "'");
    }
    return value;
}

nlohmann::json infer_value(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    {
        std::istringstream in(text);
        long long v = 0;
        if (in >> v && (in >> std::ws).eof()) return v;
    }
    {
        std::istringstream in(text);
        double v = 0;
        if (in >> v && (in >> std::ws).eof()) return v;
    }
    return text;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::string t = text;
    for (char& c : t) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(t);
    std::vector<std::uint64_t> out;
    std::string tok;
    while (in >> tok) out.push_back(convert<std::uint64_t>("training", "seeds", tok));
    return out;
}

std::string json_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return faithfulness::format_double(v.get<double>());
    return v.dump();
}

} // namespace

void ExperimentConfig::validate() const {
    if (dataset.name != "ba2motif" && dataset.name != "bams" && dataset.name != "file") {
        throw ValidationError("config [dataset] name must be ba2motif, bams or file");
    }
    if (dataset.name == "file" && dataset.path.empty()) throw ValidationError("config [dataset] path is required");
    if (dataset.name != "file" && dataset.count < 2) throw ValidationError("config [dataset] count must be >= 2");
    if (model_kind == gnn::ModelKind::Gcn) throw ValidationError("config [model] kind must be a self-explainable model");
    if (epochs < 0) throw ValidationError("config [training] epochs must be >= 0");
    if (!(lr >= 0.0)) throw ValidationError("config [training] lr must be >= 0");
    for (double f : {train_fraction, val_fraction, test_fraction}) {
        if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("config [training] split fractions must lie in [0, 1]");
    }
    if (std::abs(train_fraction + val_fraction + test_fraction - 1.0) > 1e-9) {
        throw ValidationError("config [training] split fractions must sum to 1");
    }
    if (train_fraction <= 0.0 || test_fraction <= 0.0) {
        throw ValidationError("config [training] train and test fractions must be positive");
    }
    if (seeds.empty()) throw ValidationError("config [training] seeds must list at least one seed");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw ValidationError("config [training] seeds must be distinct");
    }
    if (baseline_draws < 1) throw ValidationError("config [evaluation] baseline_draws must be >= 1");
    // Unknown hyperparameters are rejected by comparing with the model's own list.
    const auto probe = explainers::make_model(model_kind, nlohmann::json::object(), 1, 2, 0);
    const nlohmann::json known = probe->hyperparams();
    for (const auto& [key, value] : hyperparams.items()) {
        if (!known.contains(key)) {
            throw ValidationError("config: unknown hyperparameter '" + key + "' for " + gnn::to_string(model_kind));
        }
        if (known.at(key).is_number() && !value.is_number()) {
            throw ValidationError("config: hyperparameter '" + key + "' must be numeric");
        }
        if (known.at(key).is_number_integer() && !value.is_number_integer()) {
            throw ValidationError("config: hyperparameter '" + key + "' must be an integer");
        }
    }
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    ExperimentConfig c;
    const std::set<std::string> sections{"dataset", "model", "training", "explanation", "evaluation", "output"};
    bool kind_seen = false;
    for (const auto& [section, body] : tree) {
        if (!sections.count(section)) throw ValidationError("config: unknown section [" + section + "]");
        for (const auto& [key, node] : body) {
            const std::string value = node.get_value<std::string>();
            auto bad = [&] { return ValidationError("config [" + section + "]: unknown key '" + key + "'"); };
            if (section == "dataset") {
                if (key == "name") c.dataset.name = value;
                else if (key == "count") c.dataset.count = convert<int>(section, key, value);
                else if (key == "seed") c.dataset.seed = convert<std::uint64_t>(section, key, value);
                else if (key == "path") c.dataset.path = value;
                else throw bad();
            } else if (section == "model") {
                if (key == "kind") {
                    try {
                        c.model_kind = gnn::parse_model_kind(value);
                    } catch (const ParameterError& e) {
                        throw ValidationError(std::string("config [model] ") + e.what());
                    }
                    kind_seen = true;
                } else {
                    c.hyperparams[key] = infer_value(value);
                }
            } else if (section == "explanation") {
                c.hyperparams[key] = infer_value(value);
            } else if (section == "training") {
                if (key == "epochs") c.epochs = convert<int>(section, key, value);
                else if (key == "lr") c.lr = convert<double>(section, key, value);
                else if (key == "beta1") c.beta1 = convert<double>(section, key, value);
                else if (key == "beta2") c.beta2 = convert<double>(section, key, value);
                else if (key == "adam_eps") c.adam_eps = convert<double>(section, key, value);
                else if (key == "train_fraction") c.train_fraction = convert<double>(section, key, value);
                else if (key == "val_fraction") c.val_fraction = convert<double>(section, key, value);
                else if (key == "test_fraction") c.test_fraction = convert<double>(section, key, value);
                else if (key == "seeds") c.seeds = parse_seeds(value);
                else throw bad();
            } else if (section == "evaluation") {
                if (key == "baseline_draws") c.baseline_draws = convert<int>(section, key, value);
                else throw bad();
            } else if (section == "output") {
                if (key == "dir") c.output_dir = value;
                else throw bad();
            }
        }
    }
    if (!kind_seen) throw ValidationError("config [model] kind is required");
    if (!c.dataset.path.empty() && c.dataset.path.is_relative()) c.dataset.path = base_dir / c.dataset.path;
    if (c.output_dir.is_relative()) c.output_dir = base_dir / c.output_dir;
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path.string());
    return parse_config(in, path.parent_path());
}

std::string canonical_text(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[dataset]\n"
        << "count=" << c.dataset.count << "\nname=" << c.dataset.name << "\npath=" << c.dataset.path.generic_string()
        << "\nseed=" << c.dataset.seed << "\n";
    out << "[model]\nkind=" << gnn::to_string(c.model_kind) << "\n";
    for (const auto& [key, value] : c.hyperparams.items()) out << key << "=" << json_text(value) << "\n";
    out << "[training]\n"
        << "adam_eps=" << faithfulness::format_double(c.adam_eps)
        << "\nbeta1=" << faithfulness::format_double(c.beta1) << "\nbeta2=" << faithfulness::format_double(c.beta2)
        << "\nepochs=" << c.epochs << "\nlr=" << faithfulness::format_double(c.lr) << "\nseeds=";
    for (std::size_t i = 0; i < c.seeds.size(); ++i) out << (i ? "," : "") << c.seeds[i];
    out << "\ntest_fraction=" << faithfulness::format_double(c.test_fraction)
        << "\ntrain_fraction=" << faithfulness::format_double(c.train_fraction)
        << "\nval_fraction=" << faithfulness::format_double(c.val_fraction) << "\n";
    out << "[evaluation]\nbaseline_draws=" << c.baseline_draws << "\n";
    out << "[output]\ndir=" << c.output_dir.generic_string() << "\n";
    return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(numerics::fnv1a(canonical_text(config))));
    return buf;
}

graphs::Dataset load_dataset(const DatasetSpec& spec) {
    if (spec.name == "ba2motif") return graphs::generate_ba2motif(spec.count, spec.seed);
    if (spec.name == "bams") return graphs::generate_bams(spec.count, spec.seed);
    if (spec.name == "file") return graphs::load_graphs(spec.path);
    throw ValidationError("unknown dataset '" + spec.name + "'");
}

} // namespace faithgnn::harness
