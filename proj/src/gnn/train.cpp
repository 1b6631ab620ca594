#include "faithgnn/gnn/train.hpp"

#include <cmath>
#include <string>

#include "faithgnn/error.hpp"

namespace faithgnn::gnn {

namespace {

struct SplitStats {
    double loss = 0.0;
    double acc = 0.0;
};

SplitStats evaluate_split(const Model& model, std::span<const AttributedGraph> graphs) {
    SplitStats s;
    if (graphs.empty()) return s;
    long correct = 0;
    for (const auto& g : graphs) {
        Tape tape(false);
        LossTerms terms = model.loss(tape, g);
        s.loss += terms.total.scalar();
        const MatrixXd& z = terms.logits.value();
        Eigen::Index best = 0;
        for (Eigen::Index c = 1; c < z.cols(); ++c) {
            if (z(0, c) > z(0, best)) best = c;
        }
        correct += best == g.label ? 1 : 0;
    }
    s.loss /= static_cast<double>(graphs.size());
    s.acc = static_cast<double>(correct) / static_cast<double>(graphs.size());
    return s;
}

} // namespace

TrainResult train(Model& model, std::span<const AttributedGraph> train_set, std::span<const AttributedGraph> val_set,
                  const TrainConfig& config) {
    if (train_set.empty()) throw ParameterError("train: empty training split");
    numerics::Adam adam(config.adam);
    std::vector<Parameter*> params = model.parameters();
    const double inv_n = 1.0 / static_cast<double>(train_set.size());

    TrainResult result;
    ModelState best = capture_state(model);
    result.best_val_acc = val_set.empty() ? 0.0 : evaluate_split(model, val_set).acc;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        for (auto* p : params) p->zero_grad();
        EpochLog log;
        log.epoch = epoch;
        long correct = 0;
        for (std::size_t b = 0; b < train_set.size(); ++b) {
            const AttributedGraph& g = train_set[b];
            Tape tape;
            LossTerms terms = model.loss(tape, g);
            const double value = terms.total.scalar();
            if (!std::isfinite(value)) {
                throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                                        std::to_string(b) + " (graph " + std::to_string(g.id) + ")",
                                    epoch, static_cast<int>(b));
            }
            log.train_loss += value * inv_n;
            const MatrixXd& z = terms.logits.value();
            Eigen::Index arg = 0;
            for (Eigen::Index c = 1; c < z.cols(); ++c) {
                if (z(0, c) > z(0, arg)) arg = c;
            }
            correct += arg == g.label ? 1 : 0;
            tape.backward(numerics::scale(terms.total, inv_n));
            tape.accumulate_into(params);
        }
        log.train_acc = static_cast<double>(correct) / static_cast<double>(train_set.size());
        adam.step(params);
        model.on_epoch_end(epoch, train_set);

        if (!val_set.empty()) {
            const SplitStats v = evaluate_split(model, val_set);
            log.val_loss = v.loss;
            log.val_acc = v.acc;
            if (v.acc > result.best_val_acc) {
                result.best_val_acc = v.acc;
                result.best_epoch = epoch;
                best = capture_state(model);
            }
        }
        result.log.push_back(log);
    }
    if (val_set.empty()) {
        result.best_epoch = config.epochs;
    } else {
        restore_state(model, best);
    }
    return result;
}

} // namespace faithgnn::gnn
