#pragma once

#include <span>
#include <vector>

#include "faithgnn/gnn/model.hpp"
#include "faithgnn/numerics/adam.hpp"

namespace faithgnn::gnn {

struct TrainConfig {
    int epochs = 200;
    numerics::AdamConfig adam;
};

struct EpochLog {
    int epoch = 0;
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_loss = 0.0;
    double val_acc = 0.0;
};

struct TrainResult {
    std::vector<EpochLog> log;
    int best_epoch = 0;  // 0 = initial parameters were never beaten
    double best_val_acc = 0.0;
};

/// Full-batch training: each epoch averages the per-graph loss over the
/// whole train split and takes one Adam step. The model is left at the
/// epoch with the best validation accuracy (earliest on ties; the initial
/// parameters count as epoch 0). Without a validation split the final
/// epoch is kept.
///
/// Throws TrainingError when a loss is not finite.
TrainResult train(Model& model, std::span<const AttributedGraph> train_set, std::span<const AttributedGraph> val_set,
                  const TrainConfig& config);

} // namespace faithgnn::gnn
