#pragma once

#include <cmath>
#include <span>
#include <unordered_map>

#include "faithgnn/numerics/tape.hpp"

namespace faithgnn::numerics {

struct AdamConfig {
    double lr = 0.005;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Adam with bias correction. Moment estimates are keyed by parameter
/// address and persist across step() calls.
template <typename Scalar>
class BasicAdam {
public:
    explicit BasicAdam(AdamConfig config = {}) : config_(config) {}

    const AdamConfig& config() const { return config_; }

    void step(std::span<BasicParameter<Scalar>* const> params) {
        for (const auto* p : params) {
            if (!p->has_grad()) throw StateError("adam: parameter '" + p->name + "' has no gradient");
        }
        for (auto* p : params) {
            Moments& m = state_[p];
            if (m.first.size() == 0) {
                m.first.setZero(p->value.rows(), p->value.cols());
                m.second.setZero(p->value.rows(), p->value.cols());
            }
            ++m.t;
            const Scalar b1 = Scalar(config_.beta1);
            const Scalar b2 = Scalar(config_.beta2);
            m.first = b1 * m.first + (Scalar(1) - b1) * p->grad;
            m.second = b2 * m.second + (Scalar(1) - b2) * p->grad.cwiseProduct(p->grad);
            const Scalar c1 = Scalar(1) - std::pow(b1, Scalar(m.t));
            const Scalar c2 = Scalar(1) - std::pow(b2, Scalar(m.t));
            const Scalar lr = Scalar(config_.lr);
            const Scalar eps = Scalar(config_.eps);
            p->value.array() -=
                lr * (m.first.array() / c1) / ((m.second.array() / c2).sqrt() + eps);
        }
    }

    void reset() { state_.clear(); }

private:
    struct Moments {
        Matrix<Scalar> first;
        Matrix<Scalar> second;
        long t = 0;
    };

    AdamConfig config_;
    std::unordered_map<const BasicParameter<Scalar>*, Moments> state_;
};

using Adam = BasicAdam<double>;

} // namespace faithgnn::numerics
