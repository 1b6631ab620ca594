#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "faithgnn/numerics/tape.hpp"

namespace faithgnn::numerics {

struct GradCheckEntry {
    std::string name;
    double max_rel_error = 0.0;
    long compared = 0;
    long skipped_kinks = 0;
    bool pass = true;
};

struct GradCheckReport {
    std::vector<GradCheckEntry> params;
    double max_rel_error = 0.0;
    bool pass = true;
};

struct GradCheckOptions {
    double step = 1e-5;
    double tol = 1e-4;
    /// Denominator floor for the relative error; gradients smaller than this
    /// are compared absolutely.
    double abs_floor = 1e-6;
};

/// Compares reverse-mode gradients against central differences.
///
/// `build_loss` must record a scalar loss on the tape it is given and read
/// parameter values at call time. A coordinate is treated as a kink (and
/// skipped) when its forward and backward one-sided slopes disagree by more
/// than the tolerance scaled by the slope magnitude; smooth functions only
/// produce O(step) disagreement.
template <typename Scalar>
GradCheckReport finite_diff_check(const std::function<BasicVar<Scalar>(BasicTape<Scalar>&)>& build_loss,
                                  std::span<BasicParameter<Scalar>* const> params,
                                  const GradCheckOptions& opt = {}) {
    if (!(opt.step > 0)) throw ParameterError("finite_diff_check: step must be positive");
    for (auto* p : params) p->zero_grad();
    Scalar f0;
    {
        BasicTape<Scalar> tape;
        auto loss = build_loss(tape);
        f0 = loss.scalar();
        tape.backward(loss);
        tape.accumulate_into(params);
    }
    auto eval = [&]() {
        BasicTape<Scalar> tape;
        return build_loss(tape).scalar();
    };

    GradCheckReport report;
    for (auto* p : params) {
        GradCheckEntry entry;
        entry.name = p->name;
        for (Eigen::Index i = 0; i < p->value.size(); ++i) {
            Scalar& x = p->value.data()[i];
            const Scalar orig = x;
            x = orig + Scalar(opt.step);
            const Scalar fp = eval();
            x = orig - Scalar(opt.step);
            const Scalar fm = eval();
            x = orig;
            const double fwd = double(fp - f0) / opt.step;
            const double bwd = double(f0 - fm) / opt.step;
            const double central = double(fp - fm) / (2.0 * opt.step);
            const double analytic = double(p->grad.data()[i]);
            const double scale = std::max({std::abs(central), std::abs(analytic), 1.0});
            if (std::abs(fwd - bwd) > 10.0 * opt.tol * scale) {
                ++entry.skipped_kinks;
                continue;
            }
            const double denom = std::max({std::abs(central), std::abs(analytic), opt.abs_floor});
            const double rel = std::abs(central - analytic) / denom;
            entry.max_rel_error = std::max(entry.max_rel_error, rel);
            ++entry.compared;
        }
        entry.pass = entry.max_rel_error <= opt.tol;
        report.max_rel_error = std::max(report.max_rel_error, entry.max_rel_error);
        report.pass = report.pass && entry.pass;
        report.params.push_back(std::move(entry));
    }
    return report;
}

} // namespace faithgnn::numerics
