#pragma once

// Reverse-mode differentiation over dense Eigen matrices.
//
// A BasicTape records every operation in execution order; BasicVar is a
// lightweight handle into it. Values live in a std::deque so references
// stay valid while new operations are appended.

#include <Eigen/Dense>

#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>

#include "faithgnn/error.hpp"

namespace faithgnn::numerics {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Trainable tensor. `grad` is empty until zero_grad() or a backward pass
/// writes to it.
template <typename Scalar>
struct BasicParameter {
    std::string name;
    Matrix<Scalar> value;
    Matrix<Scalar> grad;

    BasicParameter() = default;
    BasicParameter(std::string n, Matrix<Scalar> v) : name(std::move(n)), value(std::move(v)) {}

    bool has_grad() const { return grad.rows() == value.rows() && grad.cols() == value.cols(); }
    void zero_grad() { grad.setZero(value.rows(), value.cols()); }
    Eigen::Index size() const { return value.size(); }
};

template <typename Scalar>
class BasicTape;

template <typename Scalar>
class BasicVar {
public:
    BasicVar() = default;
    BasicVar(BasicTape<Scalar>* tape, std::size_t id) : tape_(tape), id_(id) {}

    const Matrix<Scalar>& value() const { return tape_->value(*this); }
    Eigen::Index rows() const { return value().rows(); }
    Eigen::Index cols() const { return value().cols(); }
    Scalar scalar() const;
    bool requires_grad() const { return tape_->requires_grad(*this); }

    BasicTape<Scalar>* tape() const { return tape_; }
    std::size_t id() const { return id_; }
    bool valid() const { return tape_ != nullptr; }

private:
    BasicTape<Scalar>* tape_ = nullptr;
    std::size_t id_ = 0;
};

template <typename Scalar>
class BasicTape {
public:
    using MatrixType = Matrix<Scalar>;
    using Var = BasicVar<Scalar>;
    using Backward = std::function<void(BasicTape&, const MatrixType&)>;

    BasicTape() = default;
    /// With `track_gradients` false, parameters enter as constants and no
    /// backward closures are kept (inference).
    explicit BasicTape(bool track_gradients) : track_(track_gradients) {}
    BasicTape(const BasicTape&) = delete;
    BasicTape& operator=(const BasicTape&) = delete;

    Var constant(MatrixType value) {
        nodes_.push_back(Node{std::move(value), {}, false, {}});
        return Var(this, nodes_.size() - 1);
    }

    Var scalar_constant(Scalar v) { return constant(MatrixType::Constant(1, 1, v)); }

    /// Leaf bound to a parameter. Repeated calls return the same node, so
    /// every use contributes to one gradient (see parameter_grad()).
    Var parameter(const BasicParameter<Scalar>& p) {
        auto it = param_ids_.find(&p);
        if (it != param_ids_.end()) return Var(this, it->second);
        nodes_.push_back(Node{p.value, {}, track_, {}});
        param_ids_.emplace(&p, nodes_.size() - 1);
        return Var(this, nodes_.size() - 1);
    }

    /// Appends an operation result. The backward closure is kept only if
    /// some input requires a gradient.
    template <typename Inputs>
    Var record(MatrixType value, const Inputs& inputs, Backward backward) {
        bool needs = false;
        for (const Var& in : inputs) needs = needs || requires_grad(in);
        nodes_.push_back(Node{std::move(value), {}, needs, needs ? std::move(backward) : Backward{}});
        return Var(this, nodes_.size() - 1);
    }

    Var record(MatrixType value, std::initializer_list<Var> inputs, Backward backward) {
        return record<std::initializer_list<Var>>(std::move(value), inputs, std::move(backward));
    }

    const MatrixType& value(const Var& v) const { return nodes_[v.id()].value; }
    bool requires_grad(const Var& v) const { return nodes_[v.id()].requires_grad; }

    /// Adds `contribution` into the gradient buffer of `v` (no-op for constants).
    template <typename Derived>
    void accumulate(const Var& v, const Eigen::MatrixBase<Derived>& contribution) {
        Node& n = nodes_[v.id()];
        if (!n.requires_grad) return;
        if (n.grad.size() == 0) {
            n.grad = contribution;
        } else {
            n.grad += contribution;
        }
    }

    /// Gradient buffer of an interior node after backward(); empty if never reached.
    const MatrixType& grad(const Var& v) const { return nodes_[v.id()].grad; }

    /// Propagates d(loss)/d(node) for every recorded node, visiting each
    /// node at most once in reverse order.
    void backward(const Var& loss) {
        if (loss.tape() != this) throw ParameterError("backward: loss belongs to a different tape");
        const MatrixType& lv = value(loss);
        if (lv.rows() != 1 || lv.cols() != 1) {
            throw ParameterError("backward: loss must be a 1x1 scalar, got " + std::to_string(lv.rows()) + "x" +
                                 std::to_string(lv.cols()));
        }
        for (Node& n : nodes_) n.grad.resize(0, 0);
        nodes_[loss.id()].grad = MatrixType::Ones(1, 1);
        for (std::size_t i = loss.id() + 1; i-- > 0;) {
            Node& n = nodes_[i];
            if (!n.requires_grad || n.grad.size() == 0) continue;
            if (n.backward) n.backward(*this, n.grad);
        }
    }

    /// d(loss)/d(p) from the last backward(); nullptr if p was not used or
    /// did not influence the loss.
    const MatrixType* parameter_grad(const BasicParameter<Scalar>& p) const {
        auto it = param_ids_.find(&p);
        if (it == param_ids_.end()) return nullptr;
        const MatrixType& g = nodes_[it->second].grad;
        return g.size() == 0 ? nullptr : &g;
    }

    /// Adds this tape's parameter gradients into each BasicParameter::grad,
    /// allocating zero gradients for parameters the loss did not reach.
    void accumulate_into(std::span<BasicParameter<Scalar>* const> params) const {
        for (auto* p : params) {
            if (!p->has_grad()) p->zero_grad();
            if (const MatrixType* g = parameter_grad(*p)) p->grad += *g;
        }
    }

    std::size_t size() const { return nodes_.size(); }

    void clear() {
        nodes_.clear();
        param_ids_.clear();
    }

private:
    struct Node {
        MatrixType value;
        MatrixType grad;
        bool requires_grad;
        Backward backward;
    };

    bool track_ = true;
    std::deque<Node> nodes_;
    std::unordered_map<const void*, std::size_t> param_ids_;
};

template <typename Scalar>
Scalar BasicVar<Scalar>::scalar() const {
    const auto& v = value();
    if (v.size() != 1) throw ParameterError("scalar(): tensor is not 1x1");
    return v(0, 0);
}

using Tape = BasicTape<double>;
using Var = BasicVar<double>;
using Parameter = BasicParameter<double>;
using MatrixXd = Matrix<double>;

} // namespace faithgnn::numerics
