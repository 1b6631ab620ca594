#pragma once

// Differentiable kernels recorded on a BasicTape.
//
// Forward kernels that reduce across rows (matmul columns, row pooling)
// accumulate in an order that depends only on operand values, never on
// row position, so relabeling graph nodes reproduces results bit for bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "faithgnn/numerics/tape.hpp"

namespace faithgnn::numerics {

inline constexpr double kProbabilityFloor = 1e-12;

/// Sum whose result is independent of the order of `values`.
template <typename Scalar>
Scalar stable_sum(std::vector<Scalar> values) {
    std::sort(values.begin(), values.end());
    Scalar acc = Scalar(0);
    for (Scalar v : values) acc += v;
    return acc;
}

/// C = A * B accumulated per output entry in k order. Each entry depends
/// only on its row of A and column of B.
template <typename Scalar>
Matrix<Scalar> stable_matmul(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            out.col(j) += b(k, j) * a.col(k);
        }
    }
    return out;
}

namespace detail {

inline std::string shape_str(Eigen::Index r, Eigen::Index c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

template <typename Scalar>
void require_same_shape(const char* op, const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ParameterError(std::string(op) + ": shape mismatch " + shape_str(a.rows(), a.cols()) + " vs " +
                             shape_str(b.rows(), b.cols()));
    }
}

template <typename Scalar>
void require_same_tape(const char* op, const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    if (a.tape() != b.tape()) throw ParameterError(std::string(op) + ": operands on different tapes");
}

} // namespace detail

template <typename Scalar>
BasicVar<Scalar> matmul(const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    detail::require_same_tape("matmul", a, b);
    if (a.cols() != b.rows()) {
        throw ParameterError("matmul: inner dimensions differ (" + detail::shape_str(a.rows(), a.cols()) + " * " +
                             detail::shape_str(b.rows(), b.cols()) + ")");
    }
    auto* t = a.tape();
    return t->record(stable_matmul<Scalar>(a.value(), b.value()), {a, b},
                     [a, b](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
                         if (tape.requires_grad(a)) tape.accumulate(a, g * b.value().transpose());
                         if (tape.requires_grad(b)) tape.accumulate(b, a.value().transpose() * g);
                     });
}

template <typename Scalar>
BasicVar<Scalar> add(const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    detail::require_same_tape("add", a, b);
    detail::require_same_shape("add", a, b);
    return a.tape()->record(a.value() + b.value(), {a, b}, [a, b](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, g);
        tape.accumulate(b, g);
    });
}

template <typename Scalar>
BasicVar<Scalar> sub(const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    detail::require_same_tape("sub", a, b);
    detail::require_same_shape("sub", a, b);
    return a.tape()->record(a.value() - b.value(), {a, b}, [a, b](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, g);
        tape.accumulate(b, -g);
    });
}

/// Elementwise product.
template <typename Scalar>
BasicVar<Scalar> hadamard(const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    detail::require_same_tape("hadamard", a, b);
    detail::require_same_shape("hadamard", a, b);
    return a.tape()->record(a.value().cwiseProduct(b.value()), {a, b},
                            [a, b](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
                                if (tape.requires_grad(a)) tape.accumulate(a, g.cwiseProduct(b.value()));
                                if (tape.requires_grad(b)) tape.accumulate(b, g.cwiseProduct(a.value()));
                            });
}

/// out(i, j) = a(i, j) * row(0, j)
template <typename Scalar>
BasicVar<Scalar> mul_row_broadcast(const BasicVar<Scalar>& a, const BasicVar<Scalar>& row) {
    detail::require_same_tape("mul_row_broadcast", a, row);
    if (row.rows() != 1 || row.cols() != a.cols()) {
        throw ParameterError("mul_row_broadcast: row must be 1x" + std::to_string(a.cols()));
    }
    Matrix<Scalar> out = a.value();
    for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) *= row.value()(0, j);
    return a.tape()->record(std::move(out), {a, row}, [a, row](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        if (tape.requires_grad(a)) {
            Matrix<Scalar> ga = g;
            for (Eigen::Index j = 0; j < ga.cols(); ++j) ga.col(j) *= row.value()(0, j);
            tape.accumulate(a, ga);
        }
        if (tape.requires_grad(row)) {
            tape.accumulate(row, g.cwiseProduct(a.value()).colwise().sum());
        }
    });
}

template <typename Scalar>
BasicVar<Scalar> scale(const BasicVar<Scalar>& a, Scalar s) {
    return a.tape()->record(a.value() * s, {a},
                            [a, s](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) { tape.accumulate(a, g * s); });
}

template <typename Scalar>
BasicVar<Scalar> add_scalar(const BasicVar<Scalar>& a, Scalar s) {
    return a.tape()->record(a.value().array() + s, {a},
                            [a](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) { tape.accumulate(a, g); });
}

template <typename Scalar>
BasicVar<Scalar> relu(const BasicVar<Scalar>& a) {
    return a.tape()->record(a.value().cwiseMax(Scalar(0)), {a}, [a](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, (a.value().array() > Scalar(0)).select(g, Scalar(0)));
    });
}

template <typename Scalar>
BasicVar<Scalar> sigmoid(const BasicVar<Scalar>& a) {
    Matrix<Scalar> s = a.value().unaryExpr([](Scalar x) {
        if (x >= 0) return Scalar(1) / (Scalar(1) + std::exp(-x));
        const Scalar e = std::exp(x);
        return e / (Scalar(1) + e);
    });
    Matrix<Scalar> deriv = s.cwiseProduct((Scalar(1) - s.array()).matrix());
    return a.tape()->record(std::move(s), {a}, [a, deriv](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, g.cwiseProduct(deriv));
    });
}

/// Natural log with inputs clamped to kProbabilityFloor.
template <typename Scalar>
BasicVar<Scalar> log(const BasicVar<Scalar>& a) {
    const Scalar floor = Scalar(kProbabilityFloor);
    return a.tape()->record(a.value().cwiseMax(floor).array().log().matrix(), {a},
                            [a, floor](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
                                tape.accumulate(a, g.cwiseQuotient(a.value().cwiseMax(floor)));
                            });
}

template <typename Scalar>
BasicVar<Scalar> exp(const BasicVar<Scalar>& a) {
    Matrix<Scalar> e = a.value().array().exp().matrix();
    Matrix<Scalar> saved = e;
    return a.tape()->record(std::move(e), {a}, [a, saved](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, g.cwiseProduct(saved));
    });
}

/// Elementwise binary entropy -s ln s - (1-s) ln(1-s), logs clamped.
template <typename Scalar>
BasicVar<Scalar> binary_entropy(const BasicVar<Scalar>& s) {
    const Scalar floor = Scalar(kProbabilityFloor);
    Matrix<Scalar> out = s.value().unaryExpr([floor](Scalar p) {
        return -p * std::log(std::max(p, floor)) - (Scalar(1) - p) * std::log(std::max(Scalar(1) - p, floor));
    });
    return s.tape()->record(std::move(out), {s}, [s, floor](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        Matrix<Scalar> d = s.value().unaryExpr([floor](Scalar p) {
            return std::log(std::max(Scalar(1) - p, floor)) - std::log(std::max(p, floor));
        });
        tape.accumulate(s, g.cwiseProduct(d));
    });
}

template <typename Scalar>
BasicVar<Scalar> transpose(const BasicVar<Scalar>& a) {
    return a.tape()->record(a.value().transpose(), {a}, [a](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, g.transpose());
    });
}

/// Sum of all entries, 1x1.
template <typename Scalar>
BasicVar<Scalar> sum(const BasicVar<Scalar>& a) {
    Matrix<Scalar> out(1, 1);
    out(0, 0) = a.value().sum();
    return a.tape()->record(std::move(out), {a}, [a](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, Matrix<Scalar>::Constant(a.rows(), a.cols(), g(0, 0)));
    });
}

/// Mean of all entries, 1x1; zero for an empty tensor.
template <typename Scalar>
BasicVar<Scalar> mean(const BasicVar<Scalar>& a) {
    const Eigen::Index n = a.value().size();
    if (n == 0) return a.tape()->constant(Matrix<Scalar>::Zero(1, 1));
    return scale(sum(a), Scalar(1) / Scalar(n));
}

/// Sum of squared entries, 1x1.
template <typename Scalar>
BasicVar<Scalar> squared_norm(const BasicVar<Scalar>& a) {
    Matrix<Scalar> out(1, 1);
    out(0, 0) = a.value().squaredNorm();
    return a.tape()->record(std::move(out), {a}, [a](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, a.value() * (Scalar(2) * g(0, 0)));
    });
}

/// D(i, k) = ||a.row(i) - b.row(k)||^2
template <typename Scalar>
BasicVar<Scalar> pairwise_sq_dist(const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    detail::require_same_tape("pairwise_sq_dist", a, b);
    if (a.cols() != b.cols()) throw ParameterError("pairwise_sq_dist: row widths differ");
    const auto& av = a.value();
    const auto& bv = b.value();
    Matrix<Scalar> d(av.rows(), bv.rows());
    for (Eigen::Index i = 0; i < av.rows(); ++i) {
        for (Eigen::Index k = 0; k < bv.rows(); ++k) {
            Scalar acc = Scalar(0);
            for (Eigen::Index c = 0; c < av.cols(); ++c) {
                const Scalar diff = av(i, c) - bv(k, c);
                acc += diff * diff;
            }
            d(i, k) = acc;
        }
    }
    return a.tape()->record(std::move(d), {a, b}, [a, b](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        const auto& av = a.value();
        const auto& bv = b.value();
        // d/da_i = 2 sum_k g_ik (a_i - b_k);  d/db_k = -2 sum_i g_ik (a_i - b_k)
        const Matrix<Scalar> row_g = g.rowwise().sum();
        const Matrix<Scalar> col_g = g.colwise().sum();
        if (tape.requires_grad(a)) {
            Matrix<Scalar> ga = Scalar(2) * (row_g.asDiagonal() * av - g * bv);
            tape.accumulate(a, ga);
        }
        if (tape.requires_grad(b)) {
            Matrix<Scalar> gb = Scalar(2) * (g.transpose() * av - col_g.transpose().asDiagonal() * bv);
            tape.accumulate(b, -gb);
        }
    });
}

/// Scales every row to unit L2 norm (rows with zero norm stay zero).
template <typename Scalar>
BasicVar<Scalar> normalize_rows(const BasicVar<Scalar>& a) {
    const auto& av = a.value();
    Matrix<Scalar> norms = av.rowwise().norm();
    Matrix<Scalar> out = av;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        if (norms(i, 0) > Scalar(0)) out.row(i) /= norms(i, 0);
    }
    Matrix<Scalar> y = out;
    return a.tape()->record(std::move(out), {a}, [a, y, norms](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        Matrix<Scalar> ga = Matrix<Scalar>::Zero(g.rows(), g.cols());
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            const Scalar n = norms(i, 0);
            if (n <= Scalar(0)) continue;
            const Scalar proj = g.row(i).dot(y.row(i));
            ga.row(i) = (g.row(i) - proj * y.row(i)) / n;
        }
        tape.accumulate(a, ga);
    });
}

template <typename Scalar>
BasicVar<Scalar> concat_cols(const BasicVar<Scalar>& a, const BasicVar<Scalar>& b) {
    detail::require_same_tape("concat_cols", a, b);
    if (a.rows() != b.rows()) throw ParameterError("concat_cols: row counts differ");
    Matrix<Scalar> out(a.rows(), a.cols() + b.cols());
    out << a.value(), b.value();
    const Eigen::Index ac = a.cols();
    const Eigen::Index bc = b.cols();
    return a.tape()->record(std::move(out), {a, b}, [a, b, ac, bc](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        tape.accumulate(a, g.leftCols(ac));
        tape.accumulate(b, g.rightCols(bc));
    });
}

/// Concatenates column blocks left to right.
template <typename Scalar>
BasicVar<Scalar> concat_cols(const std::vector<BasicVar<Scalar>>& parts) {
    if (parts.empty()) throw ParameterError("concat_cols: no inputs");
    Eigen::Index total = 0;
    for (const auto& p : parts) {
        if (p.rows() != parts.front().rows()) throw ParameterError("concat_cols: row counts differ");
        total += p.cols();
    }
    Matrix<Scalar> out(parts.front().rows(), total);
    Eigen::Index off = 0;
    for (const auto& p : parts) {
        out.middleCols(off, p.cols()) = p.value();
        off += p.cols();
    }
    return parts.front().tape()->record(std::move(out), parts,
                                        [parts](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
                                            Eigen::Index o = 0;
                                            for (const auto& p : parts) {
                                                tape.accumulate(p, g.middleCols(o, p.cols()));
                                                o += p.cols();
                                            }
                                        });
}

template <typename Scalar>
BasicVar<Scalar> slice_rows(const BasicVar<Scalar>& a, Eigen::Index start, Eigen::Index count) {
    if (start < 0 || count < 0 || start + count > a.rows()) throw ParameterError("slice_rows: range out of bounds");
    const Eigen::Index rows = a.rows();
    return a.tape()->record(a.value().middleRows(start, count), {a},
                            [a, start, count, rows](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
                                Matrix<Scalar> ga = Matrix<Scalar>::Zero(rows, g.cols());
                                ga.middleRows(start, count) = g;
                                tape.accumulate(a, ga);
                            });
}

template <typename Scalar>
BasicVar<Scalar> gather_rows(const BasicVar<Scalar>& a, const std::vector<Eigen::Index>& index) {
    const auto& av = a.value();
    Matrix<Scalar> out(static_cast<Eigen::Index>(index.size()), av.cols());
    for (std::size_t r = 0; r < index.size(); ++r) {
        if (index[r] < 0 || index[r] >= av.rows()) throw ParameterError("gather_rows: index out of range");
        out.row(static_cast<Eigen::Index>(r)) = av.row(index[r]);
    }
    const Eigen::Index rows = av.rows();
    return a.tape()->record(std::move(out), {a}, [a, index, rows](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        Matrix<Scalar> ga = Matrix<Scalar>::Zero(rows, g.cols());
        for (std::size_t r = 0; r < index.size(); ++r) ga.row(index[r]) += g.row(static_cast<Eigen::Index>(r));
        tape.accumulate(a, ga);
    });
}

/// Numerically stable row-wise softmax.
template <typename Scalar>
Matrix<Scalar> softmax_rows_value(const Matrix<Scalar>& x) {
    Matrix<Scalar> out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Scalar m = x.row(i).maxCoeff();
        out.row(i) = (x.row(i).array() - m).exp().matrix();
        out.row(i) /= out.row(i).sum();
    }
    return out;
}

template <typename Scalar>
BasicVar<Scalar> softmax_rows(const BasicVar<Scalar>& a) {
    Matrix<Scalar> s = softmax_rows_value<Scalar>(a.value());
    Matrix<Scalar> saved = s;
    return a.tape()->record(std::move(s), {a}, [a, saved](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        Matrix<Scalar> ga(g.rows(), g.cols());
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            const Scalar dot = g.row(i).dot(saved.row(i));
            ga.row(i) = saved.row(i).cwiseProduct((g.row(i).array() - dot).matrix());
        }
        tape.accumulate(a, ga);
    });
}

template <typename Scalar>
BasicVar<Scalar> log_softmax_rows(const BasicVar<Scalar>& a) {
    const auto& x = a.value();
    Matrix<Scalar> out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Scalar m = x.row(i).maxCoeff();
        const Scalar lse = m + std::log((x.row(i).array() - m).exp().sum());
        out.row(i) = (x.row(i).array() - lse).matrix();
    }
    Matrix<Scalar> probs = out.array().exp().matrix();
    return a.tape()->record(std::move(out), {a}, [a, probs](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        Matrix<Scalar> ga(g.rows(), g.cols());
        for (Eigen::Index i = 0; i < g.rows(); ++i) ga.row(i) = g.row(i) - g.row(i).sum() * probs.row(i);
        tape.accumulate(a, ga);
    });
}

/// -log softmax(logits)[label] for a 1xC logit row.
template <typename Scalar>
BasicVar<Scalar> cross_entropy(const BasicVar<Scalar>& logits, int label) {
    if (logits.rows() != 1) throw ParameterError("cross_entropy: logits must be a single row");
    if (label < 0 || label >= logits.cols()) throw ParameterError("cross_entropy: label out of range");
    Matrix<Scalar> p = softmax_rows_value<Scalar>(logits.value());
    const auto& x = logits.value();
    const Scalar m = x.maxCoeff();
    const Scalar lse = m + std::log((x.array() - m).exp().sum());
    Matrix<Scalar> out(1, 1);
    out(0, 0) = lse - x(0, label);
    return logits.tape()->record(std::move(out), {logits},
                                 [logits, p, label](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
                                     Matrix<Scalar> ga = p;
                                     ga(0, label) -= Scalar(1);
                                     tape.accumulate(logits, ga * g(0, 0));
                                 });
}

/// Column-wise mean over the rows selected by `mask`, as a 1 x cols row.
/// No selected rows yields the zero row. The sum is order independent.
template <typename Scalar>
BasicVar<Scalar> masked_mean_rows(const BasicVar<Scalar>& a, const std::vector<bool>& mask) {
    const auto& av = a.value();
    if (static_cast<Eigen::Index>(mask.size()) != av.rows()) throw ParameterError("masked_mean_rows: mask length");
    const auto count = static_cast<Eigen::Index>(std::count(mask.begin(), mask.end(), true));
    Matrix<Scalar> out = Matrix<Scalar>::Zero(1, av.cols());
    if (count > 0) {
        std::vector<Scalar> column;
        column.reserve(static_cast<std::size_t>(count));
        for (Eigen::Index j = 0; j < av.cols(); ++j) {
            column.clear();
            for (Eigen::Index i = 0; i < av.rows(); ++i) {
                if (mask[static_cast<std::size_t>(i)]) column.push_back(av(i, j));
            }
            out(0, j) = stable_sum(column) / Scalar(count);
        }
    }
    return a.tape()->record(std::move(out), {a}, [a, mask, count](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        if (count == 0) return;
        Matrix<Scalar> ga = Matrix<Scalar>::Zero(a.rows(), a.cols());
        for (Eigen::Index i = 0; i < ga.rows(); ++i) {
            if (mask[static_cast<std::size_t>(i)]) ga.row(i) = g / Scalar(count);
        }
        tape.accumulate(a, ga);
    });
}

template <typename Scalar>
BasicVar<Scalar> mean_rows(const BasicVar<Scalar>& a) {
    return masked_mean_rows(a, std::vector<bool>(static_cast<std::size_t>(a.rows()), true));
}

/// Column-wise max over the rows selected by `mask`; ties go to the lower
/// row index. No selected rows yields the zero row.
template <typename Scalar>
BasicVar<Scalar> masked_max_rows(const BasicVar<Scalar>& a, const std::vector<bool>& mask) {
    const auto& av = a.value();
    if (static_cast<Eigen::Index>(mask.size()) != av.rows()) throw ParameterError("masked_max_rows: mask length");
    Matrix<Scalar> out = Matrix<Scalar>::Zero(1, av.cols());
    std::vector<Eigen::Index> arg(static_cast<std::size_t>(av.cols()), -1);
    for (Eigen::Index j = 0; j < av.cols(); ++j) {
        for (Eigen::Index i = 0; i < av.rows(); ++i) {
            if (!mask[static_cast<std::size_t>(i)]) continue;
            auto& best = arg[static_cast<std::size_t>(j)];
            if (best < 0 || av(i, j) > av(best, j)) best = i;
        }
        if (arg[static_cast<std::size_t>(j)] >= 0) out(0, j) = av(arg[static_cast<std::size_t>(j)], j);
    }
    return a.tape()->record(std::move(out), {a}, [a, arg](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        Matrix<Scalar> ga = Matrix<Scalar>::Zero(a.rows(), a.cols());
        for (std::size_t j = 0; j < arg.size(); ++j) {
            if (arg[j] >= 0) ga(arg[j], static_cast<Eigen::Index>(j)) += g(0, static_cast<Eigen::Index>(j));
        }
        tape.accumulate(a, ga);
    });
}

template <typename Scalar>
BasicVar<Scalar> max_rows(const BasicVar<Scalar>& a) {
    return masked_max_rows(a, std::vector<bool>(static_cast<std::size_t>(a.rows()), true));
}

/// Minimum over the entries of a 1 x n row where `mask` is set; ties go to
/// the lower index. Throws if nothing is selected.
template <typename Scalar>
BasicVar<Scalar> masked_min(const BasicVar<Scalar>& row, const std::vector<bool>& mask) {
    const auto& v = row.value();
    if (v.rows() != 1 || static_cast<Eigen::Index>(mask.size()) != v.cols()) {
        throw ParameterError("masked_min: expects a 1xn row and n mask entries");
    }
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        if (mask[static_cast<std::size_t>(j)] && (best < 0 || v(0, j) < v(0, best))) best = j;
    }
    if (best < 0) throw ParameterError("masked_min: empty selection");
    Matrix<Scalar> out(1, 1);
    out(0, 0) = v(0, best);
    return row.tape()->record(std::move(out), {row}, [row, best](BasicTape<Scalar>& tape, const Matrix<Scalar>& g) {
        Matrix<Scalar> gr = Matrix<Scalar>::Zero(1, row.cols());
        gr(0, best) = g(0, 0);
        tape.accumulate(row, gr);
    });
}

} // namespace faithgnn::numerics
