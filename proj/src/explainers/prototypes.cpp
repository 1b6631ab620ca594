#include "faithgnn/explainers/prototypes.hpp"

#include <cmath>
#include <random>

#include "faithgnn/error.hpp"

namespace faithgnn::explainers {

PrototypeBank::PrototypeBank(int num_classes, int per_class_count, int dim, double init_scale, numerics::Rng& rng)
    : per_class(per_class_count) {
    if (num_classes < 1 || per_class_count < 1 || dim < 1) throw ParameterError("PrototypeBank: sizes must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXd p(num_classes * per_class_count, dim);
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
        for (Eigen::Index c = 0; c < p.cols(); ++c) p(r, c) = init_scale * normal(rng);
    }
    prototypes = Parameter("prototypes", std::move(p));
    for (int c = 0; c < num_classes; ++c) {
        for (int k = 0; k < per_class_count; ++k) class_of.push_back(c);
    }
}

std::vector<bool> PrototypeBank::mask_of(int c) const {
    std::vector<bool> m(class_of.size());
    for (std::size_t k = 0; k < class_of.size(); ++k) m[k] = class_of[k] == c;
    return m;
}

std::vector<bool> PrototypeBank::mask_not_of(int c) const {
    std::vector<bool> m(class_of.size());
    for (std::size_t k = 0; k < class_of.size(); ++k) m[k] = class_of[k] != c;
    return m;
}

MatrixXd PrototypeBank::default_head() const {
    const int classes = num_classes();
    MatrixXd w = MatrixXd::Constant(size(), classes, -0.5);
    for (int k = 0; k < size(); ++k) w(k, class_of[static_cast<std::size_t>(k)]) = 1.0;
    return w;
}

double proto_similarity_p(const Eigen::VectorXd& z, const Eigen::VectorXd& p, double eps) {
    if (z.size() != p.size()) throw ParameterError("proto_similarity_p: dimension mismatch");
    const double d2 = (z - p).squaredNorm();
    return std::log((d2 + 1.0) / (d2 + eps));
}

Var log_activation(const Var& sq_dist, double eps) {
    return numerics::sub(numerics::log(numerics::add_scalar(sq_dist, 1.0)),
                         numerics::log(numerics::add_scalar(sq_dist, eps)));
}

TesnetSimilarity proto_similarity_t(const Eigen::VectorXd& h, const MatrixXd& class_prototypes) {
    if (class_prototypes.cols() != h.size()) throw ParameterError("proto_similarity_t: dimension mismatch");
    TesnetSimilarity out;
    const Eigen::VectorXd projected = class_prototypes.transpose() * (class_prototypes * h);
    out.similarity.resize(class_prototypes.rows());
    for (Eigen::Index k = 0; k < class_prototypes.rows(); ++k) {
        out.similarity(k) = -(projected - class_prototypes.row(k).transpose()).squaredNorm();
    }
    const MatrixXd gram = class_prototypes * class_prototypes.transpose();
    out.penalty = (gram - MatrixXd::Identity(gram.rows(), gram.cols())).squaredNorm();
    return out;
}

double orthonormality_penalty(const MatrixXd& prototypes, int per_class) {
    double total = 0.0;
    for (Eigen::Index start = 0; start < prototypes.rows(); start += per_class) {
        const MatrixXd pc = prototypes.middleRows(start, per_class);
        total += (pc * pc.transpose() - MatrixXd::Identity(per_class, per_class)).squaredNorm();
    }
    return total;
}

Var orthonormality_penalty(const Var& prototypes, int per_class) {
    Tape& tape = *prototypes.tape();
    const Var eye = tape.constant(MatrixXd::Identity(per_class, per_class));
    Var total = tape.scalar_constant(0.0);
    for (Eigen::Index start = 0; start < prototypes.rows(); start += per_class) {
        const Var pc = numerics::slice_rows(prototypes, start, per_class);
        const Var gram = numerics::matmul(pc, numerics::transpose(pc));
        total = numerics::add(total, numerics::squared_norm(numerics::sub(gram, eye)));
    }
    return total;
}

Var tesnet_similarity(const Var& h, const Var& class_prototypes) {
    const Var coords = numerics::matmul(h, numerics::transpose(class_prototypes));
    const Var projected = numerics::matmul(coords, class_prototypes);
    return numerics::scale(numerics::pairwise_sq_dist(projected, class_prototypes), -1.0);
}

} // namespace faithgnn::explainers
