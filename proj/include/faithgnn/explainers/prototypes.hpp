#pragma once

#include <vector>

#include "faithgnn/numerics/ops.hpp"
#include "faithgnn/numerics/rng.hpp"
#include "faithgnn/numerics/tape.hpp"

namespace faithgnn::explainers {

using numerics::MatrixXd;
using numerics::Parameter;
using numerics::Tape;
using numerics::Var;

/// Prototype vectors grouped by class: rows [c*m, (c+1)*m) belong to class c.
struct PrototypeBank {
    Parameter prototypes;  // (num_classes * per_class) x dim
    std::vector<int> class_of;
    int per_class = 0;

    PrototypeBank() = default;
    /// Unit Gaussian samples scaled by `init_scale`.
    PrototypeBank(int num_classes, int per_class, int dim, double init_scale, numerics::Rng& rng);

    int size() const { return static_cast<int>(class_of.size()); }
    int num_classes() const { return per_class == 0 ? 0 : size() / per_class; }
    int first_of(int c) const { return c * per_class; }
    std::vector<bool> mask_of(int c) const;
    std::vector<bool> mask_not_of(int c) const;

    /// +1 where class_of(k) == c, -0.5 elsewhere (size x num_classes).
    MatrixXd default_head() const;
};

/// log((d^2 + 1) / (d^2 + eps)): positive, strictly decreasing in d^2.
double proto_similarity_p(const Eigen::VectorXd& z, const Eigen::VectorXd& p, double eps);

/// Tape version over a matrix of squared distances.
Var log_activation(const Var& sq_dist, double eps);

struct TesnetSimilarity {
    Eigen::VectorXd similarity;  // one per row of the class matrix
    double penalty = 0.0;        // ||P P^T - I||_F^2 for this class
};

/// Projects h onto the row space of `class_prototypes` (via P^T P h) and
/// scores each prototype by the negative squared distance to the projection.
TesnetSimilarity proto_similarity_t(const Eigen::VectorXd& h, const MatrixXd& class_prototypes);

/// Sum over classes of ||P_c P_c^T - I||_F^2.
double orthonormality_penalty(const MatrixXd& prototypes, int per_class);
Var orthonormality_penalty(const Var& prototypes, int per_class);

/// n x per_class matrix of TesNet similarities of every row of h to one class.
Var tesnet_similarity(const Var& h, const Var& class_prototypes);

} // namespace faithgnn::explainers
