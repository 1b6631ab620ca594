#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "faithgnn/error.hpp"
#include "faithgnn/numerics/adam.hpp"
#include "faithgnn/numerics/gradcheck.hpp"
#include "faithgnn/numerics/ops.hpp"
#include "faithgnn/numerics/rng.hpp"

using namespace faithgnn;
using namespace faithgnn::numerics;

namespace {

MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
    return m;
}

// 100 random points; loss = sum(op(x) .* W) with fixed random W.
void check_unary(const std::function<Var(const Var&)>& op, Eigen::Index r, Eigen::Index c, double lo = -1.0,
                 double hi = 1.0) {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        Parameter x("x", random_matrix(r, c, rng, lo, hi));
        Tape probe(false);
        const Var y = op(probe.parameter(x));
        const MatrixXd w = random_matrix(y.rows(), y.cols(), rng);
        std::vector<Parameter*> ps{&x};
        auto report = finite_diff_check<double>(
            [&](Tape& t) { return sum(hadamard(op(t.parameter(x)), t.constant(w))); }, ps);
        REQUIRE_MESSAGE(report.pass, "trial " << trial << " max rel " << report.max_rel_error);
    }
}

} // namespace

TEST_CASE("softmax handles large equal logits") {
    MatrixXd z(1, 2);
    z << 1000, 1000;
    const MatrixXd p = softmax_rows_value(z);
    CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("softmax of log 2 and log 1 gives two thirds and one third") {
    MatrixXd z(1, 2);
    z << std::log(2.0), std::log(1.0);
    const MatrixXd p = softmax_rows_value(z);
    CHECK(std::abs(p(0, 0) - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(p(0, 1) - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("softmax rows sum to one and stay positive") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const MatrixXd z = random_matrix(3, 4, rng, -50, 50);
        const MatrixXd p = softmax_rows_value(z);
        for (Eigen::Index r = 0; r < p.rows(); ++r) {
            CHECK(std::abs(p.row(r).sum() - 1.0) <= 1e-12);
            CHECK(p.row(r).minCoeff() > 0.0);
        }
    }
}

TEST_CASE("relu clips negatives") {
    Tape t;
    CHECK(relu(t.scalar_constant(-3.0)).scalar() == 0.0);
    CHECK(relu(t.scalar_constant(2.5)).scalar() == 2.5);
}

TEST_CASE("backward of x*x at 3 is 6") {
    Parameter x("x", MatrixXd::Constant(1, 1, 3.0));
    Tape t;
    const Var v = t.parameter(x);
    t.backward(hadamard(v, v));
    REQUIRE(t.parameter_grad(x) != nullptr);
    CHECK((*t.parameter_grad(x))(0, 0) == 6.0);
}

TEST_CASE("gradient of sum of softmax vanishes") {
    Rng rng(5);
    Parameter v("v", random_matrix(1, 5, rng));
    Tape t;
    t.backward(sum(softmax_rows(t.parameter(v))));
    CHECK(t.parameter_grad(v)->cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("backward rejects a non-scalar loss") {
    Tape t;
    Parameter x("x", MatrixXd::Ones(2, 2));
    CHECK_THROWS_AS(t.backward(t.parameter(x)), ParameterError);
}

TEST_CASE("shape mismatches raise parameter errors") {
    Tape t;
    const Var a = t.constant(MatrixXd::Ones(2, 3));
    const Var b = t.constant(MatrixXd::Ones(2, 2));
    CHECK_THROWS_AS(matmul(a, b), ParameterError);
    CHECK_THROWS_AS(add(a, b), ParameterError);
    CHECK_THROWS_AS(hadamard(a, b), ParameterError);
    CHECK_THROWS_AS(cross_entropy(a, 0), ParameterError);
}

TEST_CASE("kernel gradients match central differences") {
    SUBCASE("matmul") {
        Rng rng(7);
        const MatrixXd b = random_matrix(3, 2, rng);
        check_unary([&](const Var& x) { return matmul(x, x.tape()->constant(b)); }, 4, 3);
    }
    SUBCASE("add sub hadamard") {
        check_unary([](const Var& x) { return hadamard(add(x, x), sub(x, scale(x, 0.3))); }, 3, 3);
    }
    SUBCASE("relu away from zero") {
        check_unary([](const Var& x) { return relu(x); }, 3, 4, 0.05, 1.0);
        check_unary([](const Var& x) { return relu(x); }, 3, 4, -1.0, -0.05);
    }
    SUBCASE("sigmoid") { check_unary([](const Var& x) { return sigmoid(x); }, 3, 3, -4, 4); }
    SUBCASE("log") { check_unary([](const Var& x) { return log(x); }, 2, 3, 0.1, 3.0); }
    SUBCASE("exp") { check_unary([](const Var& x) { return exp(x); }, 2, 3); }
    SUBCASE("binary entropy") { check_unary([](const Var& x) { return binary_entropy(x); }, 2, 3, 0.05, 0.95); }
    SUBCASE("squared norm") { check_unary([](const Var& x) { return squared_norm(x); }, 3, 2); }
    SUBCASE("pairwise squared distance") {
        Rng rng(9);
        const MatrixXd p = random_matrix(4, 3, rng);
        check_unary([&](const Var& x) { return pairwise_sq_dist(x, x.tape()->constant(p)); }, 2, 3);
        check_unary([&](const Var& x) { return pairwise_sq_dist(x.tape()->constant(p), x); }, 2, 3);
    }
    SUBCASE("normalize rows") { check_unary([](const Var& x) { return normalize_rows(x); }, 3, 4, 0.2, 1.0); }
    SUBCASE("concat slice gather transpose") {
        check_unary([](const Var& x) {
            const Var c = concat_cols(x, scale(x, 2.0));
            return transpose(gather_rows(slice_rows(c, 1, 2), {1, 0, 1}));
        }, 3, 2);
    }
    SUBCASE("softmax and log softmax") {
        check_unary([](const Var& x) { return softmax_rows(x); }, 2, 4, -3, 3);
        check_unary([](const Var& x) { return log_softmax_rows(x); }, 2, 4, -3, 3);
    }
    SUBCASE("cross entropy") { check_unary([](const Var& x) { return cross_entropy(x, 2); }, 1, 3, -2, 2); }
    SUBCASE("mean reductions") {
        check_unary([](const Var& x) { return mean(x); }, 3, 3);
        check_unary([](const Var& x) { return mean_rows(x); }, 4, 3);
        check_unary([](const Var& x) { return masked_mean_rows(x, {true, false, true, true}); }, 4, 3);
    }
    SUBCASE("max and min reductions") {
        // Random continuous inputs have distinct entries almost surely.
        check_unary([](const Var& x) { return max_rows(x); }, 4, 3);
        check_unary([](const Var& x) { return masked_max_rows(x, {false, true, true, true}); }, 4, 3);
        check_unary([](const Var& x) { return masked_min(x, {true, false, true, true, false}); }, 1, 5);
    }
    SUBCASE("broadcast and scalar ops") {
        Rng rng(11);
        const MatrixXd a = random_matrix(4, 3, rng);
        check_unary([&](const Var& x) { return mul_row_broadcast(x.tape()->constant(a), x); }, 1, 3);
        check_unary([](const Var& x) { return add_scalar(scale(x, -1.5), 0.25); }, 2, 2);
    }
}

TEST_CASE("empty masked reductions fall back or throw") {
    Tape t;
    const Var x = t.constant(MatrixXd::Ones(2, 3));
    CHECK(masked_mean_rows(x, {false, false}).value().isZero());
    CHECK(masked_max_rows(x, {false, false}).value().isZero());
    CHECK_THROWS_AS(masked_min(t.constant(MatrixXd::Ones(1, 2)), {false, false}), ParameterError);
}

TEST_CASE("max ties go to the lower row") {
    Parameter x("x", (MatrixXd(2, 1) << 1.0, 1.0).finished());
    Tape t;
    t.backward(sum(max_rows(t.parameter(x))));
    CHECK((*t.parameter_grad(x))(0, 0) == 1.0);
    CHECK((*t.parameter_grad(x))(1, 0) == 0.0);
}

TEST_CASE("finite difference check: linear function is exact") {
    Rng rng(1);
    Parameter x("x", random_matrix(3, 3, rng));
    const MatrixXd w = random_matrix(3, 3, rng);
    std::vector<Parameter*> ps{&x};
    auto report = finite_diff_check<double>([&](Tape& t) { return sum(hadamard(t.parameter(x), t.constant(w))); }, ps);
    CHECK(report.pass);
    CHECK(report.max_rel_error < 1e-10);
}

TEST_CASE("finite difference check skips a relu kink") {
    Parameter x("x", MatrixXd::Zero(1, 1));
    std::vector<Parameter*> ps{&x};
    auto report = finite_diff_check<double>([&](Tape& t) { return sum(relu(t.parameter(x))); }, ps);
    REQUIRE(report.params.size() == 1);
    CHECK(report.params[0].skipped_kinks == 1);
    CHECK(report.params[0].compared == 0);
}

TEST_CASE("finite difference check on a two layer network") {
    Rng rng(2);
    Parameter w1("w1", random_matrix(4, 6, rng));
    Parameter w2("w2", random_matrix(6, 3, rng));
    const MatrixXd x = random_matrix(5, 4, rng);
    std::vector<Parameter*> ps{&w1, &w2};
    auto report = finite_diff_check<double>(
        [&](Tape& t) {
            const Var h = relu(matmul(t.constant(x), t.parameter(w1)));
            return cross_entropy(mean_rows(matmul(h, t.parameter(w2))), 1);
        },
        ps);
    CHECK(report.pass);
    CHECK(report.max_rel_error < 1e-4);
}

TEST_CASE("finite difference check rejects a non-positive step") {
    Parameter x("x", MatrixXd::Zero(1, 1));
    std::vector<Parameter*> ps{&x};
    GradCheckOptions opt;
    opt.step = 0.0;
    CHECK_THROWS_AS(finite_diff_check<double>([&](Tape& t) { return sum(t.parameter(x)); }, ps, opt), ParameterError);
}

TEST_CASE("adam: positive gradient decreases the parameter") {
    Parameter p("p", MatrixXd::Constant(1, 1, 1.0));
    p.grad = MatrixXd::Constant(1, 1, 0.5);
    Adam adam;
    std::vector<Parameter*> ps{&p};
    adam.step(ps);
    CHECK(p.value(0, 0) < 1.0);
}

TEST_CASE("adam: zero gradient leaves the parameter unchanged") {
    Parameter p("p", MatrixXd::Constant(2, 2, 0.3));
    p.zero_grad();
    Adam adam;
    std::vector<Parameter*> ps{&p};
    adam.step(ps);
    CHECK(p.value == MatrixXd::Constant(2, 2, 0.3));
}

TEST_CASE("adam: lr zero is bit-identical") {
    Rng rng(4);
    Parameter p("p", random_matrix(3, 3, rng));
    const MatrixXd before = p.value;
    AdamConfig cfg;
    cfg.lr = 0.0;
    Adam adam(cfg);
    std::vector<Parameter*> ps{&p};
    for (int i = 0; i < 10; ++i) {
        p.grad = random_matrix(3, 3, rng);
        adam.step(ps);
    }
    CHECK(p.value == before);
}

TEST_CASE("adam: identical trajectories from fresh state") {
    auto run = [] {
        Parameter p("p", MatrixXd::Constant(1, 2, 1.0));
        Adam adam;
        std::vector<Parameter*> ps{&p};
        for (int i = 0; i < 5; ++i) {
            p.grad = p.value * 2.0;
            adam.step(ps);
        }
        return p.value;
    };
    CHECK(run() == run());
}

TEST_CASE("adam: missing gradient is a state error") {
    Parameter p("p", MatrixXd::Ones(1, 1));
    Adam adam;
    std::vector<Parameter*> ps{&p};
    CHECK_THROWS_AS(adam.step(ps), StateError);
}

TEST_CASE("stable sum is order independent") {
    std::vector<double> v{1e16, 1.0, -1e16, 3.5, 1e-3};
    std::vector<double> w{3.5, -1e16, 1e-3, 1.0, 1e16};
    CHECK(stable_sum(v) == stable_sum(w));
}
