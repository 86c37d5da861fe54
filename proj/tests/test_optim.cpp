#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "attackcast/errors.hpp"
#include "attackcast/optim.hpp"
#include "attackcast/rng.hpp"

#include <cmath>

using namespace attackcast;
using Eigen::VectorXd;

namespace {

ObjectiveEval shifted_quadratic(const VectorXd& x) {
    ObjectiveEval eval;
    eval.value = (x.array() - 1.0).square().sum();
    eval.gradient = 2.0 * (x.array() - 1.0);
    return eval;
}

ObjectiveEval rosenbrock(const VectorXd& x) {
    const double a = x[0], b = x[1];
    ObjectiveEval eval;
    eval.value = 100.0 * std::pow(b - a * a, 2) + std::pow(1.0 - a, 2);
    eval.gradient = VectorXd(2);
    eval.gradient[0] = -400.0 * a * (b - a * a) - 2.0 * (1.0 - a);
    eval.gradient[1] = 200.0 * (b - a * a);
    return eval;
}

} // namespace

TEST_CASE("lbfgs minimizes a quadratic") {
    const auto result = lbfgs_minimize(shifted_quadratic, VectorXd::Zero(5));
    CHECK(result.converged);
    for (int i = 0; i < 5; ++i) {
        CHECK(result.x[i] == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK(result.fx < 1e-10);
}

TEST_CASE("lbfgs solves rosenbrock") {
    VectorXd x0(2);
    x0 << -1.2, 1.0;
    const auto result = lbfgs_minimize(rosenbrock, x0);
    CHECK(result.converged);
    CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(result.x[1] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(result.fx < 1e-8);
}

TEST_CASE("lbfgs at the optimum returns immediately") {
    const auto result = lbfgs_minimize(shifted_quadratic, VectorXd::Ones(5));
    CHECK(result.converged);
    CHECK(result.iterations <= 1);
    CHECK(result.fx == 0.0);
}

TEST_CASE("lbfgs never returns a value above f(x0)") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        VectorXd x0(4);
        for (int i = 0; i < 4; ++i) x0[i] = rng.uniform(-3.0, 3.0);
        // ill-scaled quartic bowl
        const auto obj = [](const VectorXd& x) {
            ObjectiveEval eval;
            eval.value = 0.0;
            eval.gradient = VectorXd(x.size());
            for (int i = 0; i < x.size(); ++i) {
                const double scale = std::pow(10.0, i);
                eval.value += scale * std::pow(x[i], 4);
                eval.gradient[i] = scale * 4.0 * std::pow(x[i], 3);
            }
            return eval;
        };
        const double f0 = obj(x0).value;
        const auto result = lbfgs_minimize(obj, x0, LbfgsConfig{.max_iters = 50});
        CHECK(result.fx <= f0);
    }
}

TEST_CASE("lbfgs rejects mismatched gradients and non-finite starts") {
    const auto bad_dim = [](const VectorXd& x) {
        return ObjectiveEval{x.squaredNorm(), VectorXd::Zero(x.size() + 1)};
    };
    CHECK_THROWS_AS(lbfgs_minimize(bad_dim, VectorXd::Zero(2)), DimensionError);

    const auto bad_value = [](const VectorXd& x) {
        return ObjectiveEval{std::nan(""), VectorXd::Zero(x.size())};
    };
    CHECK_THROWS_AS(lbfgs_minimize(bad_value, VectorXd::Zero(2)), NonFiniteError);
}

TEST_CASE("adam zero gradient leaves params fixed") {
    auto state = AdamState::init(3, 0.1);
    const VectorXd params = VectorXd::Constant(3, 2.0);
    const auto [next, updated] = adam_step(state, params, VectorXd::Zero(3));
    CHECK(next.step == 1);
    CHECK((updated - params).norm() == 0.0);
}

TEST_CASE("adam first step moves by about lr") {
    // with g=1, bias correction gives m_hat = v_hat = 1 -> step approx lr
    auto state = AdamState::init(1, 0.1);
    const auto [next, updated] = adam_step(state, VectorXd::Zero(1), VectorXd::Ones(1));
    CHECK(updated[0] == doctest::Approx(-0.1).epsilon(1e-6));
}

TEST_CASE("adam drives a quadratic toward its minimum") {
    auto state = AdamState::init(1, 0.05);
    VectorXd x = VectorXd::Constant(1, 5.0);
    for (int step = 0; step < 500; ++step) {
        const VectorXd grad = 2.0 * x;
        auto [next_state, next_x] = adam_step(state, x, grad);
        state = std::move(next_state);
        x = std::move(next_x);
    }
    CHECK(std::abs(x[0]) < 0.1);
}

TEST_CASE("adam is deterministic") {
    auto state_a = AdamState::init(2, 0.01);
    auto state_b = AdamState::init(2, 0.01);
    VectorXd pa = VectorXd::Constant(2, 1.5), pb = pa;
    VectorXd g(2);
    g << 0.3, -0.7;
    for (int i = 0; i < 20; ++i) {
        std::tie(state_a, pa) = adam_step(state_a, pa, g);
        std::tie(state_b, pb) = adam_step(state_b, pb, g);
    }
    CHECK(pa == pb);
    CHECK(state_a.m == state_b.m);
    CHECK(state_a.v == state_b.v);

    CHECK_THROWS_AS(adam_step(state_a, pa, VectorXd::Zero(3)), DimensionError);
}

TEST_CASE("finite differences match simple analytic derivatives") {
    const auto square = [](const VectorXd& x) { return x[0] * x[0]; };
    const auto g = finite_diff_grad(square, VectorXd::Constant(1, 3.0), 1e-5);
    CHECK(g[0] == doctest::Approx(6.0).epsilon(1e-6));

    const auto constant = [](const VectorXd&) { return 42.0; };
    const auto gz = finite_diff_grad(constant, VectorXd::Zero(4), 1e-5);
    CHECK(gz.norm() == 0.0);
}

TEST_CASE("finite differences match a random cubic's analytic gradient") {
    Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        VectorXd a(3), b(3), c(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = rng.uniform(-2.0, 2.0);
            b[i] = rng.uniform(-2.0, 2.0);
            c[i] = rng.uniform(-2.0, 2.0);
        }
        const auto cubic = [&](const VectorXd& x) {
            double v = 0.0;
            for (int i = 0; i < 3; ++i) {
                v += a[i] * x[i] * x[i] * x[i] + b[i] * x[i] * x[i] + c[i] * x[i];
            }
            return v;
        };
        VectorXd x(3);
        for (int i = 0; i < 3; ++i) x[i] = rng.uniform(-1.5, 1.5);
        const VectorXd numeric = finite_diff_grad(cubic, x, 1e-5);
        for (int i = 0; i < 3; ++i) {
            const double analytic = 3.0 * a[i] * x[i] * x[i] + 2.0 * b[i] * x[i] + c[i];
            CHECK(numeric[i] ==
                  doctest::Approx(analytic).epsilon(1e-6).scale(std::max(1.0, std::abs(analytic))));
        }
    }
}
