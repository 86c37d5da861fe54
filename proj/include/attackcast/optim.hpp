#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <utility>

namespace attackcast {

struct ObjectiveEval {
    double value;
    Eigen::VectorXd gradient;
};

using Objective = std::function<ObjectiveEval(const Eigen::VectorXd&)>;
using ScalarObjective = std::function<double(const Eigen::VectorXd&)>;

struct LbfgsConfig {
    int memory = 10;
    int max_iters = 500;
    double grad_tol = 1e-6;
    double f_tol = 1e-12;      // relative objective plateau, as in L-BFGS-B's factr
    double armijo_c = 1e-4;    // sufficient-decrease constant
    double wolfe_c = 0.9;      // curvature constant
    int max_line_search = 60;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double fx;
    bool converged;
    int iterations;
};

/// Objective with a cheap value-only path. The line search probes values and
/// asks for gradients only at points that already satisfy sufficient decrease,
/// which matters when gradients come from finite differences.
struct GradientObjective {
    ScalarObjective value;
    Objective eval;
};

/// Two-loop-recursion L-BFGS. The line search backtracks on sufficient-decrease
/// failures and extends on curvature failures (weak Wolfe), so every accepted
/// step satisfies the Armijo condition and keeps s.y > 0.
/// Returns the best iterate seen; fx never exceeds the objective at x0.
LbfgsResult lbfgs_minimize(const GradientObjective& objective, Eigen::VectorXd x0,
                           const LbfgsConfig& config = {});
LbfgsResult lbfgs_minimize(const Objective& objective, Eigen::VectorXd x0,
                           const LbfgsConfig& config = {});

struct AdamState {
    std::int64_t step = 0;
    Eigen::VectorXd m;
    Eigen::VectorXd v;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState init(Eigen::Index dim, double lr);
};

/// One bias-corrected Adam update. Pure: returns the advanced state and params.
std::pair<AdamState, Eigen::VectorXd> adam_step(const AdamState& state,
                                                const Eigen::VectorXd& params,
                                                const Eigen::VectorXd& grads);

/// Central-difference gradient, (f(x+h e_i) - f(x-h e_i)) / 2h per coordinate.
Eigen::VectorXd finite_diff_grad(const ScalarObjective& objective, const Eigen::VectorXd& x,
                                 double h);

/// Adapts a gradient-free objective for lbfgs_minimize via finite differences.
Objective with_finite_diff_gradient(ScalarObjective objective, double h = 1e-6);
GradientObjective fd_objective(ScalarObjective objective, double h = 1e-6);

} // namespace attackcast
