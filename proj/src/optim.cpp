#include "attackcast/optim.hpp"

#include "attackcast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace attackcast {

namespace {

void check_eval(const ObjectiveEval& eval, Eigen::Index dim, const char* where) {
    if (eval.gradient.size() != dim) {
        throw DimensionError(std::string(where) + ": gradient dimension " +
                             std::to_string(eval.gradient.size()) + " != parameter dimension " +
                             std::to_string(dim));
    }
    if (!std::isfinite(eval.value) || !eval.gradient.allFinite()) {
        throw NonFiniteError(std::string(where) + ": objective returned NaN/Inf");
    }
}

} // namespace

LbfgsResult lbfgs_minimize(const Objective& objective, Eigen::VectorXd x0,
                           const LbfgsConfig& config) {
    GradientObjective wrapped;
    wrapped.value = [&objective](const Eigen::VectorXd& x) { return objective(x).value; };
    wrapped.eval = objective;
    return lbfgs_minimize(wrapped, std::move(x0), config);
}

LbfgsResult lbfgs_minimize(const GradientObjective& objective, Eigen::VectorXd x0,
                           const LbfgsConfig& config) {
    const Eigen::Index dim = x0.size();
    ObjectiveEval cur = objective.eval(x0);
    check_eval(cur, dim, "lbfgs_minimize(x0)");

    Eigen::VectorXd x = std::move(x0);
    Eigen::VectorXd best_x = x;
    double best_f = cur.value;

    struct Pair {
        Eigen::VectorXd s, y;
        double rho;
    };
    std::deque<Pair> history;

    int iter = 0;
    bool converged = cur.gradient.norm() <= config.grad_tol;
    while (!converged && iter < config.max_iters) {
        ++iter;

        // Two-loop recursion for the search direction.
        Eigen::VectorXd q = cur.gradient;
        std::vector<double> alpha(history.size());
        for (std::size_t i = history.size(); i-- > 0;) {
            alpha[i] = history[i].rho * history[i].s.dot(q);
            q -= alpha[i] * history[i].y;
        }
        if (!history.empty()) {
            const Pair& last = history.back();
            q *= last.s.dot(last.y) / last.y.squaredNorm();
        }
        for (std::size_t i = 0; i < history.size(); ++i) {
            const double beta = history[i].rho * history[i].y.dot(q);
            q += (alpha[i] - beta) * history[i].s;
        }
        Eigen::VectorXd direction = -q;

        double dir_deriv = cur.gradient.dot(direction);
        if (!(dir_deriv < 0.0)) {
            direction = -cur.gradient;
            dir_deriv = cur.gradient.dot(direction);
            history.clear();
        }

        // Weak-Wolfe line search: bisect down on Armijo failures, extend on
        // curvature failures. Gradients are computed only once a probe passes
        // the Armijo test. Guarantees positive curvature for the update.
        double step = 1.0;
        double lo = 0.0, hi = std::numeric_limits<double>::infinity();
        ObjectiveEval next;
        Eigen::VectorXd x_next;
        ObjectiveEval armijo_best;
        Eigen::VectorXd armijo_x;
        bool have_armijo = false;
        bool accepted = false;
        for (int ls = 0; ls < config.max_line_search; ++ls) {
            x_next = x + step * direction;
            const double fv = objective.value(x_next);
            if (!std::isfinite(fv) || fv > cur.value + config.armijo_c * step * dir_deriv) {
                hi = step;
                step = 0.5 * (lo + hi);
                continue;
            }
            next = objective.eval(x_next);
            if (next.gradient.size() != dim) {
                throw DimensionError("lbfgs_minimize: gradient dimension mismatch");
            }
            if (!next.gradient.allFinite()) {
                hi = step;
                step = 0.5 * (lo + hi);
                continue;
            }
            if (next.gradient.dot(direction) < config.wolfe_c * dir_deriv) {
                armijo_best = next;
                armijo_x = x_next;
                have_armijo = true;
                lo = step;
                step = std::isinf(hi) ? 2.0 * step : 0.5 * (lo + hi);
                continue;
            }
            accepted = true;
            break;
        }
        if (!accepted) {
            if (!have_armijo) {
                break; // direction exhausted; best iterate so far stands
            }
            next = std::move(armijo_best);
            x_next = std::move(armijo_x);
        }
        check_eval(next, dim, "lbfgs_minimize");

        Pair pair{x_next - x, next.gradient - cur.gradient, 0.0};
        const double sy = pair.s.dot(pair.y);
        if (sy > 1e-12 * pair.s.norm() * pair.y.norm()) {
            pair.rho = 1.0 / sy;
            history.push_back(std::move(pair));
            if (static_cast<int>(history.size()) > config.memory) {
                history.pop_front();
            }
        }

        const double prev_f = cur.value;
        x = std::move(x_next);
        cur = std::move(next);
        if (cur.value < best_f) {
            best_f = cur.value;
            best_x = x;
        }
        converged = cur.gradient.norm() <= config.grad_tol ||
                    prev_f - cur.value <=
                        config.f_tol * std::max({std::abs(prev_f), std::abs(cur.value), 1.0});
    }

    return LbfgsResult{std::move(best_x), best_f, converged, iter};
}

AdamState AdamState::init(Eigen::Index dim, double lr) {
    AdamState state;
    state.m = Eigen::VectorXd::Zero(dim);
    state.v = Eigen::VectorXd::Zero(dim);
    state.lr = lr;
    return state;
}

std::pair<AdamState, Eigen::VectorXd> adam_step(const AdamState& state,
                                                const Eigen::VectorXd& params,
                                                const Eigen::VectorXd& grads) {
    if (params.size() != grads.size() || state.m.size() != params.size() ||
        state.v.size() != params.size()) {
        throw DimensionError("adam_step: dimension mismatch");
    }
    AdamState next = state;
    next.step = state.step + 1;
    next.m = state.beta1 * state.m + (1.0 - state.beta1) * grads;
    next.v = state.beta2 * state.v.array().matrix() +
             (1.0 - state.beta2) * grads.array().square().matrix();
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(next.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(next.step));
    const Eigen::ArrayXd m_hat = next.m.array() / bc1;
    const Eigen::ArrayXd v_hat = next.v.array() / bc2;
    Eigen::VectorXd new_params =
        params.array() - state.lr * m_hat / (v_hat.sqrt() + state.eps);
    return {std::move(next), std::move(new_params)};
}

Eigen::VectorXd finite_diff_grad(const ScalarObjective& objective, const Eigen::VectorXd& x,
                                 double h) {
    Eigen::VectorXd grad(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double up = objective(probe);
        probe[i] = x[i] - h;
        const double down = objective(probe);
        probe[i] = x[i];
        if (!std::isfinite(up) || !std::isfinite(down)) {
            throw NonFiniteError("finite_diff_grad: objective not finite near x");
        }
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

Objective with_finite_diff_gradient(ScalarObjective objective, double h) {
    return [objective = std::move(objective), h](const Eigen::VectorXd& x) {
        ObjectiveEval eval;
        eval.value = objective(x);
        eval.gradient = finite_diff_grad(objective, x, h);
        return eval;
    };
}

GradientObjective fd_objective(ScalarObjective objective, double h) {
    GradientObjective out;
    out.value = objective;
    out.eval = with_finite_diff_gradient(std::move(objective), h);
    return out;
}

} // namespace attackcast
