#include "attackcast/arima.hpp"

#include "attackcast/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace attackcast {

namespace {

constexpr double kSigma2Floor = 1e-9;
constexpr double kLog2Pi = 1.8378770664093453;

struct ParamView {
    double c;
    const double* alpha;
    const double* beta;
    const double* gamma;
    double sigma2;
};

ParamView split_params(const Eigen::VectorXd& params, int p, int q, int k) {
    if (params.size() != p + q + k + 2) {
        throw DimensionError("css_neg_loglik: expected " + std::to_string(p + q + k + 2) +
                             " parameters, got " + std::to_string(params.size()));
    }
    ParamView view;
    view.c = params[0];
    view.alpha = params.data() + 1;
    view.beta = params.data() + 1 + p;
    view.gamma = params.data() + 1 + p + q;
    view.sigma2 = std::exp(params[params.size() - 1]) + kSigma2Floor;
    return view;
}

double slice_mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double slice_var(std::span<const double> v) {
    const double mean = slice_mean(v);
    double acc = 0.0;
    for (const double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size());
}

/// Exogenous rows z-scored with training-window statistics, aligned to the
/// differenced target days [start, start + n).
Eigen::MatrixXd scale_exog(const std::vector<DailySeries>& exog, DayIndex start, int n,
                           const std::vector<ExogScaling>& scaling) {
    Eigen::MatrixXd rows(exog.size(), n);
    for (std::size_t k = 0; k < exog.size(); ++k) {
        for (int t = 0; t < n; ++t) {
            const DayIndex day = start + t;
            if (!exog[k].covers(day)) {
                throw CoverageError("exogenous signal missing day " + format_date(day));
            }
            rows(static_cast<Eigen::Index>(k), t) =
                (exog[k].value_on(day) - scaling[k].mean) / scaling[k].sd;
        }
    }
    return rows;
}

std::vector<ExogScaling> training_scaling(const std::vector<DailySeries>& exog, DayIndex start,
                                          int n) {
    std::vector<ExogScaling> scaling(exog.size());
    for (std::size_t k = 0; k < exog.size(); ++k) {
        double sum = 0.0, sum2 = 0.0;
        for (int t = 0; t < n; ++t) {
            const DayIndex day = start + t;
            if (!exog[k].covers(day)) {
                throw CoverageError("exogenous signal missing training day " + format_date(day));
            }
            const double v = exog[k].value_on(day);
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / n;
        const double var = std::max(sum2 / n - mean * mean, 0.0);
        const double sd = std::sqrt(var);
        scaling[k] = ExogScaling{mean, sd > 1e-12 ? sd : 1.0};
    }
    return scaling;
}

} // namespace

double ArimaModel::exog_coefficient_raw(int k) const {
    return gamma[k] / scaling[static_cast<std::size_t>(k)].sd;
}

double css_neg_loglik(const Eigen::VectorXd& params, int p, int q, std::span<const double> y_diff,
                      const Eigen::MatrixXd& exog_scaled) {
    const int n = static_cast<int>(y_diff.size());
    const int k = static_cast<int>(exog_scaled.rows());
    if (n <= std::max(p, q)) {
        throw LengthError("css_neg_loglik: series length " + std::to_string(n) +
                          " too short for (p,q)=(" + std::to_string(p) + "," + std::to_string(q) +
                          ")");
    }
    if (k > 0 && exog_scaled.cols() != n) {
        throw DimensionError("css_neg_loglik: exogenous rows not aligned with y");
    }
    const ParamView view = split_params(params, p, q, k);

    std::vector<double> resid(static_cast<std::size_t>(n), 0.0);
    double sum_sq = 0.0;
    for (int t = p; t < n; ++t) {
        double mean = view.c;
        for (int i = 1; i <= p; ++i) mean += view.alpha[i - 1] * y_diff[t - i];
        for (int j = 1; j <= q; ++j) {
            const int idx = t - j;
            if (idx >= p) mean += view.beta[j - 1] * resid[static_cast<std::size_t>(idx)];
        }
        for (int s = 0; s < k; ++s) mean += view.gamma[s] * exog_scaled(s, t);
        const double e = y_diff[t] - mean;
        if (!std::isfinite(e)) {
            throw NonFiniteError("css_neg_loglik: residual recursion diverged at t=" +
                                 std::to_string(t));
        }
        resid[static_cast<std::size_t>(t)] = e;
        sum_sq += e * e;
    }
    const double n_eff = n - p;
    return 0.5 * (sum_sq / view.sigma2 + n_eff * (std::log(view.sigma2) + kLog2Pi));
}

ArimaModel fit_arima(const DailySeries& y, const std::vector<DailySeries>& exog, ArimaOrder order,
                     const ArimaFitOptions& options) {
    const int k = static_cast<int>(exog.size());
    const int min_len = 3 * (order.p + order.q + k) + 10;
    if (static_cast<int>(y.size()) < min_len) {
        throw TooShortError("fit_arima: need at least " + std::to_string(min_len) +
                            " observations, got " + std::to_string(y.size()));
    }
    const DailySeries y_diff = difference(y, order.d);
    const int n = static_cast<int>(y_diff.size());
    if (n <= std::max(order.p, order.q)) {
        throw TooShortError("fit_arima: differenced series too short for the order");
    }

    const std::vector<ExogScaling> scaling = training_scaling(exog, y_diff.start_day(), n);
    const Eigen::MatrixXd exog_scaled = scale_exog(exog, y_diff.start_day(), n, scaling);
    const std::vector<double> y_vals(y_diff.values().begin(), y_diff.values().end());

    const int dim = order.p + order.q + k + 2;
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
    x0[0] = slice_mean(y_vals);
    x0[dim - 1] = std::log(std::max(slice_var(y_vals), 1e-8));

    // Non-invertible MA regions blow up the residual recursion; a large finite
    // plateau lets the line search back away instead of aborting the fit.
    const auto objective = [&](const Eigen::VectorXd& params) {
        try {
            const double nll = css_neg_loglik(params, order.p, order.q, y_vals, exog_scaled);
            return std::isfinite(nll) ? nll : 1e15;
        } catch (const NonFiniteError&) {
            return 1e15;
        }
    };
    const LbfgsResult opt = lbfgs_minimize(fd_objective(objective, options.fd_step), x0,
                                           options.lbfgs);

    ArimaModel model;
    model.order = order;
    model.c = opt.x[0];
    model.alpha = opt.x.segment(1, order.p);
    model.beta = opt.x.segment(1 + order.p, order.q);
    model.gamma = opt.x.segment(1 + order.p + order.q, k);
    model.sigma2 = std::exp(opt.x[dim - 1]) + kSigma2Floor;
    model.loglik = -opt.fx;
    model.aic = 2.0 * dim - 2.0 * model.loglik;
    model.n_obs = n;
    model.converged = opt.converged;
    model.scaling = scaling;
    return model;
}

GridSearchResult grid_search_arima(const DailySeries& y, const std::vector<DailySeries>& exog,
                                   const ArimaGrid& grid, const ArimaFitOptions& options) {
    std::vector<GridCell> cells;
    std::vector<std::pair<std::size_t, ArimaModel>> fitted; // cell index -> model
    for (int p = 0; p <= grid.p_max; ++p) {
        for (int d = 0; d <= grid.d_max; ++d) {
            for (int q = 0; q <= grid.q_max; ++q) {
                GridCell cell;
                cell.order = ArimaOrder{p, d, q};
                try {
                    ArimaModel model = fit_arima(y, exog, cell.order, options);
                    cell.aic = model.aic;
                    cell.loglik = model.loglik;
                    cell.converged = model.converged;
                    if (!std::isfinite(model.aic)) {
                        cell.failed = true;
                        cell.error = "non-finite AIC";
                    } else {
                        fitted.emplace_back(cells.size(), std::move(model));
                    }
                } catch (const Error& e) {
                    cell.failed = true;
                    cell.error = e.what();
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    if (fitted.empty()) {
        throw AllFailedError("grid_search_arima: every grid cell failed");
    }

    const auto better = [](const std::pair<std::size_t, ArimaModel>& a,
                           const std::pair<std::size_t, ArimaModel>& b) {
        if (a.second.aic != b.second.aic) return a.second.aic < b.second.aic;
        const auto& ao = a.second.order;
        const auto& bo = b.second.order;
        const int asum = ao.p + ao.q + ao.d;
        const int bsum = bo.p + bo.q + bo.d;
        if (asum != bsum) return asum < bsum;
        return std::tie(ao.p, ao.d, ao.q) < std::tie(bo.p, bo.d, bo.q);
    };

    // convergent cells compete; fall back to the best non-convergent fit only
    // when nothing converged
    const std::pair<std::size_t, ArimaModel>* best = nullptr;
    for (const auto& entry : fitted) {
        if (!entry.second.converged) continue;
        if (best == nullptr || better(entry, *best)) best = &entry;
    }
    if (best == nullptr) {
        for (const auto& entry : fitted) {
            if (best == nullptr || better(entry, *best)) best = &entry;
        }
    }
    return GridSearchResult{best->second, std::move(cells)};
}

ArimaForecast forecast_arima(const ArimaModel& model, const DailySeries& y_observed,
                             const std::vector<DailySeries>& exog_full, int gap_len, int horizon) {
    if (gap_len < 0 || horizon < 1) {
        throw LengthError("forecast_arima: need gap_len >= 0 and horizon >= 1");
    }
    const int k = static_cast<int>(exog_full.size());
    if (k != model.gamma.size()) {
        throw DimensionError("forecast_arima: model expects " + std::to_string(model.gamma.size()) +
                             " exogenous signals, got " + std::to_string(k));
    }
    const int d = model.order.d;
    const int p = model.order.p;
    const int q = model.order.q;
    if (static_cast<int>(y_observed.size()) <= d) {
        throw LengthError("forecast_arima: observed series shorter than the difference order");
    }

    const DailySeries y_diff = difference(y_observed, d);
    const int n = static_cast<int>(y_diff.size());
    const DayIndex diff_start = y_diff.start_day();
    const int steps = gap_len + horizon;

    // z-scored exogenous values for both the observed span and the future days
    const auto exog_at = [&](DayIndex day) {
        Eigen::VectorXd row(k);
        for (int s = 0; s < k; ++s) {
            if (!exog_full[static_cast<std::size_t>(s)].covers(day)) {
                throw CoverageError("forecast_arima: exogenous signal " +
                                    (model.exog_ids.empty() ? std::to_string(s)
                                                            : model.exog_ids[static_cast<std::size_t>(s)]) +
                                    " missing day " + format_date(day));
            }
            const ExogScaling& sc = model.scaling[static_cast<std::size_t>(s)];
            row[s] = (exog_full[static_cast<std::size_t>(s)].value_on(day) - sc.mean) / sc.sd;
        }
        return row;
    };

    // in-sample residuals under the fitted parameters (pre-sample residuals 0)
    std::vector<double> resid(static_cast<std::size_t>(n), 0.0);
    for (int t = p; t < n; ++t) {
        double mean = model.c;
        for (int i = 1; i <= p; ++i) mean += model.alpha[i - 1] * y_diff[static_cast<std::size_t>(t - i)];
        for (int j = 1; j <= q; ++j) {
            const int idx = t - j;
            if (idx >= p) mean += model.beta[j - 1] * resid[static_cast<std::size_t>(idx)];
        }
        if (k > 0) mean += model.gamma.dot(exog_at(diff_start + t));
        resid[static_cast<std::size_t>(t)] = y_diff[static_cast<std::size_t>(t)] - mean;
    }

    // recursive forecasts on the differenced scale; index u >= n is future
    std::vector<double> future_diff(static_cast<std::size_t>(steps), 0.0);
    const auto diff_at = [&](int idx) {
        if (idx < 0) return 0.0;
        if (idx < n) return y_diff[static_cast<std::size_t>(idx)];
        return future_diff[static_cast<std::size_t>(idx - n)];
    };
    const auto resid_at = [&](int idx) {
        return (idx >= p && idx < n) ? resid[static_cast<std::size_t>(idx)] : 0.0;
    };
    for (int u = 0; u < steps; ++u) {
        const int t = n + u;
        double mean = model.c;
        for (int i = 1; i <= p; ++i) mean += model.alpha[i - 1] * diff_at(t - i);
        for (int j = 1; j <= q; ++j) mean += model.beta[j - 1] * resid_at(t - j);
        if (k > 0) mean += model.gamma.dot(exog_at(diff_start + t));
        if (!std::isfinite(mean)) {
            throw NonFiniteError("forecast_arima: recursion diverged at step " + std::to_string(u));
        }
        future_diff[static_cast<std::size_t>(u)] = mean;
    }

    const DayIndex first_future = y_observed.end_day() + 1;
    const DailySeries future_levels =
        integrate(DailySeries(first_future, future_diff, SeriesKind::SignalValue),
                  tail_anchors(y_observed, d), d);

    std::vector<double> gap_levels(future_levels.values().begin(),
                                   future_levels.values().begin() + gap_len);
    std::vector<double> horizon_levels(future_levels.values().begin() + gap_len,
                                       future_levels.values().end());
    for (double& v : horizon_levels) v = std::max(v, 0.0);
    return ArimaForecast{
        DailySeries(first_future + gap_len, std::move(horizon_levels), SeriesKind::SignalValue),
        std::move(gap_levels)};
}

nlohmann::json arima_to_json(const ArimaModel& model) {
    nlohmann::json j;
    j["type"] = "arima";
    j["order"] = {{"p", model.order.p}, {"d", model.order.d}, {"q", model.order.q}};
    j["c"] = model.c;
    j["alpha"] = std::vector<double>(model.alpha.begin(), model.alpha.end());
    j["beta"] = std::vector<double>(model.beta.begin(), model.beta.end());
    j["gamma"] = std::vector<double>(model.gamma.begin(), model.gamma.end());
    j["sigma2"] = model.sigma2;
    j["loglik"] = model.loglik;
    j["aic"] = model.aic;
    j["n_obs"] = model.n_obs;
    j["converged"] = model.converged;
    nlohmann::json scaling = nlohmann::json::array();
    for (const auto& s : model.scaling) {
        scaling.push_back({{"mean", s.mean}, {"sd", s.sd}});
    }
    j["exog_scaling"] = std::move(scaling);
    j["exog_ids"] = model.exog_ids;
    return j;
}

ArimaModel arima_from_json(const nlohmann::json& j) {
    if (j.value("type", "") != "arima") {
        throw ParseError("not an arima model document", 0);
    }
    ArimaModel model;
    model.order = ArimaOrder{j.at("order").at("p").get<int>(), j.at("order").at("d").get<int>(),
                             j.at("order").at("q").get<int>()};
    model.c = j.at("c").get<double>();
    const auto alpha = j.at("alpha").get<std::vector<double>>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    const auto gamma = j.at("gamma").get<std::vector<double>>();
    model.alpha = Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
    model.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    model.gamma = Eigen::Map<const Eigen::VectorXd>(gamma.data(), static_cast<Eigen::Index>(gamma.size()));
    model.sigma2 = j.at("sigma2").get<double>();
    model.loglik = j.at("loglik").get<double>();
    model.aic = j.at("aic").get<double>();
    model.n_obs = j.at("n_obs").get<int>();
    model.converged = j.at("converged").get<bool>();
    for (const auto& s : j.at("exog_scaling")) {
        model.scaling.push_back(ExogScaling{s.at("mean").get<double>(), s.at("sd").get<double>()});
    }
    model.exog_ids = j.at("exog_ids").get<std::vector<std::string>>();
    return model;
}

} // namespace attackcast
