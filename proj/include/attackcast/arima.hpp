#pragma once

#include "attackcast/optim.hpp"
#include "attackcast/series.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <string>
#include <vector>

namespace attackcast {

struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
};

struct ExogScaling {
    double mean = 0.0;
    double sd = 1.0;
};

/// ARIMA(p,d,q) / ARIMAX with constant c, AR coefficients alpha, MA
/// coefficients beta, exogenous coefficients gamma (on z-scored signals) and
/// white-noise variance sigma2. Fit by conditional Gaussian MLE.
struct ArimaModel {
    ArimaOrder order;
    double c = 0.0;
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;
    Eigen::VectorXd gamma;
    double sigma2 = 1.0;
    double loglik = 0.0;
    double aic = 0.0;
    int n_obs = 0;       // length of the differenced series the fit saw
    bool converged = true;
    std::vector<ExogScaling> scaling; // per exogenous signal, training-window stats
    std::vector<std::string> exog_ids;

    int n_params() const { return order.p + order.q + static_cast<int>(gamma.size()) + 2; }
    /// Effect per raw signal unit (gamma is estimated on the z-scored signal).
    double exog_coefficient_raw(int k) const;
};

/// Negative conditional Gaussian log-likelihood of a differenced series under
/// parameters [c, alpha(p), beta(q), gamma(K), s] with sigma2 = exp(s) + 1e-9.
/// Residuals follow the model recursion with the first p observations
/// conditioned on and pre-sample residuals fixed at zero. `exog_scaled` holds
/// one row per signal, aligned index-wise with y_diff.
double css_neg_loglik(const Eigen::VectorXd& params, int p, int q, std::span<const double> y_diff,
                      const Eigen::MatrixXd& exog_scaled);

struct ArimaFitOptions {
    LbfgsConfig lbfgs;
    double fd_step = 1e-4; // finite-difference step for objective gradients
};

ArimaModel fit_arima(const DailySeries& y, const std::vector<DailySeries>& exog, ArimaOrder order,
                     const ArimaFitOptions& options = {});

struct ArimaGrid {
    int p_max = 5;
    int d_max = 2;
    int q_max = 5;
};

struct GridCell {
    ArimaOrder order;
    double aic = 0.0;
    double loglik = 0.0;
    bool converged = false;
    bool failed = false;
    std::string error;
};

struct GridSearchResult {
    ArimaModel model;
    std::vector<GridCell> cells; // one per (p,d,q), in loop order
};

/// Fits every order in the grid and returns the minimum-AIC convergent model.
/// Ties break toward smaller p+q+d, then lexicographic (p,d,q).
GridSearchResult grid_search_arima(const DailySeries& y, const std::vector<DailySeries>& exog,
                                   const ArimaGrid& grid, const ArimaFitOptions& options = {});

struct ArimaForecast {
    DailySeries levels;             // horizon days, clamped at zero
    std::vector<double> gap_levels; // internal gap estimates, unclamped
};

/// Recursive multistep forecast over gap_len + horizon days past the end of
/// y_observed. Future residuals are zero; gap forecasts feed back as lagged
/// values; output is integrated to levels and the horizon part clamped at 0.
ArimaForecast forecast_arima(const ArimaModel& model, const DailySeries& y_observed,
                             const std::vector<DailySeries>& exog_full, int gap_len, int horizon);

nlohmann::json arima_to_json(const ArimaModel& model);
ArimaModel arima_from_json(const nlohmann::json& j);

} // namespace attackcast
