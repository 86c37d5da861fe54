#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "attackcast/arima.hpp"
#include "attackcast/errors.hpp"
#include "attackcast/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

using namespace attackcast;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

DailySeries series_of(std::vector<double> vals, DayIndex start = 17348) {
    return DailySeries(start, std::move(vals), SeriesKind::SignalValue);
}

// Independent re-implementation of the conditional likelihood used as an
// oracle: plain loops, no shared code with the library path.
double oracle_nll(const std::vector<double>& y, double c, const std::vector<double>& alpha,
                  const std::vector<double>& beta, const std::vector<double>& gamma,
                  const std::vector<std::vector<double>>& x, double s) {
    const double sigma2 = std::exp(s) + 1e-9;
    const int p = static_cast<int>(alpha.size());
    const int q = static_cast<int>(beta.size());
    const int n = static_cast<int>(y.size());
    std::vector<double> e(y.size(), 0.0);
    double nll = 0.0;
    for (int t = p; t < n; ++t) {
        double m = c;
        for (int i = 0; i < p; ++i) m += alpha[i] * y[t - 1 - i];
        for (int j = 0; j < q; ++j) {
            if (t - 1 - j >= p) m += beta[j] * e[t - 1 - j];
        }
        for (std::size_t k = 0; k < gamma.size(); ++k) m += gamma[k] * x[k][t];
        e[t] = y[t] - m;
        nll += 0.5 * (e[t] * e[t] / sigma2 + std::log(sigma2) + std::log(2.0 * M_PI));
    }
    return nll;
}

std::vector<double> ar1_sample(Rng& rng, int n, double alpha, double c, double sigma) {
    std::vector<double> y(static_cast<std::size_t>(n));
    double prev = c / (1.0 - alpha);
    for (auto& v : y) {
        prev = c + alpha * prev + sigma * rng.normal();
        v = prev;
    }
    return y;
}

// least-squares regression of y_t on (1, y_{t-1}) as an AR(1) oracle
double ols_ar1(const std::vector<double>& y) {
    const int n = static_cast<int>(y.size());
    MatrixXd design(n - 1, 2);
    VectorXd target(n - 1);
    for (int t = 1; t < n; ++t) {
        design(t - 1, 0) = 1.0;
        design(t - 1, 1) = y[t - 1];
        target(t - 1) = y[t];
    }
    const VectorXd coef = (design.transpose() * design).ldlt().solve(design.transpose() * target);
    return coef[1];
}

} // namespace

TEST_CASE("css reduces to the iid closed form at p=q=K=0") {
    Rng rng(3);
    std::vector<double> y(40);
    for (auto& v : y) v = rng.uniform(-2.0, 8.0);
    double mean = 0.0;
    for (const double v : y) mean += v;
    mean /= static_cast<double>(y.size());

    const double s = 0.3;
    const double sigma2 = std::exp(s) + 1e-9;
    VectorXd params(2);
    params << mean, s;
    double expected = 0.0;
    for (const double v : y) {
        expected += 0.5 * ((v - mean) * (v - mean) / sigma2 + std::log(sigma2) + std::log(2.0 * M_PI));
    }
    CHECK(css_neg_loglik(params, 0, 0, y, MatrixXd(0, 0)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("zero AR coefficient matches the conditioned p=0 likelihood") {
    Rng rng(4);
    std::vector<double> y(30);
    for (auto& v : y) v = rng.normal();

    VectorXd p1(3);
    p1 << 0.0, 0.0, 0.1; // c=0, alpha1=0, s
    const double with_lag = css_neg_loglik(p1, 1, 0, y, MatrixXd(0, 0));

    VectorXd p0(2);
    p0 << 0.0, 0.1;
    const std::vector<double> tail(y.begin() + 1, y.end());
    const double conditioned = css_neg_loglik(p0, 0, 0, tail, MatrixXd(0, 0));

    CHECK(with_lag == doctest::Approx(conditioned).epsilon(1e-14));
}

TEST_CASE("css matches an independent residual recursion on random instances") {
    Rng rng(20180512);
    for (int trial = 0; trial < 50; ++trial) {
        const int p = static_cast<int>(rng.uniform() * 3);
        const int q = static_cast<int>(rng.uniform() * 3);
        const int k = static_cast<int>(rng.uniform() * 3);
        const int n = 25 + static_cast<int>(rng.uniform() * 20);

        std::vector<double> y(static_cast<std::size_t>(n));
        for (auto& v : y) v = rng.uniform(-3.0, 3.0);
        std::vector<std::vector<double>> x(static_cast<std::size_t>(k),
                                           std::vector<double>(static_cast<std::size_t>(n)));
        MatrixXd x_mat(k, n);
        for (int s = 0; s < k; ++s) {
            for (int t = 0; t < n; ++t) {
                x[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = rng.uniform(-1.0, 1.0);
                x_mat(s, t) = x[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
            }
        }

        const double c = rng.uniform(-0.5, 0.5);
        std::vector<double> alpha(static_cast<std::size_t>(p)), beta(static_cast<std::size_t>(q)),
            gamma(static_cast<std::size_t>(k));
        for (auto& v : alpha) v = rng.uniform(-0.4, 0.4);
        for (auto& v : beta) v = rng.uniform(-0.4, 0.4);
        for (auto& v : gamma) v = rng.uniform(-1.0, 1.0);
        const double s_param = rng.uniform(-0.5, 0.5);

        VectorXd params(p + q + k + 2);
        params[0] = c;
        for (int i = 0; i < p; ++i) params[1 + i] = alpha[static_cast<std::size_t>(i)];
        for (int j = 0; j < q; ++j) params[1 + p + j] = beta[static_cast<std::size_t>(j)];
        for (int g = 0; g < k; ++g) params[1 + p + q + g] = gamma[static_cast<std::size_t>(g)];
        params[p + q + k + 1] = s_param;

        const double lib = css_neg_loglik(params, p, q, y, x_mat);
        const double oracle = oracle_nll(y, c, alpha, beta, gamma, x, s_param);
        CHECK(std::abs(lib - oracle) < 1e-10);
    }
}

TEST_CASE("fit recovers an AR(1) coefficient and agrees with least squares") {
    Rng rng(606);
    const auto y = ar1_sample(rng, 2000, 0.6, 0.0, 1.0);
    const ArimaModel model = fit_arima(series_of(y), {}, ArimaOrder{1, 0, 0});
    CHECK(model.converged);
    CHECK(model.alpha[0] > 0.55);
    CHECK(model.alpha[0] < 0.65);
    CHECK(model.alpha[0] == doctest::Approx(ols_ar1(y)).epsilon(0.02));
    CHECK(model.aic == doctest::Approx(2.0 * 3 - 2.0 * model.loglik).epsilon(1e-12));
    CHECK(model.sigma2 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("constant series under (0,1,0) degenerates cleanly") {
    const ArimaModel model =
        fit_arima(series_of(std::vector<double>(60, 7.0)), {}, ArimaOrder{0, 1, 0});
    CHECK(std::abs(model.c) < 1e-6);
    CHECK(model.sigma2 < 1e-6); // driven to the variance floor

    const auto fc = forecast_arima(model, series_of(std::vector<double>(60, 7.0)), {}, 0, 5);
    for (std::size_t i = 0; i < fc.levels.size(); ++i) {
        CHECK(fc.levels[i] == doctest::Approx(7.0).epsilon(1e-6));
    }
}

TEST_CASE("fit recovers an exogenous coefficient and agrees with OLS") {
    Rng rng(707);
    const int n = 2000;
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    double prev = 0.0;
    for (int t = 0; t < n; ++t) {
        x[static_cast<std::size_t>(t)] = rng.uniform(0.0, 3.0);
        prev = 0.5 * prev + 2.0 * x[static_cast<std::size_t>(t)] + rng.normal();
        y[static_cast<std::size_t>(t)] = prev;
    }

    const ArimaModel model =
        fit_arima(series_of(y), {series_of(x)}, ArimaOrder{1, 0, 0});
    CHECK(model.converged);
    const double gamma_raw = model.exog_coefficient_raw(0);
    CHECK(gamma_raw > 1.8);
    CHECK(gamma_raw < 2.2);

    // OLS oracle: y_t ~ (1, y_{t-1}, x_t)
    MatrixXd design(n - 1, 3);
    VectorXd target(n - 1);
    for (int t = 1; t < n; ++t) {
        design(t - 1, 0) = 1.0;
        design(t - 1, 1) = y[static_cast<std::size_t>(t - 1)];
        design(t - 1, 2) = x[static_cast<std::size_t>(t)];
        target(t - 1) = y[static_cast<std::size_t>(t)];
    }
    const VectorXd coef = (design.transpose() * design).ldlt().solve(design.transpose() * target);
    CHECK(gamma_raw == doctest::Approx(coef[2]).epsilon(0.03));
    CHECK(model.alpha[0] == doctest::Approx(coef[1]).epsilon(0.05));
}

TEST_CASE("adding a copy of the target as exog never hurts the likelihood") {
    Rng rng(808);
    const auto y = ar1_sample(rng, 300, 0.5, 1.0, 1.0);
    const ArimaModel plain = fit_arima(series_of(y), {}, ArimaOrder{1, 0, 0});
    const ArimaModel with_copy =
        fit_arima(series_of(y), {series_of(y)}, ArimaOrder{1, 0, 0});
    CHECK(with_copy.loglik >= plain.loglik - 1e-4);
}

TEST_CASE("grid search returns the minimum-AIC convergent cell") {
    Rng rng(909);
    std::vector<double> y(static_cast<std::size_t>(240));
    for (auto& v : y) v = 5.0 + rng.normal();

    const auto result = grid_search_arima(series_of(y), {}, ArimaGrid{2, 1, 2});
    REQUIRE(!result.cells.empty());
    CHECK(result.cells.size() == 3 * 2 * 3);
    for (const auto& cell : result.cells) {
        if (!cell.failed && cell.converged) {
            CHECK(result.model.aic <= cell.aic + 1e-9);
        }
    }
}

TEST_CASE("single-cell grid returns the mean model") {
    Rng rng(111);
    std::vector<double> y(static_cast<std::size_t>(120));
    double sum = 0.0;
    for (auto& v : y) {
        v = 3.0 + rng.normal();
        sum += v;
    }
    const auto result = grid_search_arima(series_of(y), {}, ArimaGrid{0, 0, 0});
    CHECK(result.model.order.p == 0);
    CHECK(result.model.order.d == 0);
    CHECK(result.model.order.q == 0);
    CHECK(result.model.c == doctest::Approx(sum / 120.0).epsilon(1e-3));
}

TEST_CASE("grid search prefers enough AR lags for AR(2) data") {
    int hits = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(2000 + static_cast<std::uint64_t>(seed));
        std::vector<double> y(static_cast<std::size_t>(3000));
        double y1 = 0.0, y2 = 0.0;
        for (auto& v : y) {
            const double next = 1.2 * y1 - 0.5 * y2 + rng.normal();
            y2 = y1;
            y1 = next;
            v = next;
        }
        const auto result = grid_search_arima(series_of(y), {}, ArimaGrid{3, 0, 1});
        if (result.model.order.p >= 2) ++hits;
    }
    CHECK(hits >= 8);
}

TEST_CASE("constant model forecasts its constant across any gap") {
    ArimaModel model;
    model.order = ArimaOrder{0, 0, 0};
    model.c = 5.0;
    model.alpha = VectorXd(0);
    model.beta = VectorXd(0);
    model.gamma = VectorXd(0);

    const auto history = series_of({5, 5, 5, 5, 5, 5, 5, 5, 5, 5});
    for (const int gap : {0, 3, 11}) {
        const auto fc = forecast_arima(model, history, {}, gap, 4);
        CHECK(fc.levels.start_day() == history.end_day() + gap + 1);
        for (std::size_t i = 0; i < fc.levels.size(); ++i) {
            CHECK(fc.levels[i] == doctest::Approx(5.0));
        }
        CHECK(static_cast<int>(fc.gap_levels.size()) == gap);
    }
}

TEST_CASE("AR(1) forecasts decay geometrically from the last observation") {
    ArimaModel model;
    model.order = ArimaOrder{1, 0, 0};
    model.c = 0.0;
    model.alpha = VectorXd::Constant(1, 0.5);
    model.beta = VectorXd(0);
    model.gamma = VectorXd(0);

    const auto history = series_of({1, 2, 4, 8});
    const auto fc = forecast_arima(model, history, {}, 0, 4);
    CHECK(fc.levels[0] == doctest::Approx(4.0));
    CHECK(fc.levels[1] == doctest::Approx(2.0));
    CHECK(fc.levels[2] == doctest::Approx(1.0));
    CHECK(fc.levels[3] == doctest::Approx(0.5));
}

TEST_CASE("gap forecasting equals one long recursion") {
    Rng rng(313);
    const auto y = ar1_sample(rng, 400, 0.7, 0.5, 1.0);
    const ArimaModel model = fit_arima(series_of(y), {}, ArimaOrder{1, 0, 1});

    const auto direct = forecast_arima(model, series_of(y), {}, 7, 7);
    const auto long_run = forecast_arima(model, series_of(y), {}, 0, 14);
    REQUIRE(direct.levels.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(direct.levels[i] == doctest::Approx(long_run.levels[i + 7]).epsilon(1e-12));
    }
    CHECK(direct.levels.start_day() == long_run.levels.start_day() + 7);
}

TEST_CASE("forecasts are finite and non-negative") {
    Rng rng(414);
    std::vector<double> y(static_cast<std::size_t>(200));
    for (auto& v : y) v = std::max(0.0, 2.0 + 2.0 * rng.normal());
    const ArimaModel model = fit_arima(series_of(y), {}, ArimaOrder{2, 1, 1});
    const auto fc = forecast_arima(model, series_of(y), {}, 5, 30);
    for (std::size_t i = 0; i < fc.levels.size(); ++i) {
        CHECK(std::isfinite(fc.levels[i]));
        CHECK(fc.levels[i] >= 0.0);
    }
}

TEST_CASE("forecast without exogenous coverage raises CoverageError") {
    Rng rng(515);
    const int n = 120;
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        x[static_cast<std::size_t>(t)] = rng.uniform(0.0, 2.0);
        y[static_cast<std::size_t>(t)] = 1.0 + x[static_cast<std::size_t>(t)] + 0.1 * rng.normal();
    }
    const auto ys = series_of(y);
    const auto xs = series_of(x);
    const ArimaModel model = fit_arima(ys, {xs}, ArimaOrder{1, 0, 0});
    // exog ends with the history: forecasting past it must fail
    CHECK_THROWS_AS(forecast_arima(model, ys, {xs}, 0, 3), CoverageError);
}

TEST_CASE("too-short input is rejected") {
    CHECK_THROWS_AS(fit_arima(series_of({1, 2, 3}), {}, ArimaOrder{1, 0, 0}), TooShortError);
}

TEST_CASE("model json round-trip is exact") {
    Rng rng(616);
    const auto y = ar1_sample(rng, 300, 0.4, 1.0, 1.0);
    std::vector<double> x(y.size());
    for (auto& v : x) v = rng.uniform(0.0, 1.0);
    ArimaModel model = fit_arima(series_of(y), {series_of(x)}, ArimaOrder{1, 0, 1});
    model.exog_ids = {"twitter__0day"};

    const auto j = arima_to_json(model);
    const auto text = j.dump();
    const ArimaModel back = arima_from_json(nlohmann::json::parse(text));

    CHECK(back.order.p == model.order.p);
    CHECK(back.order.d == model.order.d);
    CHECK(back.order.q == model.order.q);
    CHECK(back.c == model.c);
    CHECK(back.alpha == model.alpha);
    CHECK(back.beta == model.beta);
    CHECK(back.gamma == model.gamma);
    CHECK(back.sigma2 == model.sigma2);
    CHECK(back.loglik == model.loglik);
    CHECK(back.aic == model.aic);
    CHECK(back.n_obs == model.n_obs);
    CHECK(back.converged == model.converged);
    REQUIRE(back.scaling.size() == model.scaling.size());
    CHECK(back.scaling[0].mean == model.scaling[0].mean);
    CHECK(back.scaling[0].sd == model.scaling[0].sd);
    CHECK(back.exog_ids == model.exog_ids);
}
