#include "attackcast/baseline.hpp"

#include "attackcast/errors.hpp"
#include "attackcast/rng.hpp"

#include <cmath>
#include <numeric>

namespace attackcast {

double round_half_even(double v) {
    // std::remainder(v, 1) is v minus the nearest integer, ties to even.
    const double rounded = v - std::remainder(v, 1.0);
    return rounded < 0.0 ? 0.0 : rounded;
}

RateEstimate baseline_rate(const DailySeries& history, int window) {
    if (history.size() == 0) {
        throw EmptyError("baseline_rate: empty history");
    }
    if (window < 1) {
        throw LengthError("baseline_rate: window must be >= 1");
    }
    const auto available = static_cast<int>(history.size());
    const int used = std::min(window, available);
    const auto vals = history.values();
    const double sum = std::accumulate(vals.end() - used, vals.end(), 0.0);
    return RateEstimate{sum / used, used < window};
}

BaselineModel fit_baseline(const DailySeries& history, int window, std::uint64_t seed) {
    const RateEstimate est = baseline_rate(history, window);
    return BaselineModel{window, est.rate, seed, est.short_window};
}

DailySeries baseline_forecast(const BaselineModel& model, DayIndex start_day, int horizon,
                              BaselineMode mode) {
    if (horizon < 1) {
        throw LengthError("baseline_forecast: horizon must be >= 1");
    }
    std::vector<double> vals(static_cast<std::size_t>(horizon));
    if (mode == BaselineMode::Point) {
        const double point = round_half_even(model.lambda);
        for (double& v : vals) v = point;
    } else {
        Rng rng(model.seed);
        for (double& v : vals) v = static_cast<double>(rng.poisson(model.lambda));
    }
    return DailySeries(start_day, std::move(vals), SeriesKind::EventCount);
}

} // namespace attackcast
