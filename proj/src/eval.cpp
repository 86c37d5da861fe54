#include "attackcast/eval.hpp"

#include "attackcast/baseline.hpp"
#include "attackcast/errors.hpp"
#include "attackcast/hungarian.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace attackcast {

std::vector<Warning> counts_to_warnings(const DailySeries& forecast, EventTypeName event_type,
                                        const std::string& target, const std::string& model_id) {
    std::vector<Warning> warnings;
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        const auto n = static_cast<long>(round_half_even(std::max(forecast[i], 0.0)));
        const DayIndex day = forecast.start_day() + static_cast<DayIndex>(i);
        for (long w = 0; w < n; ++w) {
            warnings.push_back(Warning{day, event_type, target, model_id});
        }
    }
    return warnings;
}

std::vector<GtEvent> series_to_events(const DailySeries& gt, EventTypeName event_type,
                                      const std::string& target) {
    std::vector<GtEvent> events;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        const auto n = static_cast<long>(gt[i]);
        const DayIndex day = gt.start_day() + static_cast<DayIndex>(i);
        for (long e = 0; e < n; ++e) {
            events.push_back(GtEvent{day, event_type, target});
        }
    }
    return events;
}

MatchReport hungarian_match(std::span<const Warning> warnings, std::span<const GtEvent> events,
                            double window_days, double quality) {
    for (const auto& w : warnings) {
        if (w.event_type != warnings.front().event_type || w.target != warnings.front().target) {
            throw MixedTypeError("hungarian_match: warnings mix event types or targets");
        }
    }
    for (const auto& g : events) {
        if (g.event_type != events.front().event_type || g.target != events.front().target) {
            throw MixedTypeError("hungarian_match: events mix event types or targets");
        }
    }
    if (!warnings.empty() && !events.empty() &&
        (warnings.front().event_type != events.front().event_type ||
         warnings.front().target != events.front().target)) {
        throw MixedTypeError("hungarian_match: warnings and events disagree on type or target");
    }

    MatchReport report;
    const int n_w = static_cast<int>(warnings.size());
    const int n_g = static_cast<int>(events.size());
    if (n_w > 0 && n_g > 0) {
        Eigen::MatrixXd sim(n_w, n_g);
        for (int i = 0; i < n_w; ++i) {
            for (int j = 0; j < n_g; ++j) {
                const auto dist = std::llabs(warnings[static_cast<std::size_t>(i)].day -
                                             events[static_cast<std::size_t>(j)].day);
                sim(i, j) = static_cast<double>(dist) <= window_days ? quality : 0.0;
            }
        }
        const std::vector<int> assign = hungarian_max_assignment(sim);
        for (int i = 0; i < n_w; ++i) {
            const int j = assign[static_cast<std::size_t>(i)];
            if (j >= 0 && sim(i, j) > 0.0) {
                report.pairs.emplace_back(i, j);
                report.total_sim += sim(i, j);
            }
        }
    }
    report.tp = static_cast<int>(report.pairs.size());
    report.fp = n_w - report.tp;
    report.fn = n_g - report.tp;
    report.precision = n_w > 0 ? static_cast<double>(report.tp) / n_w : 0.0;
    report.recall = n_g > 0 ? static_cast<double>(report.tp) / n_g : 0.0;
    report.f1 = (report.precision + report.recall) > 0.0
                    ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                    : 0.0;
    return report;
}

ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw LengthError("error_metrics: length mismatch");
    }
    const auto n = actual.size();
    if (n < 2) {
        throw LengthError("error_metrics: need at least 2 observations");
    }
    double abs_sum = 0.0, sq_sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double e = actual[t] - predicted[t];
        abs_sum += std::abs(e);
        sq_sum += e * e;
    }
    ErrorMetrics metrics;
    metrics.mae = abs_sum / static_cast<double>(n);
    metrics.rmse = std::sqrt(sq_sum / static_cast<double>(n));
    double naive = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        naive += std::abs(actual[t] - actual[t - 1]);
    }
    naive /= static_cast<double>(n - 1);
    if (naive > 0.0) {
        metrics.mase = metrics.mae / naive;
    } else {
        metrics.mase = std::numeric_limits<double>::quiet_NaN();
        metrics.mase_defined = false;
    }
    return metrics;
}

ErrorMetrics error_metrics(const DailySeries& actual, const DailySeries& predicted) {
    return error_metrics(actual.values(), predicted.values());
}

LiftResult lift(double f1_model, double f1_baseline, double eps) {
    LiftResult result;
    result.floored = f1_baseline < eps;
    result.value = f1_model / std::max(f1_baseline, eps);
    return result;
}

} // namespace attackcast
