#pragma once

#include "attackcast/series.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace attackcast {

/// A single predicted attack instance on a specific day.
struct Warning {
    DayIndex day;
    EventTypeName event_type;
    std::string target;
    std::string model_id;
};

/// A single observed attack instance from the ground truth.
struct GtEvent {
    DayIndex day;
    EventTypeName event_type;
    std::string target;
};

struct MatchReport {
    std::vector<std::pair<int, int>> pairs; // (warning index, event index)
    int tp = 0;
    int fp = 0;
    int fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double total_sim = 0.0;
};

/// Emits round-half-to-even(max(0, count)) warnings per forecast day.
std::vector<Warning> counts_to_warnings(const DailySeries& forecast, EventTypeName event_type,
                                        const std::string& target, const std::string& model_id);

/// Expands a daily count series into one event per counted attack.
std::vector<GtEvent> series_to_events(const DailySeries& gt, EventTypeName event_type,
                                      const std::string& target);

/// Maximum-weight mutually exclusive matching of warnings to events where
/// sim(w, g) = quality when |day_w - day_g| <= window_days, else 0.
/// Zero-similarity pairs are never matched.
MatchReport hungarian_match(std::span<const Warning> warnings, std::span<const GtEvent> events,
                            double window_days, double quality = 1.0);

struct ErrorMetrics {
    double mae = 0.0;
    double rmse = 0.0;
    double mase = 0.0;
    bool mase_defined = true; // false when the actual series is constant
};

ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted);
ErrorMetrics error_metrics(const DailySeries& actual, const DailySeries& predicted);

struct LiftResult {
    double value = 1.0;
    bool floored = false; // the epsilon floor was applied to the baseline
};

/// f1_model / max(f1_baseline, eps); keeps zero-baseline cells reportable.
LiftResult lift(double f1_model, double f1_baseline, double eps = 0.01);

} // namespace attackcast
