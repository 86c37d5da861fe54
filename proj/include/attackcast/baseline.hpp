#pragma once

#include "attackcast/series.hpp"

#include <cstdint>

namespace attackcast {

/// Trailing-mean Poisson predictor: rate lambda is the mean event count over
/// the last W days of history.
struct BaselineModel {
    int window = 30;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    bool short_window = false; // history was shorter than W
};

struct RateEstimate {
    double rate;
    bool short_window;
};

/// Mean of the trailing min(W, available) days.
RateEstimate baseline_rate(const DailySeries& history, int window);

BaselineModel fit_baseline(const DailySeries& history, int window, std::uint64_t seed = 0);

enum class BaselineMode { Point, Sample };

/// Point mode emits round-half-to-even(lambda) every day; Sample mode draws
/// seeded Poisson(lambda) variates.
DailySeries baseline_forecast(const BaselineModel& model, DayIndex start_day, int horizon,
                              BaselineMode mode);

/// Round half to even, then clamp below at zero.
double round_half_even(double v);

} // namespace attackcast
