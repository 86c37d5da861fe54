#pragma once

#include "attackcast/series.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace attackcast {

struct LagRange {
    int lo = -30;
    int hi = 0;
};

/// "Highest correlation" read literally is the signed maximum; Absolute mode
/// also surfaces anti-correlated signals.
enum class CorrSelect { Signed, Absolute };

struct CorrelationResult {
    std::string signal_id;
    int best_lag = 0;
    double best_r = 0.0;
    std::vector<double> per_lag_r; // index i corresponds to lag lags.lo + i
    LagRange lags;
    int overlap_len = 0; // calendar overlap at the best lag
    bool degenerate = false;
};

/// Standard Pearson r. Throws DegenerateError when either input is constant.
double pearson(std::span<const double> a, std::span<const double> b);

/// Evaluates pearson(gt_t, signal_{t+lag}) over the maximal calendar overlap
/// for every lag in the range and picks the maximizer; ties go to the smaller
/// |lag|. Degenerate lags are recorded as r = 0. Throws OverlapError when a
/// candidate lag has fewer than min_overlap paired days.
CorrelationResult best_lag(const DailySeries& gt, const DailySeries& signal, LagRange lags = {},
                           CorrSelect select = CorrSelect::Signed, int min_overlap = 30);

/// One CorrelationResult per catalog signal, sorted by best_r descending
/// (stable); signals without usable overlap are flagged and ranked last.
std::vector<CorrelationResult> rank_signals(const DailySeries& gt, const SignalCatalog& catalog,
                                            LagRange lags = {},
                                            CorrSelect select = CorrSelect::Signed,
                                            int min_overlap = 30);

/// Moves the signal so that its lag-advanced value lands on the ground-truth
/// day it predicts: align(s, lag) has value s_{t+lag} on day t.
DailySeries align(const DailySeries& signal, int lag);

void write_correlations_csv(const std::filesystem::path& path,
                            std::span<const CorrelationResult> results,
                            const SignalCatalog& catalog);
void write_per_lag_csv(const std::filesystem::path& path,
                       std::span<const CorrelationResult> results);

} // namespace attackcast
