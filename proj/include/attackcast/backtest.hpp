#pragma once

#include "attackcast/arima.hpp"
#include "attackcast/correlate.hpp"
#include "attackcast/eval.hpp"
#include "attackcast/rnn.hpp"
#include "attackcast/series.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace attackcast {

enum class Cadence { Monthly, Weekly };
std::string to_string(Cadence cadence);
Cadence parse_cadence(const std::string& text);

enum class ModelKind { BaselineArima, Arima, Arimax, Gru, Lstm };
std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);
bool model_uses_signals(ModelKind kind);

inline constexpr const char* kEndogenousId = "__endogenous__";
inline constexpr const char* kBaselineId = "__baseline__";

struct HarnessConfig {
    ArimaGrid arima_grid{5, 2, 5};
    ArimaGrid arimax_grid{7, 2, 5}; // honors the 7-day maximum AR lag with signals
    ArimaFitOptions arima_options;
    RnnConfig rnn; // template; cell, seed and input_dim are set per cell
    LagRange lags{-30, 0};
    CorrSelect corr_select = CorrSelect::Signed;
    int min_overlap = 30;
    int min_train_days = 90;
    std::uint64_t master_seed = 0;
    int jobs = 1;
    double lift_eps = 0.01;
    double quality = 1.0;
};

struct BacktestPlan {
    Cadence cadence = Cadence::Monthly;
    DayIndex eval_start_day = 0;
    DayIndex eval_end_day = 0;
    DailySeries gt;
    SignalCatalog catalog;
    EventTypeName event_type = EventTypeName::EndpointMalware;
    std::string target = "OrgA";
    ModelKind model_kind = ModelKind::Arima;
    std::vector<std::string> signal_ids; // empty = endogenous only
};

struct PeriodResult {
    std::string label;
    DayIndex period_start = 0;
    DayIndex period_end = 0;
    DayIndex train_cutoff = 0; // first day excluded from training GT
    int gap_len = 0;
    int horizon = 0;
    std::vector<double> forecast;
    double forecast_total = 0.0;
    double actual_total = 0.0;
    MatchReport match;
    ErrorMetrics errors;
    int align_lag = 0;
    int exog_extension_days = 0;
    bool failed = false;
    std::string error;
};

struct BacktestReport {
    std::vector<PeriodResult> per_period;
    int tp = 0, fp = 0, fn = 0; // pooled over periods
    double precision = 0.0, recall = 0.0;
    double aggregate_f1 = 0.0;  // micro-average from pooled counts
    double mean_period_f1 = 0.0;
    ErrorMetrics aggregate_errors;
    double baseline_f1 = 0.0;
    double lift_vs_baseline = 1.0;
    bool lift_floored = false;
};

/// Rolling backtest under the cadence's information set: monthly periods train
/// on GT and signals through the previous month's end; weekly periods train on
/// GT up to the previous month's start with signals through the previous week.
/// Lift is measured against a baseline run of the identical plan.
BacktestReport run_backtest(const BacktestPlan& plan, const HarnessConfig& config);

struct SweepRow {
    ModelKind model = ModelKind::BaselineArima;
    std::string signal_id;
    std::string source;
    std::string keyword;
    double lift = 1.0;
    bool lift_floored = false;
    BacktestReport report;
};

struct SweepTable {
    Cadence cadence = Cadence::Monthly;
    EventTypeName event_type = EventTypeName::EndpointMalware;
    std::string target;
    double baseline_f1 = 0.0;
    std::vector<SweepRow> rows; // sorted by lift descending
};

/// Runs every (signal, model) cell plus the endogenous and baseline cells;
/// deterministic given data and master seed, independent of the job count.
SweepTable sweep(const DailySeries& gt, const SignalCatalog& catalog, EventTypeName event_type,
                 const std::string& target, const std::vector<ModelKind>& models, Cadence cadence,
                 DayIndex eval_start_day, DayIndex eval_end_day, const HarnessConfig& config);

struct BestSignalRow {
    std::string model;
    std::string event_type;
    std::string org;
    std::string signal; // "baseline" when nothing beats the baseline
    double f1 = 0.0;
};

/// Per (model, event type, org): highest pooled F1 across that model's cells,
/// falling back to the baseline row when no signal beats it.
std::vector<BestSignalRow> best_signals(std::span<const SweepTable> tables);

} // namespace attackcast
