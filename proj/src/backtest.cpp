#include "attackcast/backtest.hpp"

#include "attackcast/baseline.hpp"
#include "attackcast/errors.hpp"
#include "attackcast/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <thread>

namespace attackcast {

namespace {

std::vector<std::pair<DayIndex, DayIndex>> make_periods(Cadence cadence, DayIndex lo,
                                                        DayIndex hi) {
    std::vector<std::pair<DayIndex, DayIndex>> out;
    if (cadence == Cadence::Monthly) {
        DayIndex start = month_start(lo) == lo ? lo : add_months(lo, 1);
        while (true) {
            const DayIndex end = add_months(start, 1) - 1;
            if (end > hi) break;
            out.emplace_back(start, end);
            start = end + 1;
        }
    } else {
        DayIndex start = iso_week_start(lo);
        if (start < lo) start += 7;
        while (start + 6 <= hi) {
            out.emplace_back(start, start + 6);
            start += 7;
        }
    }
    return out;
}

std::string period_label(Cadence cadence, DayIndex start) {
    const Ymd ymd = ymd_from_day(start);
    char buf[24];
    if (cadence == Cadence::Monthly) {
        std::snprintf(buf, sizeof(buf), "%04d-%02u", ymd.year, ymd.month);
    } else {
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", ymd.year, ymd.month, ymd.day);
    }
    return buf;
}

DailySeries extend_by_persistence(const DailySeries& s, DayIndex through) {
    if (through <= s.end_day()) return s;
    std::vector<double> vals(s.values().begin(), s.values().end());
    const double last = vals.back();
    for (DayIndex d = s.end_day() + 1; d <= through; ++d) vals.push_back(last);
    return DailySeries(s.start_day(), std::move(vals), s.kind());
}

struct Trained {
    std::optional<BaselineModel> baseline;
    std::optional<ArimaModel> arima;
    std::optional<RnnModel> rnn;
    std::optional<DailySeries> train_slice;
    std::vector<int> lags; // per signal, from correlation on the training window
};

std::string joined_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ',';
        out += id;
    }
    return out.empty() ? std::string(kEndogenousId) : out;
}

class CellRunner {
public:
    CellRunner(const BacktestPlan& plan, const HarnessConfig& config)
        : plan_(plan), config_(config) {}

    BacktestReport run() {
        if (plan_.gt.kind() != SeriesKind::EventCount) {
            throw DataError("run_backtest: ground truth must be an event-count series");
        }
        if (plan_.eval_start_day > plan_.eval_end_day) {
            throw ConfigError("run_backtest: evaluation span is empty");
        }
        if (!plan_.gt.covers(plan_.eval_start_day) || !plan_.gt.covers(plan_.eval_end_day)) {
            throw CoverageError("run_backtest: evaluation span outside ground-truth coverage");
        }
        const auto periods =
            make_periods(plan_.cadence, plan_.eval_start_day, plan_.eval_end_day);
        if (periods.empty()) {
            throw CoverageError("run_backtest: evaluation span contains no full " +
                                to_string(plan_.cadence) + " period");
        }

        BacktestReport report;
        for (const auto& [start, end] : periods) {
            report.per_period.push_back(run_period(start, end));
        }
        pool(report);
        return report;
    }

private:
    const BacktestPlan& plan_;
    const HarnessConfig& config_;
    std::map<DayIndex, Trained> memo_;

    DayIndex gt_cutoff_for(DayIndex period_start) const {
        return plan_.cadence == Cadence::Monthly ? period_start
                                                 : add_months(period_start, -1);
    }

    const Trained& trained_for(DayIndex gt_cutoff, DayIndex period_start) {
        const auto it = memo_.find(gt_cutoff);
        if (it != memo_.end()) return it->second;

        Trained trained;
        DailySeries train_gt = plan_.gt.before(gt_cutoff);
        if (static_cast<int>(train_gt.size()) < config_.min_train_days) {
            throw TooShortError("training history of " + std::to_string(train_gt.size()) +
                                " days is below the " + std::to_string(config_.min_train_days) +
                                "-day minimum");
        }

        switch (plan_.model_kind) {
            case ModelKind::BaselineArima: {
                const int window = plan_.cadence == Cadence::Monthly
                                       ? days_in_month(period_start)
                                       : 7;
                trained.baseline = fit_baseline(train_gt, window,
                                                derive_seed(config_.master_seed, "baseline"));
                trained.train_slice = std::move(train_gt);
                break;
            }
            case ModelKind::Arima: {
                trained.arima = grid_search_arima(train_gt, {}, config_.arima_grid,
                                                  config_.arima_options)
                                    .model;
                trained.train_slice = std::move(train_gt);
                break;
            }
            case ModelKind::Arimax:
            case ModelKind::Gru:
            case ModelKind::Lstm: {
                std::vector<DailySeries> aligned;
                DayIndex window_start = train_gt.start_day();
                for (const auto& id : plan_.signal_ids) {
                    const DailySeries sig = plan_.catalog.find(id).series.before(gt_cutoff);
                    const CorrelationResult corr =
                        best_lag(train_gt, sig, config_.lags, config_.corr_select,
                                 config_.min_overlap);
                    const int lag = corr.degenerate ? 0 : corr.best_lag;
                    trained.lags.push_back(lag);
                    aligned.push_back(align(sig, lag));
                    window_start = std::max(window_start, aligned.back().start_day());
                }
                if (gt_cutoff - window_start < config_.min_train_days) {
                    throw TooShortError("aligned training window shorter than the minimum");
                }
                const DailySeries train_slice =
                    train_gt.slice_days(window_start, gt_cutoff - 1);

                if (plan_.model_kind == ModelKind::Arimax) {
                    ArimaModel model = grid_search_arima(train_slice, aligned,
                                                         plan_.signal_ids.empty()
                                                             ? config_.arima_grid
                                                             : config_.arimax_grid,
                                                         config_.arima_options)
                                           .model;
                    model.exog_ids = plan_.signal_ids;
                    trained.arima = std::move(model);
                } else {
                    RnnConfig rnn_cfg = config_.rnn;
                    rnn_cfg.cell =
                        plan_.model_kind == ModelKind::Gru ? CellKind::GRU : CellKind::LSTM;
                    rnn_cfg.seed = derive_seed(config_.master_seed,
                                               to_string(plan_.model_kind),
                                               joined_ids(plan_.signal_ids));
                    RnnModel model = train_rnn(rnn_cfg, train_slice, aligned);
                    model.exog_ids = plan_.signal_ids;
                    trained.rnn = std::move(model);
                }
                trained.train_slice = train_slice;
                break;
            }
        }
        return memo_.emplace(gt_cutoff, std::move(trained)).first->second;
    }

    PeriodResult run_period(DayIndex start, DayIndex end) {
        PeriodResult period;
        period.label = period_label(plan_.cadence, start);
        period.period_start = start;
        period.period_end = end;
        period.horizon = static_cast<int>(end - start + 1);
        const DayIndex gt_cutoff = gt_cutoff_for(start);
        period.train_cutoff = gt_cutoff;
        period.gap_len = static_cast<int>(start - gt_cutoff);

        try {
            const Trained& trained = trained_for(gt_cutoff, start);
            const DailySeries& train_slice = *trained.train_slice;

            DailySeries forecast(start, std::vector<double>(1, 0.0), SeriesKind::SignalValue);
            if (trained.baseline) {
                forecast = baseline_forecast(*trained.baseline, start, period.horizon,
                                             BaselineMode::Point);
            } else {
                // forecast-time signals: truncated at the period start, aligned
                // by the training lag, persistence-extended over the horizon
                std::vector<DailySeries> exog;
                for (std::size_t i = 0; i < plan_.signal_ids.size(); ++i) {
                    const DailySeries raw =
                        plan_.catalog.find(plan_.signal_ids[i]).series.before(start);
                    DailySeries shifted = align(raw, trained.lags[i]);
                    const int extension = static_cast<int>(end - shifted.end_day());
                    period.exog_extension_days =
                        std::max(period.exog_extension_days, std::max(extension, 0));
                    exog.push_back(extend_by_persistence(shifted, end));
                }
                if (!trained.lags.empty()) {
                    period.align_lag = trained.lags.front();
                }
                if (trained.arima) {
                    forecast = forecast_arima(*trained.arima, train_slice, exog,
                                              period.gap_len, period.horizon)
                                   .levels;
                } else {
                    forecast = predict_rnn(*trained.rnn, train_slice, exog, period.gap_len,
                                           period.horizon);
                }
            }

            const DailySeries actual = plan_.gt.slice_days(start, end);
            period.forecast.assign(forecast.values().begin(), forecast.values().end());
            for (const double v : period.forecast) period.forecast_total += v;
            for (const double v : actual.values()) period.actual_total += v;

            const auto warnings = counts_to_warnings(forecast, plan_.event_type, plan_.target,
                                                     to_string(plan_.model_kind));
            const auto events = series_to_events(actual, plan_.event_type, plan_.target);
            period.match =
                hungarian_match(warnings, events,
                                event_type(plan_.event_type).match_window_days, config_.quality);
            period.errors = error_metrics(actual.values(), period.forecast);
        } catch (const Error& e) {
            period.failed = true;
            period.error = e.what();
        }
        return period;
    }

    void pool(BacktestReport& report) const {
        std::vector<double> actual_all, forecast_all;
        double f1_sum = 0.0;
        int scored = 0;
        for (const auto& p : report.per_period) {
            if (p.failed) continue;
            report.tp += p.match.tp;
            report.fp += p.match.fp;
            report.fn += p.match.fn;
            f1_sum += p.match.f1;
            ++scored;
            const DailySeries actual = plan_.gt.slice_days(p.period_start, p.period_end);
            actual_all.insert(actual_all.end(), actual.values().begin(), actual.values().end());
            forecast_all.insert(forecast_all.end(), p.forecast.begin(), p.forecast.end());
        }
        report.precision =
            report.tp + report.fp > 0
                ? static_cast<double>(report.tp) / static_cast<double>(report.tp + report.fp)
                : 0.0;
        report.recall =
            report.tp + report.fn > 0
                ? static_cast<double>(report.tp) / static_cast<double>(report.tp + report.fn)
                : 0.0;
        report.aggregate_f1 =
            report.precision + report.recall > 0.0
                ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                : 0.0;
        report.mean_period_f1 = scored > 0 ? f1_sum / static_cast<double>(scored) : 0.0;
        if (actual_all.size() >= 2) {
            report.aggregate_errors = error_metrics(actual_all, forecast_all);
        } else {
            report.aggregate_errors.mase_defined = false;
            report.aggregate_errors.mase = std::numeric_limits<double>::quiet_NaN();
        }
    }
};

BacktestReport run_cell(const BacktestPlan& plan, const HarnessConfig& config) {
    return CellRunner(plan, config).run();
}

} // namespace

std::string to_string(Cadence cadence) {
    return cadence == Cadence::Monthly ? "monthly" : "weekly";
}

Cadence parse_cadence(const std::string& text) {
    if (text == "monthly") return Cadence::Monthly;
    if (text == "weekly") return Cadence::Weekly;
    throw ConfigError("unknown cadence '" + text + "'");
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::BaselineArima: return "baseline_arima";
        case ModelKind::Arima: return "arima";
        case ModelKind::Arimax: return "arimax";
        case ModelKind::Gru: return "gru";
        case ModelKind::Lstm: return "lstm";
    }
    throw ConfigError("unknown model kind");
}

ModelKind parse_model_kind(const std::string& text) {
    if (text == "baseline_arima" || text == "baseline") return ModelKind::BaselineArima;
    if (text == "arima") return ModelKind::Arima;
    if (text == "arimax") return ModelKind::Arimax;
    if (text == "gru") return ModelKind::Gru;
    if (text == "lstm") return ModelKind::Lstm;
    throw ConfigError("unknown model kind '" + text + "'");
}

bool model_uses_signals(ModelKind kind) {
    return kind == ModelKind::Arimax || kind == ModelKind::Gru || kind == ModelKind::Lstm;
}

BacktestReport run_backtest(const BacktestPlan& plan, const HarnessConfig& config) {
    BacktestReport report = run_cell(plan, config);
    if (plan.model_kind == ModelKind::BaselineArima) {
        report.baseline_f1 = report.aggregate_f1;
        report.lift_vs_baseline = 1.0;
        report.lift_floored = false;
        return report;
    }
    BacktestPlan baseline_plan = plan;
    baseline_plan.model_kind = ModelKind::BaselineArima;
    baseline_plan.signal_ids.clear();
    const BacktestReport baseline = run_cell(baseline_plan, config);
    report.baseline_f1 = baseline.aggregate_f1;
    const LiftResult l = lift(report.aggregate_f1, baseline.aggregate_f1, config.lift_eps);
    report.lift_vs_baseline = l.value;
    report.lift_floored = l.floored;
    return report;
}

SweepTable sweep(const DailySeries& gt, const SignalCatalog& catalog, EventTypeName event_type,
                 const std::string& target, const std::vector<ModelKind>& models, Cadence cadence,
                 DayIndex eval_start_day, DayIndex eval_end_day, const HarnessConfig& config) {
    SweepTable table;
    table.cadence = cadence;
    table.event_type = event_type;
    table.target = target;

    std::vector<std::pair<ModelKind, std::string>> cells;
    cells.emplace_back(ModelKind::BaselineArima, kBaselineId);
    std::vector<ModelKind> seen;
    for (const ModelKind model : models) {
        if (model == ModelKind::BaselineArima ||
            std::find(seen.begin(), seen.end(), model) != seen.end()) {
            continue;
        }
        seen.push_back(model);
        cells.emplace_back(model, kEndogenousId);
        if (model_uses_signals(model)) {
            for (const auto& entry : catalog.entries()) {
                cells.emplace_back(model, entry.signal_id);
            }
        }
    }

    const auto plan_for = [&](const std::pair<ModelKind, std::string>& cell) {
        BacktestPlan plan{cadence, eval_start_day, eval_end_day, gt,
                          catalog, event_type,    target,        cell.first,
                          {}};
        if (cell.second != kEndogenousId && cell.second != kBaselineId) {
            plan.signal_ids.push_back(cell.second);
        }
        return plan;
    };

    std::vector<BacktestReport> reports(cells.size());
    std::vector<std::string> cell_errors(cells.size());
    std::atomic<std::size_t> next{0};
    const int jobs = std::max(1, config.jobs);
    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            try {
                reports[i] = run_cell(plan_for(cells[i]), config);
            } catch (const std::exception& e) {
                cell_errors[i] = e.what();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    table.baseline_f1 = reports[0].aggregate_f1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        SweepRow row;
        row.model = cells[i].first;
        row.signal_id = cells[i].second;
        if (catalog.contains(row.signal_id)) {
            const auto& entry = catalog.find(row.signal_id);
            row.source = to_string(entry.source);
            row.keyword = entry.keyword;
        }
        row.report = std::move(reports[i]);
        if (!cell_errors[i].empty()) {
            PeriodResult failure;
            failure.failed = true;
            failure.error = cell_errors[i];
            row.report.per_period.push_back(std::move(failure));
        }
        if (row.model == ModelKind::BaselineArima) {
            row.lift = 1.0;
            row.report.baseline_f1 = table.baseline_f1;
            row.report.lift_vs_baseline = 1.0;
        } else {
            const LiftResult l =
                lift(row.report.aggregate_f1, table.baseline_f1, config.lift_eps);
            row.lift = l.value;
            row.lift_floored = l.floored;
            row.report.baseline_f1 = table.baseline_f1;
            row.report.lift_vs_baseline = l.value;
            row.report.lift_floored = l.floored;
        }
        table.rows.push_back(std::move(row));
    }

    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) {
                         if (a.lift != b.lift) return a.lift > b.lift;
                         const std::string am = to_string(a.model), bm = to_string(b.model);
                         if (am != bm) return am < bm;
                         return a.signal_id < b.signal_id;
                     });
    return table;
}

std::vector<BestSignalRow> best_signals(std::span<const SweepTable> tables) {
    std::vector<BestSignalRow> rows;
    for (const auto& table : tables) {
        std::vector<ModelKind> models;
        for (const auto& row : table.rows) {
            if (row.model != ModelKind::BaselineArima &&
                std::find(models.begin(), models.end(), row.model) == models.end()) {
                models.push_back(row.model);
            }
        }
        for (const ModelKind model : models) {
            const SweepRow* best = nullptr;
            for (const auto& row : table.rows) {
                if (row.model != model) continue;
                if (best == nullptr || row.report.aggregate_f1 > best->report.aggregate_f1 ||
                    (row.report.aggregate_f1 == best->report.aggregate_f1 &&
                     row.signal_id < best->signal_id)) {
                    best = &row;
                }
            }
            BestSignalRow out;
            out.model = to_string(model);
            out.event_type = to_string(table.event_type);
            out.org = table.target;
            if (best == nullptr || best->report.aggregate_f1 <= table.baseline_f1) {
                out.signal = "baseline";
                out.f1 = table.baseline_f1;
            } else {
                out.signal = best->signal_id;
                out.f1 = best->report.aggregate_f1;
            }
            rows.push_back(std::move(out));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const BestSignalRow& a, const BestSignalRow& b) {
        if (a.model != b.model) return a.model < b.model;
        if (a.event_type != b.event_type) return a.event_type < b.event_type;
        return a.org < b.org;
    });
    return rows;
}

} // namespace attackcast
