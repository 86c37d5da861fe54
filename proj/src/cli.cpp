#include "attackcast/cli.hpp"

#include "attackcast/baseline.hpp"
#include "attackcast/errors.hpp"
#include "attackcast/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

namespace attackcast {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_manifest(const RunConfig& config, const std::string& command,
                    const std::vector<std::string>& outputs, json extra = json::object()) {
    const json cfg = config_to_json(config);
    json manifest;
    manifest["command"] = command;
    manifest["config"] = cfg;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg.dump())));
    manifest["config_hash"] = hash;
    manifest["master_seed"] = config.harness.master_seed;
    manifest["outputs"] = outputs;
    if (!extra.empty()) manifest["run"] = std::move(extra);
    std::ofstream out(config.output_dir / "run_manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
}

LoadReport load_gt(const RunConfig& config) {
    if (config.gt_path.empty()) {
        throw ConfigError("no ground-truth file configured (gt)");
    }
    return load_csv(config.gt_path, CsvSchema::GroundTruth);
}

SignalCatalog load_signals(const RunConfig& config, bool required) {
    if (config.signals_dir.empty()) {
        if (required) throw ConfigError("no signal directory configured (signals_dir)");
        return SignalCatalog{};
    }
    return load_catalog(config.signals_dir).catalog;
}

std::pair<DayIndex, DayIndex> eval_span(const RunConfig& config, const DailySeries& gt) {
    DayIndex start = config.eval_start != 0
                         ? config.eval_start
                         : gt.start_day() + config.harness.min_train_days;
    DayIndex end = config.eval_end != 0 ? config.eval_end : gt.end_day();
    return {start, end};
}

// forecast-time signal: all data before the period, aligned by the lag
// discovered on the training window, persistence-extended over the horizon
struct PreparedSignal {
    DailySeries series;
    int lag;
};

PreparedSignal prepare_signal(const DailySeries& train_gt, const DailySeries& raw,
                              DayIndex period_start, DayIndex period_end,
                              const HarnessConfig& harness) {
    const DailySeries available = raw.before(period_start);
    const CorrelationResult corr = best_lag(train_gt, available, harness.lags,
                                            harness.corr_select, harness.min_overlap);
    const int lag = corr.degenerate ? 0 : corr.best_lag;
    DailySeries aligned = align(available, lag);
    if (aligned.end_day() < period_end) {
        std::vector<double> vals(aligned.values().begin(), aligned.values().end());
        const double last = vals.back();
        for (DayIndex d = aligned.end_day() + 1; d <= period_end; ++d) vals.push_back(last);
        aligned = DailySeries(aligned.start_day(), std::move(vals), aligned.kind());
    }
    return PreparedSignal{std::move(aligned), lag};
}

int run_guarded(const std::function<void()>& load_phase,
                const std::function<void()>& compute_phase) {
    try {
        try {
            load_phase();
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return kExitConfigError;
        } catch (const Error& e) {
            std::cerr << "data error: " << e.what() << '\n';
            return kExitDataError;
        }
        compute_phase();
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return kExitModelError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitModelError;
    }
}

} // namespace

RunConfig config_from_json(const json& j) {
    RunConfig config;
    if (j.contains("version") && j.at("version").get<int>() != 1) {
        throw ConfigError("unsupported config version");
    }
    if (j.contains("gt")) config.gt_path = j.at("gt").get<std::string>();
    if (j.contains("signals_dir")) config.signals_dir = j.at("signals_dir").get<std::string>();
    if (j.contains("event_type")) config.event_type = parse_event_type(j.at("event_type"));
    if (j.contains("target")) config.target = j.at("target").get<std::string>();
    if (j.contains("cadence")) config.cadence = parse_cadence(j.at("cadence"));
    if (j.contains("eval_start")) config.eval_start = parse_date(j.at("eval_start"));
    if (j.contains("eval_end")) config.eval_end = parse_date(j.at("eval_end"));
    if (j.contains("models")) {
        config.models.clear();
        for (const auto& m : j.at("models")) config.models.push_back(parse_model_kind(m));
    }
    if (j.contains("model")) config.model = parse_model_kind(j.at("model"));
    if (j.contains("signal_ids")) {
        config.signal_ids = j.at("signal_ids").get<std::vector<std::string>>();
    }
    if (j.contains("order")) {
        const auto& o = j.at("order");
        config.fixed_order = ArimaOrder{o.at(0).get<int>(), o.at(1).get<int>(), o.at(2).get<int>()};
    }
    if (j.contains("top")) config.top = j.at("top").get<int>();
    if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();

    auto& h = config.harness;
    if (j.contains("seed")) h.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) h.jobs = j.at("jobs").get<int>();
    if (j.contains("min_train_days")) h.min_train_days = j.at("min_train_days").get<int>();
    if (j.contains("min_overlap")) h.min_overlap = j.at("min_overlap").get<int>();
    if (j.contains("absolute_correlation") && j.at("absolute_correlation").get<bool>()) {
        h.corr_select = CorrSelect::Absolute;
    }
    if (j.contains("lags")) {
        h.lags = LagRange{j.at("lags").at("lo").get<int>(), j.at("lags").at("hi").get<int>()};
    }
    const auto read_grid = [&j](const char* key, ArimaGrid& grid) {
        if (!j.contains(key)) return;
        const auto& g = j.at(key);
        if (g.contains("p_max")) grid.p_max = g.at("p_max").get<int>();
        if (g.contains("d_max")) grid.d_max = g.at("d_max").get<int>();
        if (g.contains("q_max")) grid.q_max = g.at("q_max").get<int>();
    };
    read_grid("arima_grid", h.arima_grid);
    read_grid("arimax_grid", h.arimax_grid);
    if (j.contains("rnn")) {
        const auto& r = j.at("rnn");
        if (r.contains("hidden_dim")) h.rnn.hidden_dim = r.at("hidden_dim").get<int>();
        if (r.contains("lookback")) h.rnn.lookback = r.at("lookback").get<int>();
        if (r.contains("epochs")) h.rnn.epochs = r.at("epochs").get<int>();
        if (r.contains("learning_rate")) h.rnn.learning_rate = r.at("learning_rate").get<double>();
        if (r.contains("validation_fraction")) {
            h.rnn.validation_fraction = r.at("validation_fraction").get<double>();
        }
        if (r.contains("patience")) h.rnn.patience = r.at("patience").get<int>();
    }
    if (j.contains("synth")) {
        const auto& s = j.at("synth");
        if (s.contains("seed")) config.synth.seed = s.at("seed").get<std::uint64_t>();
        if (s.contains("days")) config.synth.days = s.at("days").get<int>();
        if (s.contains("base_rate")) config.synth.base_rate = s.at("base_rate").get<double>();
        if (s.contains("beta")) config.synth.beta = s.at("beta").get<double>();
        if (s.contains("lag")) config.synth.lag = s.at("lag").get<int>();
        if (s.contains("noise_signals")) {
            config.synth.n_noise_signals = s.at("noise_signals").get<int>();
        }
        if (s.contains("rho")) config.synth.rho = s.at("rho").get<double>();
        if (s.contains("start")) config.synth.start_day = parse_date(s.at("start"));
    }
    return config;
}

json config_to_json(const RunConfig& config) {
    json j;
    j["version"] = 1;
    j["gt"] = config.gt_path.string();
    j["signals_dir"] = config.signals_dir.string();
    j["event_type"] = to_string(config.event_type);
    j["target"] = config.target;
    j["cadence"] = to_string(config.cadence);
    if (config.eval_start != 0) j["eval_start"] = format_date(config.eval_start);
    if (config.eval_end != 0) j["eval_end"] = format_date(config.eval_end);
    json models = json::array();
    for (const ModelKind m : config.models) models.push_back(to_string(m));
    j["models"] = std::move(models);
    j["model"] = to_string(config.model);
    j["signal_ids"] = config.signal_ids;
    if (config.fixed_order) {
        j["order"] = {config.fixed_order->p, config.fixed_order->d, config.fixed_order->q};
    }
    j["top"] = config.top;
    j["output_dir"] = config.output_dir.string();
    j["seed"] = config.harness.master_seed;
    j["jobs"] = config.harness.jobs;
    j["min_train_days"] = config.harness.min_train_days;
    j["min_overlap"] = config.harness.min_overlap;
    j["absolute_correlation"] = config.harness.corr_select == CorrSelect::Absolute;
    j["lags"] = {{"lo", config.harness.lags.lo}, {"hi", config.harness.lags.hi}};
    j["arima_grid"] = {{"p_max", config.harness.arima_grid.p_max},
                       {"d_max", config.harness.arima_grid.d_max},
                       {"q_max", config.harness.arima_grid.q_max}};
    j["arimax_grid"] = {{"p_max", config.harness.arimax_grid.p_max},
                        {"d_max", config.harness.arimax_grid.d_max},
                        {"q_max", config.harness.arimax_grid.q_max}};
    j["rnn"] = {{"hidden_dim", config.harness.rnn.hidden_dim},
                {"lookback", config.harness.rnn.lookback},
                {"epochs", config.harness.rnn.epochs},
                {"learning_rate", config.harness.rnn.learning_rate},
                {"validation_fraction", config.harness.rnn.validation_fraction},
                {"patience", config.harness.rnn.patience}};
    j["synth"] = {{"seed", config.synth.seed},
                  {"days", config.synth.days},
                  {"base_rate", config.synth.base_rate},
                  {"beta", config.synth.beta},
                  {"lag", config.synth.lag},
                  {"noise_signals", config.synth.n_noise_signals},
                  {"rho", config.synth.rho},
                  {"start", format_date(config.synth.start_day)}};
    return j;
}

int cmd_synth(const RunConfig& config) {
    return run_guarded(
        [] {},
        [&] {
            const SynthData data = generate_synthetic(config.synth);
            fs::create_directories(config.output_dir);
            const fs::path gt_path = config.output_dir / "gt.csv";
            save_csv(data.gt, gt_path);
            const fs::path signal_dir = config.output_dir / "signals";
            save_catalog(data.catalog, signal_dir);
            std::vector<std::string> outputs{gt_path.string(), signal_dir.string()};
            write_manifest(config, "synth", outputs,
                           json{{"injected_id", data.injected_id},
                                {"signals", data.catalog.size()}});
            std::cout << "wrote " << data.catalog.size() << " signals and "
                      << data.gt.size() << " days of ground truth to "
                      << config.output_dir.string() << '\n';
        });
}

int cmd_correlate(const RunConfig& config) {
    std::optional<DailySeries> gt;
    std::optional<SignalCatalog> catalog;
    return run_guarded(
        [&] {
            gt = load_gt(config).series;
            catalog = load_signals(config, true);
        },
        [&] {
            const auto ranked = rank_signals(*gt, *catalog, config.harness.lags,
                                             config.harness.corr_select,
                                             config.harness.min_overlap);
            fs::create_directories(config.output_dir);
            const fs::path table_path = config.output_dir / "correlations.csv";
            const fs::path lag_path = config.output_dir / "per_lag.csv";
            write_correlations_csv(table_path, ranked, *catalog);
            write_per_lag_csv(lag_path, ranked);
            write_manifest(config, "correlate",
                           {table_path.string(), lag_path.string()});
            const std::size_t shown = std::min<std::size_t>(ranked.size(),
                                                            static_cast<std::size_t>(config.top));
            for (std::size_t i = 0; i < shown; ++i) {
                std::printf("%-30s lag=%3d r=%+.4f\n", ranked[i].signal_id.c_str(),
                            ranked[i].best_lag, ranked[i].best_r);
            }
        });
}

namespace {

json fit_model_json(const RunConfig& config, const DailySeries& gt,
                    const SignalCatalog& catalog) {
    const HarnessConfig& h = config.harness;
    if (config.model == ModelKind::BaselineArima) {
        const int window = config.cadence == Cadence::Monthly ? 30 : 7;
        const BaselineModel model = fit_baseline(gt, window, h.master_seed);
        return json{{"type", "baseline"},
                    {"window", model.window},
                    {"lambda", model.lambda},
                    {"short_window", model.short_window}};
    }

    std::vector<DailySeries> exog;
    std::vector<int> lags;
    DailySeries train = gt;
    if (!config.signal_ids.empty()) {
        DayIndex window_start = gt.start_day();
        for (const auto& id : config.signal_ids) {
            const DailySeries& raw = catalog.find(id).series;
            const CorrelationResult corr =
                best_lag(gt, raw, h.lags, h.corr_select, h.min_overlap);
            const int lag = corr.degenerate ? 0 : corr.best_lag;
            lags.push_back(lag);
            exog.push_back(align(raw, lag));
            window_start = std::max(window_start, exog.back().start_day());
        }
        train = gt.slice_days(window_start, gt.end_day());
    }

    if (config.model == ModelKind::Arima || config.model == ModelKind::Arimax) {
        ArimaModel model;
        if (config.fixed_order) {
            model = fit_arima(train, exog, *config.fixed_order, h.arima_options);
        } else {
            const ArimaGrid& grid =
                config.model == ModelKind::Arimax && !exog.empty() ? h.arimax_grid
                                                                   : h.arima_grid;
            model = grid_search_arima(train, exog, grid, h.arima_options).model;
        }
        model.exog_ids = config.signal_ids;
        json out = arima_to_json(model);
        out["align_lags"] = lags;
        return out;
    }

    RnnConfig rnn_cfg = h.rnn;
    rnn_cfg.cell = config.model == ModelKind::Gru ? CellKind::GRU : CellKind::LSTM;
    rnn_cfg.seed = h.master_seed;
    RnnModel model = train_rnn(rnn_cfg, train, exog);
    model.exog_ids = config.signal_ids;
    json out = rnn_to_json(model);
    out["align_lags"] = lags;
    return out;
}

} // namespace

int cmd_fit(const RunConfig& config) {
    std::optional<DailySeries> gt;
    std::optional<SignalCatalog> catalog;
    return run_guarded(
        [&] {
            gt = load_gt(config).series;
            catalog = load_signals(config, !config.signal_ids.empty());
        },
        [&] {
            const json model = fit_model_json(config, *gt, *catalog);
            fs::create_directories(config.output_dir);
            const fs::path model_path = config.output_dir / "model.json";
            std::ofstream out(model_path, std::ios::binary);
            out << model.dump(2) << '\n';
            write_manifest(config, "fit", {model_path.string()});
            std::cout << "wrote " << model_path.string() << '\n';
        });
}

int cmd_forecast(const RunConfig& config) {
    std::optional<DailySeries> gt;
    std::optional<SignalCatalog> catalog;
    return run_guarded(
        [&] {
            gt = load_gt(config).series;
            catalog = load_signals(config, false);
        },
        [&] {
            const HarnessConfig& h = config.harness;
            const DayIndex data_end = gt->end_day();
            DayIndex period_start, period_end, cutoff;
            if (config.cadence == Cadence::Monthly) {
                period_start = add_months(data_end, 1);
                period_end = add_months(period_start, 1) - 1;
                cutoff = data_end + 1; // all available GT
            } else {
                period_start = iso_week_start(data_end) + 7;
                period_end = period_start + 6;
                cutoff = std::min(add_months(period_start, -1), data_end + 1);
            }
            const int gap = static_cast<int>(period_start - cutoff);
            const int horizon = static_cast<int>(period_end - period_start + 1);
            const DailySeries train = gt->before(cutoff);

            DailySeries forecast(period_start, std::vector<double>(1, 0.0),
                                 SeriesKind::SignalValue);
            std::vector<int> lags;
            if (config.model == ModelKind::BaselineArima) {
                const int window =
                    config.cadence == Cadence::Monthly ? days_in_month(period_start) : 7;
                const BaselineModel model = fit_baseline(train, window, h.master_seed);
                forecast = baseline_forecast(model, period_start, horizon, BaselineMode::Point);
            } else {
                std::vector<DailySeries> exog;
                DayIndex window_start = train.start_day();
                for (const auto& id : config.signal_ids) {
                    const PreparedSignal prepared = prepare_signal(
                        train, catalog->find(id).series, period_start, period_end, h);
                    lags.push_back(prepared.lag);
                    window_start = std::max(window_start, prepared.series.start_day());
                    exog.push_back(prepared.series);
                }
                const DailySeries slice = train.slice_days(window_start, train.end_day());
                if (config.model == ModelKind::Arima || config.model == ModelKind::Arimax) {
                    ArimaModel model;
                    if (config.fixed_order) {
                        model = fit_arima(slice, exog, *config.fixed_order, h.arima_options);
                    } else {
                        const ArimaGrid& grid = config.model == ModelKind::Arimax && !exog.empty()
                                                    ? h.arimax_grid
                                                    : h.arima_grid;
                        model = grid_search_arima(slice, exog, grid, h.arima_options).model;
                    }
                    forecast = forecast_arima(model, slice, exog, gap, horizon).levels;
                } else {
                    RnnConfig rnn_cfg = h.rnn;
                    rnn_cfg.cell =
                        config.model == ModelKind::Gru ? CellKind::GRU : CellKind::LSTM;
                    rnn_cfg.seed = h.master_seed;
                    const RnnModel model = train_rnn(rnn_cfg, slice, exog);
                    forecast = predict_rnn(model, slice, exog, gap, horizon);
                }
            }

            fs::create_directories(config.output_dir);
            const fs::path forecast_path = config.output_dir / "forecast.csv";
            save_csv(forecast, forecast_path);
            const fs::path warnings_path = config.output_dir / "warnings.csv";
            {
                std::ofstream out(warnings_path, std::ios::binary);
                out << "date,event_type,target,model\n";
                for (const auto& w : counts_to_warnings(forecast, config.event_type,
                                                        config.target,
                                                        to_string(config.model))) {
                    out << format_date(w.day) << ',' << to_string(w.event_type) << ','
                        << w.target << ',' << w.model_id << '\n';
                }
            }
            write_manifest(config, "forecast",
                           {forecast_path.string(), warnings_path.string()},
                           json{{"period_start", format_date(period_start)},
                                {"period_end", format_date(period_end)},
                                {"train_cutoff", format_date(cutoff)},
                                {"gap_len", gap},
                                {"horizon", horizon},
                                {"align_lags", lags}});
            std::cout << "forecast " << format_date(period_start) << ".."
                      << format_date(period_end) << " (gap " << gap << " days) -> "
                      << forecast_path.string() << '\n';
        });
}

int cmd_backtest(const RunConfig& config) {
    std::optional<DailySeries> gt;
    std::optional<SignalCatalog> catalog;
    return run_guarded(
        [&] {
            gt = load_gt(config).series;
            catalog = load_signals(config, !config.signal_ids.empty());
        },
        [&] {
            const auto [start, end] = eval_span(config, *gt);
            BacktestPlan plan{config.cadence, start,        end,
                              *gt,            *catalog,     config.event_type,
                              config.target,  config.model, config.signal_ids};
            const BacktestReport report = run_backtest(plan, config.harness);

            SweepTable table;
            table.cadence = config.cadence;
            table.event_type = config.event_type;
            table.target = config.target;
            table.baseline_f1 = report.baseline_f1;
            SweepRow row;
            row.model = config.model;
            row.signal_id = config.signal_ids.empty()
                                ? std::string(kEndogenousId)
                                : config.signal_ids.front();
            row.lift = report.lift_vs_baseline;
            row.lift_floored = report.lift_floored;
            row.report = report;
            table.rows.push_back(std::move(row));

            fs::create_directories(config.output_dir);
            const fs::path periods_path = config.output_dir / "periods.csv";
            const fs::path summary_path = config.output_dir / "backtest.csv";
            const SweepTable tables[] = {table};
            write_periods_csv(periods_path, tables);
            write_sweep_csv(summary_path, tables);
            write_manifest(config, "backtest",
                           {periods_path.string(), summary_path.string()});
            std::printf("%s pooled F1 %.4f (baseline %.4f, lift %.3f) over %zu periods\n",
                        to_string(config.model).c_str(), report.aggregate_f1,
                        report.baseline_f1, report.lift_vs_baseline,
                        report.per_period.size());
        });
}

int cmd_sweep(const RunConfig& config) {
    std::optional<DailySeries> gt;
    std::optional<SignalCatalog> catalog;
    return run_guarded(
        [&] {
            gt = load_gt(config).series;
            catalog = load_signals(config, true);
        },
        [&] {
            const auto [start, end] = eval_span(config, *gt);
            const SweepTable table = sweep(*gt, *catalog, config.event_type, config.target,
                                           config.models, config.cadence, start, end,
                                           config.harness);
            const auto rows = best_signals(std::span(&table, 1));

            fs::create_directories(config.output_dir);
            const fs::path sweep_path = config.output_dir / "sweep.csv";
            const fs::path periods_path = config.output_dir / "periods.csv";
            const fs::path best_path = config.output_dir / "best_signals.csv";
            const SweepTable tables[] = {table};
            write_sweep_csv(sweep_path, tables);
            write_periods_csv(periods_path, tables);
            write_best_signals_csv(best_path, rows);
            write_manifest(config, "sweep",
                           {sweep_path.string(), periods_path.string(), best_path.string()},
                           json{{"eval_start", format_date(start)},
                                {"eval_end", format_date(end)},
                                {"cells", table.rows.size()}});

            const int shown = std::min<int>(config.top, static_cast<int>(table.rows.size()));
            std::printf("top %d of %zu cells by lift (baseline F1 %.4f):\n", shown,
                        table.rows.size(), table.baseline_f1);
            for (int i = 0; i < shown; ++i) {
                const SweepRow& row = table.rows[static_cast<std::size_t>(i)];
                std::printf("  %-14s %-24s lift=%-8.3f F1=%.4f\n",
                            to_string(row.model).c_str(), row.signal_id.c_str(), row.lift,
                            row.report.aggregate_f1);
            }
        });
}

int cmd_report(const RunConfig& config, const std::vector<std::filesystem::path>& sweep_files) {
    std::vector<SweepTable> tables;
    return run_guarded(
        [&] {
            if (sweep_files.empty()) {
                throw ConfigError("report needs at least one sweep.csv");
            }
            for (const auto& file : sweep_files) {
                std::ifstream in(file);
                if (!in) {
                    throw DataError("cannot open '" + file.string() + "'");
                }
                std::string line;
                std::getline(in, line); // header
                std::map<std::tuple<std::string, std::string, std::string>, SweepTable> grouped;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    std::vector<std::string> cells;
                    std::stringstream ss(line);
                    std::string cell;
                    while (std::getline(ss, cell, ',')) cells.push_back(cell);
                    if (cells.size() < 23) {
                        throw ParseError("unexpected sweep.csv row in '" + file.string() + "'",
                                         0);
                    }
                    auto& table = grouped[{cells[0], cells[1], cells[2]}];
                    table.cadence = parse_cadence(cells[0]);
                    table.event_type = parse_event_type(cells[1]);
                    table.target = cells[2];
                    SweepRow row;
                    row.model = parse_model_kind(cells[3]);
                    row.signal_id = cells[4];
                    row.report.aggregate_f1 = cells[15].empty() ? 0.0 : std::stod(cells[15]);
                    row.report.baseline_f1 = cells[20].empty() ? 0.0 : std::stod(cells[20]);
                    row.lift = cells[21].empty() ? 0.0 : std::stod(cells[21]);
                    table.baseline_f1 = row.report.baseline_f1;
                    table.rows.push_back(std::move(row));
                }
                for (auto& [key, table] : grouped) tables.push_back(std::move(table));
            }
        },
        [&] {
            const auto rows = best_signals(tables);
            fs::create_directories(config.output_dir);
            const fs::path best_path = config.output_dir / "best_signals.csv";
            write_best_signals_csv(best_path, rows);
            write_manifest(config, "report", {best_path.string()});
            for (const auto& row : rows) {
                std::printf("%-10s %-22s %-6s %-24s %.2f\n", row.model.c_str(),
                            row.event_type.c_str(), row.org.c_str(), row.signal.c_str(),
                            100.0 * row.f1);
            }
        });
}

} // namespace attackcast
