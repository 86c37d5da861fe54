#include "attackcast/cli.hpp"
#include "attackcast/errors.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

using attackcast::RunConfig;

RunConfig load_config(const std::string& path) {
    if (path.empty()) return RunConfig{};
    std::ifstream in(path);
    if (!in) {
        throw attackcast::ConfigError("cannot open config '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw attackcast::ConfigError("malformed config '" + path + "': " + e.what());
    }
    return attackcast::config_from_json(j);
}

// "lo:hi" -> LagRange
attackcast::LagRange parse_lags(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw attackcast::ConfigError("--lags expects lo:hi, e.g. -30:0");
    }
    return attackcast::LagRange{std::stoi(text.substr(0, colon)),
                                std::stoi(text.substr(colon + 1))};
}

std::vector<attackcast::ModelKind> parse_models(const std::string& text) {
    std::vector<attackcast::ModelKind> models;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) models.push_back(attackcast::parse_model_kind(token));
    }
    if (models.empty()) {
        throw attackcast::ConfigError("--models expects a comma-separated list");
    }
    return models;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"attackcast: daily cyber-attack count forecasting from web signals"};
    app.require_subcommand(1);

    std::string config_path;
    std::string gt_path, signals_dir, out_dir, event_type, target, cadence, model, models;
    std::string eval_start, eval_end, lags, order;
    std::vector<std::string> signal_ids;
    std::vector<std::string> sweep_files;
    std::int64_t seed = -1;
    int jobs = 0, top = 0, days = 0, noise_signals = -1, lag = 1;
    double mu = -1.0, beta = -1.0, rho = -2.0;
    std::string synth_start;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--gt", gt_path, "ground-truth CSV (date,value)");
        cmd->add_option("--signals", signals_dir, "signal directory of source__keyword.csv files");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--event-type", event_type,
                        "endpoint-malware | malicious-email | malicious-destination");
        cmd->add_option("--target", target, "organization label");
        cmd->add_option("--cadence", cadence, "monthly | weekly");
        cmd->add_option("--eval-start", eval_start, "first evaluation day (YYYY-MM-DD)");
        cmd->add_option("--eval-end", eval_end, "last evaluation day (YYYY-MM-DD)");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--jobs", jobs, "parallel workers for sweeps");
        cmd->add_option("--top", top, "rows to print");
        cmd->add_option("--lags", lags, "correlation lag range lo:hi (default -30:0)");
        cmd->add_option("--signal", signal_ids, "signal id (repeatable)");
        cmd->add_option("--model", model, "baseline_arima | arima | arimax | gru | lstm");
        cmd->add_option("--models", models, "comma-separated model list for sweeps");
        cmd->add_option("--order", order, "fixed ARIMA order p,d,q");
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    add_common(synth);
    synth->add_option("--days", days, "ground-truth length in days");
    synth->add_option("--mu", mu, "base Poisson rate");
    synth->add_option("--beta", beta, "injected signal coefficient");
    synth->add_option("--lag", lag, "injected lag in [-30, 0]");
    synth->add_option("--noise-signals", noise_signals, "number of noise signals");
    synth->add_option("--rho", rho, "latent autocorrelation");
    synth->add_option("--start", synth_start, "first ground-truth day (YYYY-MM-DD)");

    add_common(app.add_subcommand("correlate", "rank signals by lagged cross-correlation"));
    add_common(app.add_subcommand("fit", "fit one model and write model.json"));
    add_common(app.add_subcommand("forecast", "forecast the next period after the data ends"));
    add_common(app.add_subcommand("backtest", "rolling backtest of one model"));
    add_common(app.add_subcommand("sweep", "full signal-by-model lift sweep"));
    CLI::App* report = app.add_subcommand("report", "merge sweep tables into best_signals.csv");
    add_common(report);
    report->add_option("--sweep-file", sweep_files, "sweep.csv to merge (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return attackcast::kExitConfigError;
    }

    try {
        RunConfig config = load_config(config_path);
        if (!gt_path.empty()) config.gt_path = gt_path;
        if (!signals_dir.empty()) config.signals_dir = signals_dir;
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (!event_type.empty()) config.event_type = attackcast::parse_event_type(event_type);
        if (!target.empty()) config.target = target;
        if (!cadence.empty()) config.cadence = attackcast::parse_cadence(cadence);
        if (!eval_start.empty()) config.eval_start = attackcast::parse_date(eval_start);
        if (!eval_end.empty()) config.eval_end = attackcast::parse_date(eval_end);
        if (seed >= 0) {
            config.harness.master_seed = static_cast<std::uint64_t>(seed);
            config.synth.seed = static_cast<std::uint64_t>(seed);
        }
        if (jobs > 0) config.harness.jobs = jobs;
        if (top > 0) config.top = top;
        if (!lags.empty()) config.harness.lags = parse_lags(lags);
        if (!signal_ids.empty()) config.signal_ids = signal_ids;
        if (!model.empty()) config.model = attackcast::parse_model_kind(model);
        if (!models.empty()) config.models = parse_models(models);
        if (!order.empty()) {
            attackcast::ArimaOrder fixed;
            if (std::sscanf(order.c_str(), "%d,%d,%d", &fixed.p, &fixed.d, &fixed.q) != 3) {
                throw attackcast::ConfigError("--order expects p,d,q");
            }
            config.fixed_order = fixed;
        }
        if (days > 0) config.synth.days = days;
        if (mu >= 0.0) config.synth.base_rate = mu;
        if (beta >= 0.0) config.synth.beta = beta;
        if (lag <= 0) config.synth.lag = lag;
        if (noise_signals >= 0) config.synth.n_noise_signals = noise_signals;
        if (rho > -1.0) config.synth.rho = rho;
        if (!synth_start.empty()) config.synth.start_day = attackcast::parse_date(synth_start);

        if (app.got_subcommand("synth")) return attackcast::cmd_synth(config);
        if (app.got_subcommand("correlate")) return attackcast::cmd_correlate(config);
        if (app.got_subcommand("fit")) return attackcast::cmd_fit(config);
        if (app.got_subcommand("forecast")) return attackcast::cmd_forecast(config);
        if (app.got_subcommand("backtest")) return attackcast::cmd_backtest(config);
        if (app.got_subcommand("sweep")) return attackcast::cmd_sweep(config);
        if (app.got_subcommand("report")) {
            std::vector<std::filesystem::path> files(sweep_files.begin(), sweep_files.end());
            return attackcast::cmd_report(config, files);
        }
    } catch (const attackcast::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return attackcast::kExitConfigError;
    } catch (const attackcast::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return attackcast::kExitDataError;
    }
    return attackcast::kExitConfigError;
}
