#pragma once

#include "attackcast/backtest.hpp"
#include "attackcast/synth.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace attackcast {

// stable exit codes for scripting
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitModelError = 4;

struct RunConfig {
    std::filesystem::path gt_path;
    std::filesystem::path signals_dir;
    EventTypeName event_type = EventTypeName::EndpointMalware;
    std::string target = "OrgA";
    Cadence cadence = Cadence::Monthly;
    DayIndex eval_start = 0; // 0 = derive from the data
    DayIndex eval_end = 0;
    std::vector<ModelKind> models{ModelKind::Arimax, ModelKind::Gru};
    ModelKind model = ModelKind::Arima; // single-model commands
    std::vector<std::string> signal_ids;
    std::optional<ArimaOrder> fixed_order;
    HarnessConfig harness;
    int top = 5;
    std::filesystem::path output_dir = "out";
    SynthSpec synth;
};

/// Parses the versioned config document; absent fields keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);
/// Canonical resolved form; its dump is hashed into the run manifest.
nlohmann::json config_to_json(const RunConfig& config);

int cmd_synth(const RunConfig& config);
int cmd_correlate(const RunConfig& config);
int cmd_fit(const RunConfig& config);
int cmd_forecast(const RunConfig& config);
int cmd_backtest(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_report(const RunConfig& config, const std::vector<std::filesystem::path>& sweep_files);

} // namespace attackcast
