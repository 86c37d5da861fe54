#pragma once

#include "attackcast/backtest.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace attackcast {

/// Cell-level lift table, one row per (model, signal) cell, already sorted.
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepTable> tables);

/// Per-period metrics for every cell, plot-ready.
void write_periods_csv(const std::filesystem::path& path, std::span<const SweepTable> tables);

/// Model,Event_Type,Org,Signal,F1 rows; F1 printed as a percentage.
void write_best_signals_csv(const std::filesystem::path& path,
                            std::span<const BestSignalRow> rows);

/// Fixed-precision metric cell; NaN prints as an empty cell.
std::string format_metric(double v);

std::uint64_t fnv1a64(std::string_view text);

} // namespace attackcast
