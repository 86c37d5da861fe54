#include "attackcast/report.hpp"

#include "attackcast/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace attackcast {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    return out;
}

std::string csv_safe(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return text;
}

int first_lag(const BacktestReport& report) {
    for (const auto& p : report.per_period) {
        if (!p.failed) return p.align_lag;
    }
    return 0;
}

} // namespace

std::string format_metric(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepTable> tables) {
    auto out = open_out(path);
    out << "cadence,event_type,target,model,signal_id,source,keyword,align_lag,periods,"
           "failed_periods,tp,fp,fn,precision,recall,pooled_f1,mean_period_f1,mae,rmse,mase,"
           "baseline_f1,lift,lift_floored\n";
    for (const auto& table : tables) {
        for (const auto& row : table.rows) {
            int failed = 0;
            for (const auto& p : row.report.per_period) failed += p.failed ? 1 : 0;
            out << to_string(table.cadence) << ',' << to_string(table.event_type) << ','
                << csv_safe(table.target) << ',' << to_string(row.model) << ','
                << csv_safe(row.signal_id) << ',' << csv_safe(row.source) << ','
                << csv_safe(row.keyword) << ',' << first_lag(row.report) << ','
                << row.report.per_period.size() << ',' << failed << ',' << row.report.tp << ','
                << row.report.fp << ',' << row.report.fn << ','
                << format_metric(row.report.precision) << ','
                << format_metric(row.report.recall) << ','
                << format_metric(row.report.aggregate_f1) << ','
                << format_metric(row.report.mean_period_f1) << ','
                << format_metric(row.report.aggregate_errors.mae) << ','
                << format_metric(row.report.aggregate_errors.rmse) << ','
                << format_metric(row.report.aggregate_errors.mase) << ','
                << format_metric(row.report.baseline_f1) << ',' << format_metric(row.lift) << ','
                << (row.lift_floored ? 1 : 0) << '\n';
        }
    }
}

void write_periods_csv(const std::filesystem::path& path, std::span<const SweepTable> tables) {
    auto out = open_out(path);
    out << "cadence,event_type,target,model,signal_id,period,period_start,period_end,"
           "train_cutoff,gap_len,horizon,align_lag,exog_extension_days,tp,fp,fn,precision,"
           "recall,f1,mae,rmse,mase,forecast_total,actual_total,status,error\n";
    for (const auto& table : tables) {
        for (const auto& row : table.rows) {
            for (const auto& p : row.report.per_period) {
                out << to_string(table.cadence) << ',' << to_string(table.event_type) << ','
                    << csv_safe(table.target) << ',' << to_string(row.model) << ','
                    << csv_safe(row.signal_id) << ',' << p.label << ','
                    << (p.period_start != 0 ? format_date(p.period_start) : "") << ','
                    << (p.period_end != 0 ? format_date(p.period_end) : "") << ','
                    << (p.train_cutoff != 0 ? format_date(p.train_cutoff) : "") << ','
                    << p.gap_len << ',' << p.horizon << ',' << p.align_lag << ','
                    << p.exog_extension_days << ',' << p.match.tp << ',' << p.match.fp << ','
                    << p.match.fn << ',' << format_metric(p.match.precision) << ','
                    << format_metric(p.match.recall) << ',' << format_metric(p.match.f1) << ','
                    << format_metric(p.errors.mae) << ',' << format_metric(p.errors.rmse) << ','
                    << format_metric(p.errors.mase) << ','
                    << format_metric(p.forecast_total) << ','
                    << format_metric(p.actual_total) << ',' << (p.failed ? "failed" : "ok")
                    << ',' << csv_safe(p.error) << '\n';
            }
        }
    }
}

void write_best_signals_csv(const std::filesystem::path& path,
                            std::span<const BestSignalRow> rows) {
    auto out = open_out(path);
    out << "Model,Event_Type,Org,Signal,F1\n";
    char buf[32];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * row.f1);
        out << csv_safe(row.model) << ',' << csv_safe(row.event_type) << ','
            << csv_safe(row.org) << ',' << csv_safe(row.signal) << ',' << buf << '\n';
    }
}

} // namespace attackcast
