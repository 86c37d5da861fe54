#pragma once

#include "attackcast/calendar.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace attackcast {

enum class SeriesKind { EventCount, SignalValue };

/// Dense daily time series: value i belongs to day start_day + i.
/// Immutable after construction; copies are cheap to share across threads.
class DailySeries {
public:
    DailySeries(DayIndex start_day, std::vector<double> values, SeriesKind kind);

    DayIndex start_day() const noexcept { return start_day_; }
    /// Last covered day, inclusive.
    DayIndex end_day() const noexcept { return start_day_ + static_cast<DayIndex>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    SeriesKind kind() const noexcept { return kind_; }
    std::span<const double> values() const noexcept { return values_; }

    double operator[](std::size_t i) const { return values_[i]; }
    bool covers(DayIndex day) const noexcept { return day >= start_day_ && day <= end_day(); }
    double value_on(DayIndex day) const;

    /// Sub-series over the inclusive day range [first, last]; throws LengthError
    /// if the range is not fully covered.
    DailySeries slice_days(DayIndex first, DayIndex last) const;

    /// Prefix of the series strictly before `cutoff`; throws LengthError when empty.
    DailySeries before(DayIndex cutoff) const;

private:
    DayIndex start_day_;
    std::vector<double> values_;
    SeriesKind kind_;
};

/// d-fold first differencing; the result starts d days later and is d shorter.
DailySeries difference(const DailySeries& s, int d);

/// Anchor values needed to undo d differencing passes from the front of `s`:
/// entry j is the (d-1-j)-th value of the j-times differenced series.
std::vector<double> difference_anchors(const DailySeries& s, int d);

/// Anchors taken at the end of `s`, for integrating forecasts onto its tail.
std::vector<double> tail_anchors(const DailySeries& s, int d);

/// Inverse of difference: integrate(difference(s, d), difference_anchors(s, d), d)
/// reproduces s from day start_day + d onward exactly.
DailySeries integrate(const DailySeries& diffs, const std::vector<double>& anchors, int d);

/// Relabels the calendar: the value on day t moves to day t + lag.
DailySeries shift(const DailySeries& s, std::int64_t lag);

enum class EventTypeName { EndpointMalware, MaliciousEmail, MaliciousDestination };

struct EventType {
    EventTypeName name;
    double match_window_days;
};

/// Matching windows are fixed per event type (0.875 / 1.375 / 1.625 days).
EventType event_type(EventTypeName name);
std::string to_string(EventTypeName name);
EventTypeName parse_event_type(const std::string& text);

enum class SignalSource { D2Web, Twitter, Blogs, Vulnerability, Honeypot, Synthetic };
std::string to_string(SignalSource source);
SignalSource parse_signal_source(const std::string& text);

struct SignalEntry {
    std::string signal_id;
    SignalSource source;
    std::string keyword;
    DailySeries series;
};

class SignalCatalog {
public:
    void add(SignalEntry entry);
    const std::vector<SignalEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const SignalEntry& find(const std::string& signal_id) const;
    bool contains(const std::string& signal_id) const noexcept;

private:
    std::vector<SignalEntry> entries_;
};

enum class CsvSchema { GroundTruth, Signal };

struct LoadReport {
    DailySeries series;
    int gaps_filled; // days inside the covered span that had no row
};

/// Reads a `date,value` CSV. Missing interior dates are zero-filled and counted.
LoadReport load_csv(const std::filesystem::path& path, CsvSchema schema);
void save_csv(const DailySeries& series, const std::filesystem::path& path);

struct CatalogLoadReport {
    SignalCatalog catalog;
    int gaps_filled;
};

/// Loads every `source__keyword.csv` in a directory as one signal.
CatalogLoadReport load_catalog(const std::filesystem::path& dir);
void save_catalog(const SignalCatalog& catalog, const std::filesystem::path& dir);

/// Canonical CSV cell for a value: integral values print without a decimal
/// point, others with the shortest round-trip representation.
std::string format_value(double v);

} // namespace attackcast
