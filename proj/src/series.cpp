#include "attackcast/series.hpp"

#include "attackcast/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

namespace attackcast {

namespace {

bool is_integral_count(double v) {
    return std::isfinite(v) && v >= 0.0 && v == std::floor(v);
}

} // namespace

DailySeries::DailySeries(DayIndex start_day, std::vector<double> values, SeriesKind kind)
    : start_day_(start_day), values_(std::move(values)), kind_(kind) {
    if (values_.empty()) {
        throw EmptyError("DailySeries requires at least one value");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw NonFiniteError("non-finite value at day " +
                                 format_date(start_day_ + static_cast<DayIndex>(i)));
        }
        if (kind_ == SeriesKind::EventCount && !is_integral_count(values_[i])) {
            throw ParseError("event counts must be non-negative integers, got " +
                                 std::to_string(values_[i]),
                             i + 1);
        }
    }
}

double DailySeries::value_on(DayIndex day) const {
    if (!covers(day)) {
        throw LengthError("day " + format_date(day) + " outside series span " +
                          format_date(start_day_) + ".." + format_date(end_day()));
    }
    return values_[static_cast<std::size_t>(day - start_day_)];
}

DailySeries DailySeries::slice_days(DayIndex first, DayIndex last) const {
    if (first > last || !covers(first) || !covers(last)) {
        throw LengthError("slice [" + format_date(first) + ", " + format_date(last) +
                          "] not covered by series " + format_date(start_day_) + ".." +
                          format_date(end_day()));
    }
    const auto offset = static_cast<std::size_t>(first - start_day_);
    const auto count = static_cast<std::size_t>(last - first + 1);
    std::vector<double> vals(values_.begin() + offset, values_.begin() + offset + count);
    return DailySeries(first, std::move(vals), kind_);
}

DailySeries DailySeries::before(DayIndex cutoff) const {
    if (cutoff <= start_day_) {
        throw LengthError("no data before " + format_date(cutoff));
    }
    return slice_days(start_day_, std::min(end_day(), cutoff - 1));
}

DailySeries difference(const DailySeries& s, int d) {
    if (d < 0) {
        throw LengthError("difference order must be non-negative");
    }
    if (static_cast<int>(s.size()) <= d) {
        throw LengthError("series of length " + std::to_string(s.size()) +
                          " cannot be differenced " + std::to_string(d) + " times");
    }
    std::vector<double> vals(s.values().begin(), s.values().end());
    for (int pass = 0; pass < d; ++pass) {
        for (std::size_t i = vals.size() - 1; i > 0; --i) {
            vals[i] -= vals[i - 1];
        }
        vals.erase(vals.begin());
    }
    return DailySeries(s.start_day() + d, std::move(vals), SeriesKind::SignalValue);
}

std::vector<double> difference_anchors(const DailySeries& s, int d) {
    if (static_cast<int>(s.size()) <= d) {
        throw LengthError("not enough values for " + std::to_string(d) + " anchors");
    }
    std::vector<double> anchors(static_cast<std::size_t>(d));
    std::vector<double> work(s.values().begin(), s.values().end());
    for (int j = 0; j < d; ++j) {
        anchors[static_cast<std::size_t>(j)] = work[static_cast<std::size_t>(d - 1 - j)];
        for (std::size_t i = work.size() - 1; i > 0; --i) {
            work[i] -= work[i - 1];
        }
        work.erase(work.begin());
    }
    return anchors;
}

std::vector<double> tail_anchors(const DailySeries& s, int d) {
    if (static_cast<int>(s.size()) <= d) {
        throw LengthError("not enough values for " + std::to_string(d) + " anchors");
    }
    std::vector<double> anchors(static_cast<std::size_t>(d));
    std::vector<double> work(s.values().begin(), s.values().end());
    for (int j = 0; j < d; ++j) {
        anchors[static_cast<std::size_t>(j)] = work.back();
        for (std::size_t i = work.size() - 1; i > 0; --i) {
            work[i] -= work[i - 1];
        }
        work.erase(work.begin());
    }
    return anchors;
}

DailySeries integrate(const DailySeries& diffs, const std::vector<double>& anchors, int d) {
    if (static_cast<int>(anchors.size()) != d) {
        throw LengthError("integrate expects " + std::to_string(d) + " anchors, got " +
                          std::to_string(anchors.size()));
    }
    std::vector<double> vals(diffs.values().begin(), diffs.values().end());
    for (int level = d - 1; level >= 0; --level) {
        double acc = anchors[static_cast<std::size_t>(level)];
        for (double& v : vals) {
            acc += v;
            v = acc;
        }
    }
    return DailySeries(diffs.start_day(), std::move(vals), SeriesKind::SignalValue);
}

DailySeries shift(const DailySeries& s, std::int64_t lag) {
    if (std::llabs(lag) >= static_cast<std::int64_t>(s.size())) {
        throw LengthError("shift by " + std::to_string(lag) + " leaves no overlap with a series of length " +
                          std::to_string(s.size()));
    }
    std::vector<double> vals(s.values().begin(), s.values().end());
    return DailySeries(s.start_day() + lag, std::move(vals), s.kind());
}

EventType event_type(EventTypeName name) {
    switch (name) {
        case EventTypeName::EndpointMalware: return {name, 0.875};
        case EventTypeName::MaliciousEmail: return {name, 1.375};
        case EventTypeName::MaliciousDestination: return {name, 1.625};
    }
    throw ConfigError("unknown event type");
}

std::string to_string(EventTypeName name) {
    switch (name) {
        case EventTypeName::EndpointMalware: return "endpoint-malware";
        case EventTypeName::MaliciousEmail: return "malicious-email";
        case EventTypeName::MaliciousDestination: return "malicious-destination";
    }
    throw ConfigError("unknown event type");
}

EventTypeName parse_event_type(const std::string& text) {
    if (text == "endpoint-malware") return EventTypeName::EndpointMalware;
    if (text == "malicious-email") return EventTypeName::MaliciousEmail;
    if (text == "malicious-destination") return EventTypeName::MaliciousDestination;
    throw ConfigError("unknown event type '" + text + "'");
}

std::string to_string(SignalSource source) {
    switch (source) {
        case SignalSource::D2Web: return "d2web";
        case SignalSource::Twitter: return "twitter";
        case SignalSource::Blogs: return "blogs";
        case SignalSource::Vulnerability: return "vulnerability";
        case SignalSource::Honeypot: return "honeypot";
        case SignalSource::Synthetic: return "synthetic";
    }
    throw ConfigError("unknown signal source");
}

SignalSource parse_signal_source(const std::string& text) {
    if (text == "d2web") return SignalSource::D2Web;
    if (text == "twitter") return SignalSource::Twitter;
    if (text == "blogs") return SignalSource::Blogs;
    if (text == "vulnerability" || text == "vuln") return SignalSource::Vulnerability;
    if (text == "honeypot") return SignalSource::Honeypot;
    if (text == "synthetic") return SignalSource::Synthetic;
    throw ConfigError("unknown signal source '" + text + "'");
}

void SignalCatalog::add(SignalEntry entry) {
    if (contains(entry.signal_id)) {
        throw DataError("duplicate signal_id '" + entry.signal_id + "'");
    }
    entries_.push_back(std::move(entry));
}

const SignalEntry& SignalCatalog::find(const std::string& signal_id) const {
    for (const auto& e : entries_) {
        if (e.signal_id == signal_id) return e;
    }
    throw DataError("signal_id '" + signal_id + "' not in catalog");
}

bool SignalCatalog::contains(const std::string& signal_id) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const SignalEntry& e) { return e.signal_id == signal_id; });
}

LoadReport load_csv(const std::filesystem::path& path, CsvSchema schema) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    std::string line;
    std::size_t line_no = 0;
    std::map<DayIndex, double> rows;
    DayIndex prev_day = 0;
    bool have_prev = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "date,value") {
                throw ParseError("expected header 'date,value', got '" + line + "'", line_no);
            }
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("expected 'date,value' row", line_no);
        }
        DayIndex day;
        try {
            day = parse_date(line.substr(0, comma));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
        const std::string cell = line.substr(comma + 1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (ec != std::errc() || ptr != cell.data() + cell.size()) {
            throw ParseError("malformed value '" + cell + "'", line_no);
        }
        if (schema == CsvSchema::GroundTruth && !is_integral_count(value)) {
            throw ParseError("ground-truth counts must be non-negative integers, got '" + cell + "'",
                             line_no);
        }
        if (have_prev && day <= prev_day) {
            throw OrderError("dates not strictly increasing at line " + std::to_string(line_no));
        }
        prev_day = day;
        have_prev = true;
        rows.emplace(day, value);
    }
    if (rows.empty()) {
        throw DataError("no data rows in '" + path.string() + "'");
    }
    const DayIndex first = rows.begin()->first;
    const DayIndex last = rows.rbegin()->first;
    std::vector<double> vals(static_cast<std::size_t>(last - first + 1), 0.0);
    for (const auto& [day, value] : rows) {
        vals[static_cast<std::size_t>(day - first)] = value;
    }
    const int filled = static_cast<int>(vals.size() - rows.size());
    const SeriesKind kind =
        schema == CsvSchema::GroundTruth ? SeriesKind::EventCount : SeriesKind::SignalValue;
    return LoadReport{DailySeries(first, std::move(vals), kind), filled};
}

std::string format_value(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void save_csv(const DailySeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "date,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.start_day() + static_cast<DayIndex>(i)) << ','
            << format_value(series[i]) << '\n';
    }
}

CatalogLoadReport load_catalog(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw DataError("signal directory '" + dir.string() + "' does not exist");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw DataError("no .csv signal files in '" + dir.string() + "'");
    }
    CatalogLoadReport report{SignalCatalog{}, 0};
    for (const auto& file : files) {
        const std::string stem = file.stem().string();
        const auto sep = stem.find("__");
        if (sep == std::string::npos) {
            throw DataError("signal filename '" + stem + "' must be source__keyword.csv");
        }
        auto loaded = load_csv(file, CsvSchema::Signal);
        report.gaps_filled += loaded.gaps_filled;
        report.catalog.add(SignalEntry{stem, parse_signal_source(stem.substr(0, sep)),
                                       stem.substr(sep + 2), std::move(loaded.series)});
    }
    return report;
}

void save_catalog(const SignalCatalog& catalog, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& entry : catalog.entries()) {
        save_csv(entry.series, dir / (entry.signal_id + ".csv"));
    }
}

} // namespace attackcast
