#include "attackcast/correlate.hpp"

#include "attackcast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace attackcast {

namespace {

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

} // namespace

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw LengthError("pearson: length mismatch");
    }
    if (a.size() < 3) {
        throw LengthError("pearson: need at least 3 points");
    }
    if (is_constant(a) || is_constant(b)) {
        throw DegenerateError("pearson: undefined for a constant input");
    }
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        throw DegenerateError("pearson: zero variance");
    }
    return cov / std::sqrt(var_a * var_b);
}

CorrelationResult best_lag(const DailySeries& gt, const DailySeries& signal, LagRange lags,
                           CorrSelect select, int min_overlap) {
    if (lags.lo > lags.hi) {
        throw ConfigError("best_lag: empty lag range");
    }
    CorrelationResult result;
    result.lags = lags;
    result.per_lag_r.assign(static_cast<std::size_t>(lags.hi - lags.lo + 1), 0.0);

    bool any_usable = false;
    double best_score = 0.0;
    for (int lag = lags.lo; lag <= lags.hi; ++lag) {
        // pairs (gt_t, signal_{t+lag}) over the maximal calendar overlap
        const DayIndex first = std::max(gt.start_day(), signal.start_day() - lag);
        const DayIndex last = std::min(gt.end_day(), signal.end_day() - lag);
        const auto overlap = static_cast<int>(last - first + 1);
        if (overlap < min_overlap) {
            throw OverlapError("best_lag: overlap of " + std::to_string(std::max(overlap, 0)) +
                               " days at lag " + std::to_string(lag) + " is below " +
                               std::to_string(min_overlap));
        }
        std::vector<double> a(static_cast<std::size_t>(overlap));
        std::vector<double> b(static_cast<std::size_t>(overlap));
        for (int i = 0; i < overlap; ++i) {
            a[static_cast<std::size_t>(i)] = gt.value_on(first + i);
            b[static_cast<std::size_t>(i)] = signal.value_on(first + i + lag);
        }
        double r = 0.0;
        bool usable = true;
        try {
            r = pearson(a, b);
        } catch (const DegenerateError&) {
            usable = false; // recorded as r = 0
        }
        result.per_lag_r[static_cast<std::size_t>(lag - lags.lo)] = usable ? r : 0.0;
        if (!usable) continue;

        const double score = select == CorrSelect::Signed ? r : std::abs(r);
        const bool wins = !any_usable || score > best_score ||
                          (score == best_score && std::abs(lag) < std::abs(result.best_lag));
        if (wins) {
            best_score = score;
            result.best_lag = lag;
            result.best_r = r;
            result.overlap_len = overlap;
        }
        any_usable = true;
    }
    result.degenerate = !any_usable;
    return result;
}

std::vector<CorrelationResult> rank_signals(const DailySeries& gt, const SignalCatalog& catalog,
                                            LagRange lags, CorrSelect select, int min_overlap) {
    std::vector<CorrelationResult> results;
    results.reserve(catalog.size());
    for (const auto& entry : catalog.entries()) {
        CorrelationResult r;
        try {
            r = best_lag(gt, entry.series, lags, select, min_overlap);
        } catch (const Error&) {
            r.lags = lags;
            r.per_lag_r.assign(static_cast<std::size_t>(lags.hi - lags.lo + 1), 0.0);
            r.degenerate = true;
        }
        r.signal_id = entry.signal_id;
        results.push_back(std::move(r));
    }
    std::stable_sort(results.begin(), results.end(),
                     [select](const CorrelationResult& a, const CorrelationResult& b) {
                         if (a.degenerate != b.degenerate) return !a.degenerate;
                         if (a.degenerate) return false;
                         const double sa = select == CorrSelect::Signed ? a.best_r : std::abs(a.best_r);
                         const double sb = select == CorrSelect::Signed ? b.best_r : std::abs(b.best_r);
                         return sa > sb;
                     });
    return results;
}

DailySeries align(const DailySeries& signal, int lag) {
    return shift(signal, -lag);
}

void write_correlations_csv(const std::filesystem::path& path,
                            std::span<const CorrelationResult> results,
                            const SignalCatalog& catalog) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "signal_id,source,keyword,best_lag,best_r,overlap_len,degenerate\n";
    char buf[32];
    for (const auto& r : results) {
        const auto& entry = catalog.find(r.signal_id);
        std::snprintf(buf, sizeof(buf), "%.6f", r.best_r);
        out << r.signal_id << ',' << to_string(entry.source) << ',' << entry.keyword << ','
            << r.best_lag << ',' << buf << ',' << r.overlap_len << ','
            << (r.degenerate ? 1 : 0) << '\n';
    }
}

void write_per_lag_csv(const std::filesystem::path& path,
                       std::span<const CorrelationResult> results) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << "signal_id,lag,r\n";
    char buf[32];
    for (const auto& r : results) {
        for (std::size_t i = 0; i < r.per_lag_r.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.6f", r.per_lag_r[i]);
            out << r.signal_id << ',' << (r.lags.lo + static_cast<int>(i)) << ',' << buf << '\n';
        }
    }
}

} // namespace attackcast
