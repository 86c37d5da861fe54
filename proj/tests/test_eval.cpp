#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "attackcast/errors.hpp"
#include "attackcast/eval.hpp"
#include "attackcast/hungarian.hpp"
#include "attackcast/rng.hpp"

#include <cmath>

using namespace attackcast;
using Eigen::MatrixXd;

namespace {

std::vector<Warning> warnings_on(std::initializer_list<DayIndex> days,
                                 EventTypeName type = EventTypeName::MaliciousEmail) {
    std::vector<Warning> ws;
    for (const DayIndex d : days) ws.push_back(Warning{d, type, "OrgA", "test"});
    return ws;
}

std::vector<GtEvent> events_on(std::initializer_list<DayIndex> days,
                               EventTypeName type = EventTypeName::MaliciousEmail) {
    std::vector<GtEvent> gs;
    for (const DayIndex d : days) gs.push_back(GtEvent{d, type, "OrgA"});
    return gs;
}

// exhaustive best matching via bitmask DP over the event set (events <= ~20)
double brute_force_best(const MatrixXd& sim) {
    const int n = static_cast<int>(sim.rows());
    const int m = static_cast<int>(sim.cols());
    std::vector<std::vector<double>> memo(
        static_cast<std::size_t>(n) + 1,
        std::vector<double>(static_cast<std::size_t>(1) << m, -1.0));
    const auto solve = [&](auto&& self, int i, unsigned mask) -> double {
        if (i == n) return 0.0;
        double& slot = memo[static_cast<std::size_t>(i)][mask];
        if (slot >= 0.0) return slot;
        double best = self(self, i + 1, mask); // warning i unmatched
        for (int j = 0; j < m; ++j) {
            if ((mask & (1u << j)) == 0 && sim(i, j) > 0.0) {
                best = std::max(best, sim(i, j) + self(self, i + 1, mask | (1u << j)));
            }
        }
        slot = best;
        return best;
    };
    return solve(solve, 0, 0);
}

} // namespace

TEST_CASE("counts_to_warnings applies the rounding rule per day") {
    const DailySeries forecast(100, {0.4, 1.6, 2.0}, SeriesKind::SignalValue);
    const auto ws = counts_to_warnings(forecast, EventTypeName::MaliciousEmail, "OrgA", "m");
    REQUIRE(ws.size() == 4);
    CHECK(ws[0].day == 101);
    CHECK(ws[1].day == 101);
    CHECK(ws[2].day == 102);
    CHECK(ws[3].day == 102);

    const DailySeries zeros(100, {0.0, 0.0}, SeriesKind::EventCount);
    CHECK(counts_to_warnings(zeros, EventTypeName::MaliciousEmail, "OrgA", "m").empty());

    // 2.5 rounds half to even -> 2 warnings; -3 clamps to none
    const DailySeries halves(100, {2.5, -3.0}, SeriesKind::SignalValue);
    CHECK(counts_to_warnings(halves, EventTypeName::MaliciousEmail, "OrgA", "m").size() == 2);
}

TEST_CASE("two-by-two matching example") {
    const auto report = hungarian_match(warnings_on({1, 5}), events_on({2, 9}), 1.375);
    REQUIRE(report.pairs.size() == 1);
    CHECK(report.pairs[0].first == 0);
    CHECK(report.pairs[0].second == 0);
    CHECK(report.tp == 1);
    CHECK(report.fp == 1);
    CHECK(report.fn == 1);
    CHECK(report.precision == doctest::Approx(0.5));
    CHECK(report.recall == doctest::Approx(0.5));
    CHECK(report.f1 == doctest::Approx(0.5));
}

TEST_CASE("perfect prediction scores one") {
    const auto report = hungarian_match(warnings_on({3, 4, 9}), events_on({3, 4, 9}), 0.875);
    CHECK(report.tp == 3);
    CHECK(report.fp == 0);
    CHECK(report.fn == 0);
    CHECK(report.precision == 1.0);
    CHECK(report.recall == 1.0);
    CHECK(report.f1 == 1.0);
}

TEST_CASE("per-event-type windows gate day-adjacent matches") {
    const auto ws = warnings_on({3}, EventTypeName::EndpointMalware);
    const auto gs = events_on({4}, EventTypeName::EndpointMalware);

    const auto strict = hungarian_match(ws, gs, event_type(EventTypeName::EndpointMalware).match_window_days);
    CHECK(strict.tp == 0);
    CHECK(strict.f1 == 0.0);

    const auto email = hungarian_match(warnings_on({3}), events_on({4}),
                                       event_type(EventTypeName::MaliciousEmail).match_window_days);
    CHECK(email.tp == 1);

    const auto dest = hungarian_match(warnings_on({3}, EventTypeName::MaliciousDestination),
                                      events_on({4}, EventTypeName::MaliciousDestination),
                                      event_type(EventTypeName::MaliciousDestination).match_window_days);
    CHECK(dest.tp == 1);

    // two days apart misses every window
    const auto far = hungarian_match(warnings_on({3}, EventTypeName::MaliciousDestination),
                                     events_on({5}, EventTypeName::MaliciousDestination),
                                     event_type(EventTypeName::MaliciousDestination).match_window_days);
    CHECK(far.tp == 0);
}

TEST_CASE("empty sides behave") {
    const auto none = hungarian_match(std::vector<Warning>{}, std::vector<GtEvent>{}, 1.0);
    CHECK(none.tp == 0);
    CHECK(none.precision == 0.0);
    CHECK(none.recall == 0.0);
    CHECK(none.f1 == 0.0);

    const auto only_warnings = hungarian_match(warnings_on({1, 2}), std::vector<GtEvent>{}, 1.0);
    CHECK(only_warnings.fp == 2);
    CHECK(only_warnings.f1 == 0.0);

    const auto only_events = hungarian_match(std::vector<Warning>{}, events_on({1, 2}), 1.0);
    CHECK(only_events.fn == 2);
}

TEST_CASE("mixed inputs are rejected") {
    std::vector<Warning> mixed = warnings_on({1});
    mixed.push_back(Warning{2, EventTypeName::EndpointMalware, "OrgA", "m"});
    CHECK_THROWS_AS(hungarian_match(mixed, events_on({1}), 1.0), MixedTypeError);

    std::vector<GtEvent> other_target{GtEvent{1, EventTypeName::MaliciousEmail, "OrgB"}};
    CHECK_THROWS_AS(hungarian_match(warnings_on({1}), other_target, 1.0), MixedTypeError);
}

TEST_CASE("hungarian equals brute force on random small instances") {
    Rng rng(20180624);
    for (int trial = 0; trial < 500; ++trial) {
        const int n_w = static_cast<int>(rng.uniform() * 8);
        const int n_g = static_cast<int>(rng.uniform() * 8);
        const double window = (trial % 3 == 0) ? 0.875 : (trial % 3 == 1 ? 1.375 : 1.625);

        std::vector<Warning> ws;
        for (int i = 0; i < n_w; ++i) {
            ws.push_back(Warning{static_cast<DayIndex>(rng.uniform() * 10),
                                 EventTypeName::MaliciousEmail, "OrgA", "m"});
        }
        std::vector<GtEvent> gs;
        for (int j = 0; j < n_g; ++j) {
            gs.push_back(GtEvent{static_cast<DayIndex>(rng.uniform() * 10),
                                 EventTypeName::MaliciousEmail, "OrgA"});
        }

        MatrixXd sim(n_w, n_g);
        for (int i = 0; i < n_w; ++i) {
            for (int j = 0; j < n_g; ++j) {
                sim(i, j) = std::llabs(ws[static_cast<std::size_t>(i)].day -
                                       gs[static_cast<std::size_t>(j)].day) <= window
                                ? 1.0
                                : 0.0;
            }
        }

        const auto report = hungarian_match(ws, gs, window);
        const double best = (n_w > 0 && n_g > 0) ? brute_force_best(sim) : 0.0;
        CHECK(report.total_sim == doctest::Approx(best).epsilon(1e-12));
        CHECK(report.tp == static_cast<int>(best + 0.5));

        // matched pairs are mutually exclusive and within the window
        std::vector<bool> w_used(static_cast<std::size_t>(n_w), false);
        std::vector<bool> g_used(static_cast<std::size_t>(n_g), false);
        for (const auto& [wi, gi] : report.pairs) {
            CHECK_FALSE(w_used[static_cast<std::size_t>(wi)]);
            CHECK_FALSE(g_used[static_cast<std::size_t>(gi)]);
            w_used[static_cast<std::size_t>(wi)] = true;
            g_used[static_cast<std::size_t>(gi)] = true;
            CHECK(std::llabs(ws[static_cast<std::size_t>(wi)].day -
                             gs[static_cast<std::size_t>(gi)].day) <= window);
        }
    }
}

TEST_CASE("swapping warnings and events swaps precision and recall") {
    const auto ws = warnings_on({1, 2, 2, 7});
    const auto gs = events_on({2, 3, 9});
    const auto fwd = hungarian_match(ws, gs, 1.375);

    std::vector<Warning> ws_swapped;
    for (const auto& g : gs) ws_swapped.push_back(Warning{g.day, g.event_type, g.target, "m"});
    std::vector<GtEvent> gs_swapped;
    for (const auto& w : ws) gs_swapped.push_back(GtEvent{w.day, w.event_type, w.target});
    const auto rev = hungarian_match(ws_swapped, gs_swapped, 1.375);

    CHECK(fwd.precision == doctest::Approx(rev.recall).epsilon(1e-12));
    CHECK(fwd.recall == doctest::Approx(rev.precision).epsilon(1e-12));
    CHECK(fwd.f1 == doctest::Approx(rev.f1).epsilon(1e-12));
}

TEST_CASE("an unmatched extra warning only dilutes precision") {
    const auto base = hungarian_match(warnings_on({2, 3}), events_on({2, 3}), 0.875);
    const auto extra = hungarian_match(warnings_on({2, 3, 50}), events_on({2, 3}), 0.875);
    CHECK(extra.tp == base.tp);
    CHECK(extra.fn == base.fn);
    CHECK(extra.fp == base.fp + 1);
    CHECK(extra.precision < base.precision);
    CHECK(extra.recall == base.recall);
}

TEST_CASE("error metric fixtures") {
    const DailySeries perfect_a(0, {2, 5, 1}, SeriesKind::SignalValue);
    const auto zero = error_metrics(perfect_a, perfect_a);
    CHECK(zero.mae == 0.0);
    CHECK(zero.rmse == 0.0);
    CHECK(zero.mase == 0.0);
    CHECK(zero.mase_defined);

    // naive one-step-behind forecast of a ramp
    const DailySeries actual(0, {1, 2, 3, 4}, SeriesKind::SignalValue);
    const DailySeries naive(0, {1, 1, 2, 3}, SeriesKind::SignalValue);
    const auto m = error_metrics(actual, naive);
    CHECK(m.mae == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(m.mase == doctest::Approx(0.75).epsilon(1e-12));

    // errors [3, 4]
    const DailySeries a2(0, {3, 5}, SeriesKind::SignalValue);
    const DailySeries p2(0, {0, 1}, SeriesKind::SignalValue);
    const auto m2 = error_metrics(a2, p2);
    CHECK(m2.mae == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(m2.rmse == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
}

TEST_CASE("rmse dominates mae and both ignore the calendar") {
    Rng rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 40);
        std::vector<double> a(static_cast<std::size_t>(n)), p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] = rng.uniform(0.0, 20.0);
            p[static_cast<std::size_t>(i)] = rng.uniform(0.0, 20.0);
        }
        const auto m = error_metrics(a, p);
        CHECK(m.rmse >= m.mae - 1e-12);
    }

    const DailySeries a(0, {1, 4, 2, 8}, SeriesKind::SignalValue);
    const DailySeries p(0, {2, 3, 3, 6}, SeriesKind::SignalValue);
    const DailySeries a_shift(500, {1, 4, 2, 8}, SeriesKind::SignalValue);
    const DailySeries p_shift(500, {2, 3, 3, 6}, SeriesKind::SignalValue);
    const auto m1 = error_metrics(a, p);
    const auto m2 = error_metrics(a_shift, p_shift);
    CHECK(m1.mae == m2.mae);
    CHECK(m1.rmse == m2.rmse);
    CHECK(m1.mase == m2.mase);
}

TEST_CASE("constant actual flags MASE and keeps MAE/RMSE") {
    const DailySeries flat(0, {3, 3, 3}, SeriesKind::SignalValue);
    const DailySeries pred(0, {2, 3, 4}, SeriesKind::SignalValue);
    const auto m = error_metrics(flat, pred);
    CHECK_FALSE(m.mase_defined);
    CHECK(std::isnan(m.mase));
    CHECK(m.mae == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(error_metrics(std::vector<double>{1.0}, std::vector<double>{1.0}),
                    LengthError);
    CHECK_THROWS_AS(
        error_metrics(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}),
        LengthError);
}

TEST_CASE("lift ratios and the epsilon floor") {
    CHECK(lift(0.5, 0.25).value == doctest::Approx(2.0));
    CHECK_FALSE(lift(0.5, 0.25).floored);
    CHECK(lift(0.4, 0.4).value == doctest::Approx(1.0));

    const auto floored = lift(0.11, 0.0);
    CHECK(floored.value == doctest::Approx(11.0));
    CHECK(floored.floored);
}
