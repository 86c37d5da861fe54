#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "attackcast/baseline.hpp"
#include "attackcast/errors.hpp"

using namespace attackcast;

namespace {
DailySeries counts(std::vector<double> vals) {
    return DailySeries(1000, std::move(vals), SeriesKind::EventCount);
}
} // namespace

TEST_CASE("baseline rate is the trailing mean") {
    CHECK(baseline_rate(counts({9, 9, 2, 4, 6}), 3).rate == doctest::Approx(4.0));
    CHECK(baseline_rate(counts({0, 0, 0}), 3).rate == 0.0);

    const auto est = baseline_rate(counts({3, 5}), 10);
    CHECK(est.rate == doctest::Approx(4.0));
    CHECK(est.short_window);
    CHECK_FALSE(baseline_rate(counts({3, 5}), 2).short_window);

    CHECK_THROWS_AS(baseline_rate(counts({1}), 0), LengthError);
}

TEST_CASE("point forecasts are constant round-half-even") {
    const BaselineModel model{3, 4.0, 0, false};
    const auto f = baseline_forecast(model, 2000, 3, BaselineMode::Point);
    CHECK(f.start_day() == 2000);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == 4.0);
    CHECK(f[1] == 4.0);
    CHECK(f[2] == 4.0);

    CHECK(round_half_even(2.5) == 2.0);
    CHECK(round_half_even(3.5) == 4.0);
    CHECK(round_half_even(-0.4) == 0.0);
    CHECK(round_half_even(0.49999) == 0.0);

    CHECK_THROWS_AS(baseline_forecast(model, 0, 0, BaselineMode::Point), LengthError);
}

TEST_CASE("zero rate samples are all zero") {
    const BaselineModel model{3, 0.0, 7, false};
    const auto f = baseline_forecast(model, 0, 50, BaselineMode::Sample);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i] == 0.0);
}

TEST_CASE("sample mode is seeded and reproducible") {
    const BaselineModel model{3, 4.0, 42, false};
    const auto a = baseline_forecast(model, 0, 100, BaselineMode::Sample);
    const auto b = baseline_forecast(model, 0, 100, BaselineMode::Sample);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    const BaselineModel other{3, 4.0, 43, false};
    const auto c = baseline_forecast(other, 0, 100, BaselineMode::Sample);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) any_diff |= (a[i] != c[i]);
    CHECK(any_diff);
}

TEST_CASE("sample mean approaches the rate") {
    const BaselineModel model{3, 4.0, 123, false};
    const auto f = baseline_forecast(model, 0, 10000, BaselineMode::Sample);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i];
    CHECK(sum / static_cast<double>(f.size()) == doctest::Approx(4.0).epsilon(0.025));
}
