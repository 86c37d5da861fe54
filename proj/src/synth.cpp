#include "attackcast/synth.hpp"

#include "attackcast/errors.hpp"
#include "attackcast/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace attackcast {

namespace {

// rectified AR(1) with unit innovations, burned in
std::vector<double> latent_series(Rng& rng, int n, double rho) {
    double s = 0.0;
    for (int burn = 0; burn < 100; ++burn) s = rho * s + rng.normal();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& v : out) {
        s = rho * s + rng.normal();
        v = std::max(s, 0.0);
    }
    return out;
}

} // namespace

SynthData generate_synthetic(const SynthSpec& spec) {
    if (spec.days < 60) {
        throw SynthSpecError("generate_synthetic: need at least 60 days");
    }
    if (spec.base_rate <= 0.0) {
        throw SynthSpecError("generate_synthetic: base_rate must be > 0");
    }
    if (spec.lag < -30 || spec.lag > 0) {
        throw SynthSpecError("generate_synthetic: lag must lie in [-30, 0]");
    }
    if (spec.n_noise_signals < 0) {
        throw SynthSpecError("generate_synthetic: n_noise_signals must be >= 0");
    }
    if (std::abs(spec.rho) >= 1.0) {
        throw SynthSpecError("generate_synthetic: |rho| must be < 1");
    }
    if (spec.beta < 0.0) {
        throw SynthSpecError("generate_synthetic: beta must be >= 0");
    }

    const int lead = 30; // signals start this many days before GT
    const int sig_len = spec.days + lead;
    const DayIndex sig_start = spec.start_day - lead;

    SynthData data{DailySeries(0, {0.0}, SeriesKind::EventCount), SignalCatalog{},
                   "synthetic__injected"};

    Rng latent_rng(derive_seed(spec.seed, "latent"));
    std::vector<double> injected = latent_series(latent_rng, sig_len, spec.rho);

    // gt_t ~ Poisson(mu + beta * s_{t+lag}): the signal leads by |lag| days
    Rng gt_rng(derive_seed(spec.seed, "gt"));
    std::vector<double> counts(static_cast<std::size_t>(spec.days));
    for (int t = 0; t < spec.days; ++t) {
        const DayIndex day = spec.start_day + t;
        const auto sig_idx = static_cast<std::size_t>(day + spec.lag - sig_start);
        const double rate = spec.base_rate + spec.beta * injected[sig_idx];
        counts[static_cast<std::size_t>(t)] = static_cast<double>(gt_rng.poisson(rate));
    }
    data.gt = DailySeries(spec.start_day, std::move(counts), SeriesKind::EventCount);

    data.catalog.add(SignalEntry{data.injected_id, SignalSource::Synthetic, "injected",
                                 DailySeries(sig_start, std::move(injected),
                                             SeriesKind::SignalValue)});
    for (int i = 0; i < spec.n_noise_signals; ++i) {
        char keyword[16];
        std::snprintf(keyword, sizeof(keyword), "noise%02d", i + 1);
        Rng noise_rng(derive_seed(spec.seed, "noise", keyword));
        data.catalog.add(SignalEntry{std::string("synthetic__") + keyword,
                                     SignalSource::Synthetic, keyword,
                                     DailySeries(sig_start,
                                                 latent_series(noise_rng, sig_len, spec.rho),
                                                 SeriesKind::SignalValue)});
    }
    return data;
}

} // namespace attackcast
