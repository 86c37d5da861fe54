#pragma once

#include "attackcast/series.hpp"

#include <cstdint>
#include <string>

namespace attackcast {

/// Synthetic dataset recipe: a rectified AR(1) latent signal drives ground
/// truth counts through a Poisson emission with the signal leading by |lag|
/// days; noise signals are independent copies of the same latent process.
struct SynthSpec {
    std::uint64_t seed = 0;
    int days = 400;
    double base_rate = 5.0; // Poisson floor, > 0
    double beta = 0.0;      // injected coefficient
    int lag = -7;           // in [-30, 0]
    int n_noise_signals = 10;
    double rho = 0.8; // latent autocorrelation
    DayIndex start_day = 17167; // 2017-01-01
};

struct SynthData {
    DailySeries gt;
    SignalCatalog catalog;
    std::string injected_id;
};

/// Fully reproducible from spec.seed. All signals start 30 days before the
/// ground truth so every lag in [-30, 0] has full overlap.
SynthData generate_synthetic(const SynthSpec& spec);

} // namespace attackcast
