#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace attackcast {

// Deterministic random stream. mt19937_64 output is pinned by the standard and
// the distribution transforms below are hand-rolled, so sequences are
// bit-identical across platforms and standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Poisson draw. Knuth's product method for moderate rates, normal
    /// approximation beyond the range where exp(-lambda) is representable.
    long poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda < 500.0) {
            const double limit = std::exp(-lambda);
            long k = 0;
            double prod = uniform();
            while (prod > limit) {
                ++k;
                prod *= uniform();
            }
            return k;
        }
        const double draw = std::round(lambda + std::sqrt(lambda) * normal());
        return draw < 0.0 ? 0 : static_cast<long>(draw);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// FNV-1a over the master seed and salt strings; used to give every
/// (seed, cell) pair an independent stream regardless of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view salt_a,
                                 std::string_view salt_b = {}) {
    std::uint64_t h = 14695981039346656037ull;
    const auto mix_byte = [&h](unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(master >> (8 * i)));
    for (const char c : salt_a) mix_byte(static_cast<unsigned char>(c));
    mix_byte(0x1f);
    for (const char c : salt_b) mix_byte(static_cast<unsigned char>(c));
    return h;
}

} // namespace attackcast
