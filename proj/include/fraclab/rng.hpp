#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fraclab {

/// splitmix64; bit-stable across platforms, unlike the standard library
/// distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // standard normal via Box-Muller
    double gaussian() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // derive an independent stream for a sub-task
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

// documented default seed: every command is deterministic out of the box
inline constexpr std::uint64_t kDefaultSeed = 0x5DEECE66Dull;

}  // namespace fraclab
