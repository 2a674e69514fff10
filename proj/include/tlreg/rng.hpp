#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tlreg {

// SplitMix64 finalizer; good avalanche, cheap.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-trial seed derivation: independent of execution order, so a grid of
// trials gives the same stream whether run serially or in parallel.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::uint64_t trial_index,
                                 std::uint64_t point_index = 0) {
    return splitmix64(splitmix64(master_seed ^ splitmix64(point_index + 1)) ^
                      (trial_index + 1));
}

// mt19937_64 with a hand-rolled Box-Muller transform. std::normal_distribution
// is implementation-defined, this is bitwise reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform on (0, 1); never returns 0 so log() below is safe
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // uniform integer in [0, n); rejection sampling, reproducible everywhere
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace tlreg
