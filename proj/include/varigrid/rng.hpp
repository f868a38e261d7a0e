#pragma once

#include <cstdint>
#include <random>

namespace varigrid {

/// Deterministic uniform generator for randomized experiments and tests.
/// mt19937_64 with explicit 53-bit scaling, so a seed produces the same
/// stream on every platform (std::uniform_real_distribution does not
/// guarantee that).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0,1).
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace varigrid
