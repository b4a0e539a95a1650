#pragma once

#include <cstdint>
#include <random>

namespace scpna {

/// Seeded generator whose output is identical across standard libraries.
///
/// std::uniform_real_distribution and std::normal_distribution are
/// implementation-defined, so the variates are derived from raw
/// mt19937_64 words here instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    /// Standard normal via Box-Muller, caching the second variate.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace scpna
