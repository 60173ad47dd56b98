#pragma once

#include <cstdint>
#include <random>

namespace tsg {

/// Deterministic uniform generator.
///
/// Doubles are produced by a fixed 53-bit mapping instead of
/// std::uniform_real_distribution (whose output sequence is
/// implementation-defined), so a given seed yields the same stream on every
/// platform. Reports built on top of this are required to be byte-identical
/// for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// uniform in [0, 1)
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// uniform index in [0, n); n must be positive
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// uniform integer in [lo, hi] inclusive
    long range(long lo, long hi) { return lo + static_cast<long>(index(static_cast<std::size_t>(hi - lo + 1))); }

private:
    std::mt19937_64 engine_;
};

} // namespace tsg
