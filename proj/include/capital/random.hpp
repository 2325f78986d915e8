#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace capital {

/// Random stream used by every stochastic component. mt19937_64 output is
/// fully specified by the standard, and the draws below avoid the
/// implementation-defined std distributions, so trajectories are identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound) from exactly one draw (multiply-high).
    std::uint64_t below(std::uint64_t bound) { return scale_below(engine_(), bound); }

    /// High 64 bits of word * bound.
    static constexpr std::uint64_t scale_below(std::uint64_t word, std::uint64_t bound) {
        const std::uint64_t lo_mask = 0xffffffffULL;
        const std::uint64_t a_lo = word & lo_mask, a_hi = word >> 32;
        const std::uint64_t b_lo = bound & lo_mask, b_hi = bound >> 32;
        const std::uint64_t lo_lo = a_lo * b_lo;
        const std::uint64_t hi_lo = a_hi * b_lo;
        const std::uint64_t lo_hi = a_lo * b_hi;
        const std::uint64_t cross = (lo_lo >> 32) + (hi_lo & lo_mask) + lo_hi;
        return a_hi * b_hi + (hi_lo >> 32) + (cross >> 32);
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a base seed and a coordinate tuple. Order matters.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = mix64(base);
    for (auto p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

} // namespace capital
