#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace susched {

/// splitmix64 finalizer; used to derive well-separated stream seeds from a
/// single user-visible seed.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic 64-bit generator. Draws are produced by explicit bit
/// manipulation rather than std distributions so that a given seed yields
/// the same sequence on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Derives an independent stream from (seed, stream index).
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        return Rng(mix64(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1)));
    }

    std::uint64_t next_u64() {
        ++draws_;
        return gen_();
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; never returns 0, so -log() below stays finite.
    double uniform01_open_low() { return 1.0 - uniform01(); }

    /// Exponential with the given rate; strictly positive.
    double exponential(double rate) { return -std::log(uniform01_open_low()) / rate; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Number of raw draws consumed so far.
    std::uint64_t draw_count() const { return draws_; }

private:
    std::mt19937_64 gen_;
    std::uint64_t draws_ = 0;
};

}  // namespace susched
