#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qrope {

/// Deterministic RNG wrapper.  mt19937_64 emits a standardized stream, and
/// the double/normal conversions below are hand-rolled so that results are
/// identical across standard libraries and platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // modulo bias is negligible for n << 2^64 and keeps the stream portable
        return gen_() % n;
    }

    /// Standard normal via Box-Muller (one value per call, no caching).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double two_pi = 6.28318530717958647692;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    /// Random sign, +1 or -1.
    double sign() { return (gen_() & 1u) ? 1.0 : -1.0; }

  private:
    std::mt19937_64 gen_;
};

/// splitmix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a over a string; combined with splitmix64 this derives per-purpose
/// sub-seeds from one user seed: derive_seed(seed, "scenes"), ...
constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) {
    return splitmix64(seed ^ fnv1a(purpose));
}

}  // namespace qrope
