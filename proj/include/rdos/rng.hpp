#pragma once

#include <cstdint>
#include <random>

namespace rdos {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream-splitting rule: stream k of a master seed is
/// splitmix64(seed XOR (k+1)*golden). Every consumer owns exactly one
/// stream; samplers document their per-position draw order in sampling.hpp.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

/// Seeded generator wrapping std::mt19937_64. The double mapping uses the
/// top 53 bits directly so the stream is identical on every platform
/// (std::uniform_real_distribution is not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0,1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

} // namespace rdos
