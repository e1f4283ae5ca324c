#pragma once

#include <cstdint>

namespace gowerslab {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based generator: value(k) is a pure function of (seed, substream, k),
// so parallel consumers and re-runs agree bit-for-bit on any platform.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : stream_(splitmix64(seed)) {}
    CounterRng(std::uint64_t seed, std::uint64_t substream)
        : stream_(splitmix64(splitmix64(seed) ^ (kGolden * (substream + 1)))) {}

    std::uint64_t bits(std::uint64_t k) const { return splitmix64(stream_ ^ k); }

    // uniform in [0, 1)
    double uniform01(std::uint64_t k) const {
        return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
    }

    // uniform in [-1, 1)
    double symmetric(std::uint64_t k) const { return 2.0 * uniform01(k) - 1.0; }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t k, std::uint64_t n) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(bits(k)) * n) >> 64);
    }

  private:
    std::uint64_t stream_;
};

} // namespace gowerslab
