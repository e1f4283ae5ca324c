#pragma once

#include <cstdint>
#include <vector>

#include "gowerslab/primes.hpp"

namespace gowerslab {

// Truncated divisor sum  sum_{d | n, d <= R} mu(d) log(R/d). Exact; n >= 1, R > 1.
double goldston_yildirim(std::uint64_t n, double R);

// Entry n (0-based, n < N) is goldston_yildirim(W n + b_i, R), filled by the
// residue-class loop over square-free d <= R with gcd(d, W) = 1; cost O(N log R).
std::vector<double> gy_progression(std::uint64_t N, const WTrickParams& wt,
                                   std::size_t i, double R);

struct MeasureParams {
    std::uint64_t N = 0;
    double R = 0.0; // 0 means "use the default truncation level"
    double delta1 = 0.05;
    double delta2 = 0.95;
    std::uint32_t d = 2; // ambient dimension; enters the default R and the
                         // minorization constant 1/(d 2^{d+6})
};

// max(N^{1/(d 2^{d+5})}, N^{1/10}); the first exponent alone degenerates to
// R < 2 at desk scale.
double default_truncation_level(std::uint64_t N, std::uint32_t d);

struct GreenTaoMeasure {
    MeasureParams params; // params.R holds the resolved truncation level
    WTrickParams wtrick;
    std::size_t coord = 0; // which residue of wtrick this measure uses
    bool synthetic = false;
    std::uint64_t synthetic_seed = 0;
    std::vector<double> values; // over Z_N; zero outside [delta1 N, delta2 N]

    std::uint64_t modulus() const { return params.N; }
    double at(std::uint64_t n_mod) const { return values[n_mod]; }
    bool in_window(std::uint64_t n) const {
        const double x = static_cast<double>(n);
        return x >= params.delta1 * static_cast<double>(params.N) &&
               x <= params.delta2 * static_cast<double>(params.N);
    }
};

// (phi(W)/W) Lambda_R(W n + b)^2 / log R on the window, zero outside.
// N must be prime; the window must be nonempty.
GreenTaoMeasure green_tao_measure(MeasureParams params, const WTrickParams& wt,
                                  std::size_t i);

// Measure-shaped nonnegative windowed values from a counter RNG; stands in for
// the Green-Tao measure in inequality/kernel checks at composite N, where the
// checked statements hold for any nonnegative weights.
GreenTaoMeasure synthetic_measure(std::uint64_t N, std::uint64_t seed,
                                  double delta1, double delta2, std::uint32_t d);

// min over the window of nu(n) - c Lambda_bar_b(n) with c = 1/(d 2^{d+6});
// nonnegative iff the minorization holds pointwise.
double minorization_margin(const GreenTaoMeasure& nu);

} // namespace gowerslab
