#include <doctest.h>

#include "gowerslab/measure.hpp"
#include "gowerslab/numeric.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace gowerslab;

TEST_CASE("goldston-yildirim pointwise") {
    CHECK(goldston_yildirim(1, 50.0) == doctest::Approx(std::log(50.0)).epsilon(1e-15));
    // prime beyond the truncation: only d = 1 contributes
    CHECK(goldston_yildirim(101, 50.0) == doctest::Approx(std::log(50.0)).epsilon(1e-15));
    // n = 6, R = 10: the four-term sum telescopes to zero
    CHECK(goldston_yildirim(6, 10.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(goldston_yildirim(0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(goldston_yildirim(5, 1.0), std::invalid_argument);
}

TEST_CASE("gy_progression equals the pointwise divisor sum") {
    const std::uint64_t N = 1000;
    for (const auto& [cutoff, b] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{
             {5, 1}, {5, 7}, {3, 5}, {0, 1}}) {
        const WTrickParams wt = make_wtrick(cutoff, {b});
        const double R = 40.0;
        const auto lam = gy_progression(N, wt, 0, R);
        for (std::uint64_t n = 0; n < N; ++n) {
            const std::uint64_t m = wt.W * n + b;
            if (m == 0) continue;
            CHECK(rel_close(lam[n], oracles::gy_divisor_sum(m, R), 1e-12, 1e-12));
        }
    }
}

TEST_CASE("gy_progression: entries for large primes equal log R") {
    const WTrickParams wt = make_wtrick(5, {1});
    const double R = 40.0;
    const auto lam = gy_progression(2000, wt, 0, R);
    const PrimeTable t = sieve_primes(30 * 2000 + 1);
    for (std::uint64_t n = 0; n < 2000; ++n) {
        const std::uint64_t m = 30 * n + 1;
        if (m > static_cast<std::uint64_t>(R) && t.is_prime[m])
            CHECK(lam[n] == doctest::Approx(std::log(R)).epsilon(1e-13));
    }
}

TEST_CASE("green-tao measure shape") {
    const WTrickParams wt = make_wtrick(7, {1});
    MeasureParams p;
    p.N = 521;
    p.d = 2;
    const GreenTaoMeasure nu = green_tao_measure(p, wt, 0);
    CHECK(nu.params.R == doctest::Approx(default_truncation_level(521, 2)));
    for (std::uint64_t n = 0; n < 521; ++n) {
        CHECK(nu.values[n] >= 0.0);
        CHECK(std::isfinite(nu.values[n]));
        if (!nu.in_window(n)) CHECK(nu.values[n] == 0.0);
    }
    // in-window prime W n + b beyond R carries (phi(W)/W) log R
    const double logR = std::log(nu.params.R);
    const PrimeTable t = sieve_primes(210 * 521 + 1);
    for (std::uint64_t n = 30; n < 450; ++n)
        if (t.is_prime[210 * n + 1])
            CHECK(nu.values[n] ==
                  doctest::Approx(48.0 / 210.0 * logR).epsilon(1e-12));
    CHECK(minorization_margin(nu) >= 0.0);

    MeasureParams bad = p;
    bad.N = 520; // composite
    CHECK_THROWS_AS(green_tao_measure(bad, wt, 0), std::invalid_argument);
    MeasureParams empty = p;
    empty.delta1 = 0.9;
    empty.delta2 = 0.2;
    CHECK_THROWS_AS(green_tao_measure(empty, wt, 0), std::invalid_argument);
}

TEST_CASE("default truncation level") {
    CHECK(default_truncation_level(10007, 2) ==
          doctest::Approx(std::pow(10007.0, 0.1)));
    // the d-dependent exponent branch only wins at astronomical N
    CHECK(default_truncation_level(100003, 3) ==
          doctest::Approx(std::pow(100003.0, 0.1)));
}

TEST_CASE("synthetic measure is windowed, nonnegative, reproducible") {
    const GreenTaoMeasure a = synthetic_measure(64, 9, 0.05, 0.95, 2);
    const GreenTaoMeasure b = synthetic_measure(64, 9, 0.05, 0.95, 2);
    CHECK(a.values == b.values);
    for (std::uint64_t n = 0; n < 64; ++n) {
        CHECK(a.values[n] >= 0.0);
        if (!a.in_window(n)) CHECK(a.values[n] == 0.0);
    }
}
