#include "gowerslab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gowerslab/rng.hpp"

namespace gowerslab {

namespace {

// distinct prime factors by trial division
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// extended gcd inverse of a mod m, gcd(a, m) = 1
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

} // namespace

double goldston_yildirim(std::uint64_t n, double R) {
    if (n < 1) throw std::invalid_argument("goldston_yildirim: n must be >= 1");
    if (!(R > 1.0)) throw std::invalid_argument("goldston_yildirim: R must be > 1");
    const double logR = std::log(R);
    const auto ps = prime_factors(n);
    // square-free divisors by subset walk; mu alternates with subset parity
    double sum = logR; // d = 1
    const std::size_t k = ps.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::uint64_t d = 1; // product of distinct prime factors, so d <= n
        for (std::size_t j = 0; j < k; ++j)
            if ((mask >> j) & 1u) d *= ps[j];
        if (static_cast<double>(d) > R) continue;
        const int mu = (__builtin_popcount(mask) & 1) ? -1 : 1;
        sum += mu * (logR - std::log(static_cast<double>(d)));
    }
    return sum;
}

std::vector<double> gy_progression(std::uint64_t N, const WTrickParams& wt,
                                   std::size_t i, double R) {
    if (!(R > 1.0)) throw std::invalid_argument("gy_progression: R must be > 1");
    const std::uint64_t b = wt.residue(i);
    if (!(R <= static_cast<double>(wt.W) * static_cast<double>(N) + static_cast<double>(b)))
        throw std::invalid_argument("gy_progression: R exceeds W*N + b");
    const double logR = std::log(R);
    std::vector<double> lam(N, 0.0);
    const auto Rfloor = static_cast<std::uint64_t>(std::floor(R));
    const auto mu = mobius_table(std::max<std::uint64_t>(Rfloor, 1));
    for (std::uint64_t d = 1; d <= Rfloor; ++d) {
        if (mu[d] == 0) continue;
        if (gcd_u64(d, wt.W) != 1) continue; // no solutions: gcd(b, W) = 1
        // W n == -b (mod d)
        const std::uint64_t winv = inverse_mod(wt.W % d == 0 ? 1 : wt.W % d, d);
        const std::uint64_t n0 = d == 1 ? 0 : (d - b % d) % d * winv % d;
        const double term = mu[d] * (logR - std::log(static_cast<double>(d)));
        for (std::uint64_t n = n0; n < N; n += d) lam[n] += term;
    }
    return lam;
}

double default_truncation_level(std::uint64_t N, std::uint32_t d) {
    const double nd = static_cast<double>(N);
    const double steep_exp = 1.0 / (static_cast<double>(d) * std::pow(2.0, d + 5.0));
    return std::max(std::pow(nd, steep_exp), std::pow(nd, 0.1));
}

GreenTaoMeasure green_tao_measure(MeasureParams params, const WTrickParams& wt,
                                  std::size_t i) {
    if (!is_prime_u64(params.N))
        throw std::invalid_argument("green_tao_measure: N = " + std::to_string(params.N) +
                                    " is not prime");
    if (!(params.delta1 > 0.0 && params.delta1 < params.delta2 && params.delta2 <= 1.0))
        throw std::invalid_argument("green_tao_measure: need 0 < delta1 < delta2 <= 1");
    if (params.delta2 * static_cast<double>(params.N) < params.delta1 * static_cast<double>(params.N))
        throw std::invalid_argument("green_tao_measure: empty window");
    if (params.R <= 0.0) params.R = default_truncation_level(params.N, params.d);

    GreenTaoMeasure nu;
    nu.params = params;
    nu.wtrick = wt;
    nu.coord = i;
    nu.values.assign(params.N, 0.0);
    const auto lam = gy_progression(params.N, wt, i, params.R);
    const double scale = static_cast<double>(wt.phi_W) / static_cast<double>(wt.W) /
                         std::log(params.R);
    const double lo = params.delta1 * static_cast<double>(params.N);
    const double hi = params.delta2 * static_cast<double>(params.N);
    for (std::uint64_t n = 0; n < params.N; ++n) {
        const double x = static_cast<double>(n);
        if (x < lo || x > hi) continue;
        nu.values[n] = scale * lam[n] * lam[n];
    }
    return nu;
}

GreenTaoMeasure synthetic_measure(std::uint64_t N, std::uint64_t seed,
                                  double delta1, double delta2, std::uint32_t d) {
    if (!(delta1 > 0.0 && delta1 < delta2 && delta2 <= 1.0))
        throw std::invalid_argument("synthetic_measure: need 0 < delta1 < delta2 <= 1");
    GreenTaoMeasure nu;
    nu.params = MeasureParams{N, 0.0, delta1, delta2, d};
    nu.wtrick = make_wtrick(0, {0});
    nu.synthetic = true;
    nu.synthetic_seed = seed;
    nu.values.assign(N, 0.0);
    const CounterRng rng(seed);
    const double lo = delta1 * static_cast<double>(N);
    const double hi = delta2 * static_cast<double>(N);
    for (std::uint64_t n = 0; n < N; ++n) {
        const double x = static_cast<double>(n);
        if (x < lo || x > hi) continue;
        nu.values[n] = 2.0 * rng.uniform01(n); // mean ~ 1 on the window
    }
    return nu;
}

double minorization_margin(const GreenTaoMeasure& nu) {
    const double c = 1.0 / (static_cast<double>(nu.params.d) *
                            std::pow(2.0, nu.params.d + 6.0));
    double margin = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 0; n < nu.params.N; ++n) {
        if (!nu.in_window(n)) continue;
        const double bound = c * modified_von_mangoldt(n, nu.wtrick, nu.coord);
        margin = std::min(margin, nu.values[n] - bound);
    }
    return margin;
}

} // namespace gowerslab
