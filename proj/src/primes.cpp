#include "gowerslab/primes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gowerslab {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("sieve_primes: limit must be >= 2");
    PrimeTable t;
    t.limit = limit;
    t.is_prime.assign(limit + 1, 1);
    t.is_prime[0] = t.is_prime[1] = 0;
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
        if (!t.is_prime[p]) continue;
        for (std::uint64_t q = p * p; q <= limit; q += p) t.is_prime[q] = 0;
    }
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (t.is_prime[n]) t.primes.push_back(n);
    return t;
}

std::vector<std::int8_t> mobius_table(std::uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("mobius_table: limit must be >= 1");
    std::vector<std::int8_t> mu(limit + 1, 1);
    mu[0] = 0;
    std::vector<std::uint8_t> sieved(limit + 1, 0);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (sieved[p]) continue;
        // p is prime
        for (std::uint64_t q = p; q <= limit; q += p) {
            sieved[q] = 1;
            mu[q] = static_cast<std::int8_t>(-mu[q]);
        }
        if (p <= limit / p) {
            const std::uint64_t p2 = p * p;
            for (std::uint64_t q = p2; q <= limit; q += p2) mu[q] = 0;
        }
    }
    return mu;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                                  19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // exact for all 64-bit n with this witness set
    for (const std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                                  19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

WTrickParams make_wtrick(std::uint32_t omega_cutoff, std::vector<std::uint64_t> b) {
    WTrickParams wt;
    wt.omega_cutoff = omega_cutoff;
    wt.W = 1;
    wt.phi_W = 1;
    if (omega_cutoff >= 2) {
        const PrimeTable t = sieve_primes(omega_cutoff);
        for (const std::uint64_t p : t.primes) {
            wt.W *= p;
            wt.phi_W *= p - 1;
        }
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (gcd_u64(b[i], wt.W) != 1)
            throw std::invalid_argument("make_wtrick: residue b[" + std::to_string(i) +
                                        "] = " + std::to_string(b[i]) +
                                        " is not coprime to W = " + std::to_string(wt.W));
    }
    wt.residues = std::move(b);
    return wt;
}

double modified_von_mangoldt(std::uint64_t n, const WTrickParams& wt, std::size_t i) {
    const std::uint64_t m = wt.W * n + wt.residue(i);
    if (!is_prime_u64(m)) return 0.0;
    return static_cast<double>(wt.phi_W) / static_cast<double>(wt.W) *
           std::log(static_cast<double>(m));
}

double von_mangoldt_mean(std::uint64_t N, const WTrickParams& wt, std::size_t i) {
    double s = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) s += modified_von_mangoldt(n, wt, i);
    return s / static_cast<double>(N);
}

} // namespace gowerslab
