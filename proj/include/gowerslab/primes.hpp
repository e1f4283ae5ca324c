#pragma once

#include <cstdint>
#include <vector>

namespace gowerslab {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint8_t> is_prime; // indexed 0..limit
    std::vector<std::uint64_t> primes;  // ascending

    bool contains(std::uint64_t n) const { return n <= limit && is_prime[n]; }
};

// Sieve of Eratosthenes, exact for all n <= limit. Throws for limit < 2.
PrimeTable sieve_primes(std::uint64_t limit);

// mu[n] for n = 0..limit (mu[0] = 0). Linear-time sieve over the prime table.
std::vector<std::int8_t> mobius_table(std::uint64_t limit);

// Deterministic Miller-Rabin, exact for all 64-bit n.
bool is_prime_u64(std::uint64_t n);

// W-trick parameters: W = product of primes <= omega_cutoff (empty product = 1)
// and residues b_i coprime to W.
struct WTrickParams {
    std::uint32_t omega_cutoff = 0;
    std::uint64_t W = 1;
    std::uint64_t phi_W = 1;
    std::vector<std::uint64_t> residues;

    std::uint64_t residue(std::size_t i) const { return residues.at(i); }
};

// Throws if some gcd(b_i, W) > 1, naming the offending residue.
WTrickParams make_wtrick(std::uint32_t omega_cutoff, std::vector<std::uint64_t> b);

// (phi(W)/W) log(Wn + b_i) when Wn + b_i is prime, else 0.
double modified_von_mangoldt(std::uint64_t n, const WTrickParams& wt, std::size_t i);

// (1/N) sum_{n=1..N} of the above.
double von_mangoldt_mean(std::uint64_t N, const WTrickParams& wt, std::size_t i);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

} // namespace gowerslab
