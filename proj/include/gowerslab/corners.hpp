#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gowerslab/grid.hpp"
#include "gowerslab/measure.hpp"
#include "gowerslab/primes.hpp"

namespace gowerslab {

using Point3 = std::array<std::uint32_t, 3>; // first d coordinates used

// A subset of P_N^d: every coordinate prime and in [1, N].
struct PrimePointSet {
    std::uint32_t d = 2;
    std::uint64_t N = 0;
    std::vector<Point3> points; // lexicographically sorted, duplicate-free
};

// Validates coordinates against a fresh sieve; throws on violations.
PrimePointSet make_prime_point_set(std::uint32_t d, std::uint64_t N,
                                   std::vector<Point3> points);

// One point per line, space-separated coordinates.
PrimePointSet load_point_set(const std::string& path, std::uint32_t d, std::uint64_t N);
void save_point_set(const PrimePointSet& A, const std::string& path);

// All of P_N^d, optionally windowed to [delta1 N, delta2 N]^d.
PrimePointSet full_prime_grid(std::uint32_t d, std::uint64_t N,
                              double delta1 = 0.0, double delta2 = 1.0);

// Bernoulli(alpha) subset, counter k = row-major index over the prime grid.
PrimePointSet random_prime_subset(std::uint32_t d, std::uint64_t N, double alpha,
                                  std::uint64_t seed, double delta1 = 0.0,
                                  double delta2 = 1.0);

struct CornerReport {
    std::uint64_t N = 0;
    std::uint32_t d = 0;
    double alpha_hat = 0.0;       // |A| / pi(N)^d
    std::uint64_t nondegenerate = 0;
    std::uint64_t degenerate = 0; // t = 0 corners, i.e. |A|
    double c_hat = 0.0;           // count (log N)^{2d} / N^{d+1}
    double wall_ms = 0.0;
};

// Exact count of {x, x + t e_1, ..., x + t e_d} in A with integer t != 0,
// each unordered set once. d = 2 uses per-row bitsets with shifted
// AND+popcount; d = 3 walks candidate gaps against a hash set.
CornerReport enumerate_corners(const PrimePointSet& A);

struct WeightedCornerCount {
    double lambda_path = 0.0; // via the corner weight system and Eq. faces
    double direct_path = 0.0; // direct sum over enumerated Z_N corners
    double difference = 0.0;
};

// The d+1 face functions of the corner parameterization over Z_N with N from
// the measure: for i < d, f^{(i)} = 1_A(x with u at slot i) nu(u) where
// u = x_d - sum of the other coordinates, and f^{(d)} = 1_A. Point coordinates
// are reduced mod N; out-of-window values contribute zero through nu.
std::vector<GridFunction> corner_face_functions(const PrimePointSet& A,
                                                const GreenTaoMeasure& nu);

// Both evaluations of the weighted corner count; disagreement beyond
// 1e-9 relative throws. A must sit inside the measure window mod N.
WeightedCornerCount weighted_corner_count(const PrimePointSet& A, const GreenTaoMeasure& nu);

struct ReductionResult {
    std::uint64_t W = 1;
    std::uint32_t omega_cutoff = 0;
    std::vector<std::uint64_t> b; // argmax residue vector, coprime to W
    std::uint64_t N_prime = 0;    // smallest prime with delta2 N' >= (1+delta) N / W
    double delta1 = 0.0, delta2 = 0.0, delta_n = 0.0;
    std::vector<Point3> A_prime;  // A_b cut to [delta1 N', delta2 N']^d
    std::uint64_t class_size = 0;     // |A ∩ ((WZ)^d + b)|
    std::uint64_t coprime_total = 0;  // points of A with all residues coprime to W
    double achieved_density = 0.0;    // class_size
    double mean_density = 0.0;        // coprime_total / phi(W)^d
    bool wrap_around_free = false;    // max coordinate of A' <= N'/2
    bool empty = false;
};

// Pigeonhole choice of b (exact argmax, lexicographic ties) and the 6.1
// rescaling A -> A' in Z_{N'}.
ReductionResult wtrick_reduce(const PrimePointSet& A, std::uint32_t omega_cutoff,
                              std::pair<double, double> deltas, double delta_n = 0.01);

struct PullbackVerdict {
    bool ok = true;
    std::uint64_t corners_checked = 0;
    std::vector<std::string> violations;
};

// Every corner {x, x+t e_i} of A' must map to the corner {Wx+b, Wx+b+Wt e_i}
// of A; lists violations instead of throwing.
PullbackVerdict corner_pullback_check(const ReductionResult& red, const PrimePointSet& A);

struct SubsetRule {
    bool full = true;
    double alpha = 1.0;
    std::uint64_t seed = 0;
    double delta1 = 0.0;
    double delta2 = 1.0;
};

std::vector<CornerReport> density_scan(std::uint32_t d, std::span<const std::uint64_t> N_grid,
                                       const SubsetRule& rule);

// Fixed column order: N,d,alpha_hat,nondegenerate,degenerate,c_hat,wall_ms
std::string corner_reports_csv(std::span<const CornerReport> reports);

} // namespace gowerslab
