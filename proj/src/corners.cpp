#include "gowerslab/corners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "gowerslab/gowers.hpp"
#include "gowerslab/parallel.hpp"
#include "gowerslab/rng.hpp"
#include "gowerslab/weights.hpp"

namespace gowerslab {

namespace {

double now_ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// Per-row bitsets over b in [0, width]; rows keyed by the first coordinate.
struct BitRows {
    std::uint64_t width = 0; // valid bits 0..width
    std::size_t words = 0;
    std::vector<std::uint32_t> row_keys;        // ascending
    std::vector<std::vector<std::uint64_t>> rows;

    const std::vector<std::uint64_t>* row(std::uint32_t a) const {
        const auto it = std::lower_bound(row_keys.begin(), row_keys.end(), a);
        if (it == row_keys.end() || *it != a) return nullptr;
        return &rows[static_cast<std::size_t>(it - row_keys.begin())];
    }
};

BitRows build_rows(const std::vector<Point3>& pts, std::uint64_t width) {
    BitRows br;
    br.width = width;
    br.words = static_cast<std::size_t>(width / 64 + 1);
    for (const auto& p : pts) {
        if (br.row_keys.empty() || br.row_keys.back() != p[0]) {
            br.row_keys.push_back(p[0]);
            br.rows.emplace_back(br.words, 0);
        }
        br.rows.back()[p[1] >> 6] |= 1ull << (p[1] & 63);
    }
    return br;
}

// 64 bits of `words` starting at signed bit position j (zeros outside range).
std::uint64_t gather64(const std::vector<std::uint64_t>& words, std::int64_t j) {
    const auto w = static_cast<std::int64_t>(words.size());
    const std::int64_t q = j >= 0 ? j >> 6 : -((-j + 63) >> 6);
    const int r = static_cast<int>(j - (q << 6));
    std::uint64_t lo = (q >= 0 && q < w) ? words[static_cast<std::size_t>(q)] : 0;
    std::uint64_t hi = (q + 1 >= 0 && q + 1 < w) ? words[static_cast<std::size_t>(q + 1)] : 0;
    if (r == 0) return lo;
    return (lo >> r) | (hi << (64 - r));
}

// Corners of a 2-d point set: sum over ordered row pairs (a, a'), t = a' - a != 0,
// of |{b : b in A_a ∩ A_{a'} and b + t in A_a}| via AND + shifted popcount.
std::uint64_t count_corners_2d(const BitRows& br) {
    const std::size_t R = br.row_keys.size();
    std::vector<std::uint64_t> partials(R, 0); // exact per-row counts, order-free total
    parallel_for(static_cast<std::int64_t>(R), [&](std::int64_t ri) {
        const auto i = static_cast<std::size_t>(ri);
        const auto& Aa = br.rows[i];
        const std::int64_t a = br.row_keys[i];
        std::uint64_t count = 0;
        for (std::size_t k = 0; k < R; ++k) {
            if (k == i) continue;
            const std::int64_t t = static_cast<std::int64_t>(br.row_keys[k]) - a;
            const auto& Aap = br.rows[k];
            for (std::size_t w = 0; w < br.words; ++w) {
                const std::uint64_t s = Aa[w] & Aap[w];
                if (!s) continue;
                count += static_cast<std::uint64_t>(__builtin_popcountll(
                    s & gather64(Aa, static_cast<std::int64_t>(w << 6) + t)));
            }
        }
        partials[i] = count;
    });
    std::uint64_t total = 0;
    for (const auto c : partials) total += c;
    return total;
}

// Same walk, emitting each corner (a, b, t).
template <typename Fn>
void for_each_corner_2d(const BitRows& br, Fn&& fn) {
    const std::size_t R = br.row_keys.size();
    for (std::size_t i = 0; i < R; ++i) {
        const auto& Aa = br.rows[i];
        const std::int64_t a = br.row_keys[i];
        for (std::size_t k = 0; k < R; ++k) {
            if (k == i) continue;
            const std::int64_t t = static_cast<std::int64_t>(br.row_keys[k]) - a;
            const auto& Aap = br.rows[k];
            for (std::size_t w = 0; w < br.words; ++w) {
                std::uint64_t s = Aa[w] & Aap[w] &
                                  gather64(Aa, static_cast<std::int64_t>(w << 6) + t);
                while (s) {
                    const int bit = __builtin_ctzll(s);
                    s &= s - 1;
                    fn(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>((w << 6) + bit), t);
                }
            }
        }
    }
}

std::uint64_t pack_key(const Point3& p, std::uint64_t M) {
    return (static_cast<std::uint64_t>(p[0]) * M + p[1]) * M + p[2];
}

std::uint64_t count_corners_3d(const PrimePointSet& A) {
    const std::uint64_t M = A.N + 2;
    std::unordered_set<std::uint64_t> members;
    members.reserve(A.points.size() * 2);
    for (const auto& p : A.points) members.insert(pack_key(p, M));
    const PrimeTable table = sieve_primes(std::max<std::uint64_t>(A.N, 2));
    std::vector<std::uint64_t> partials(A.points.size(), 0);
    parallel_for(static_cast<std::int64_t>(A.points.size()), [&](std::int64_t pi) {
        const auto& p = A.points[static_cast<std::size_t>(pi)];
        std::uint64_t count = 0;
        // t must move the first coordinate onto another prime
        for (const std::uint64_t q : table.primes) {
            const std::int64_t t = static_cast<std::int64_t>(q) - p[0];
            if (t == 0) continue;
            const std::int64_t c1 = p[1] + t, c2 = p[2] + t;
            if (c1 < 1 || c2 < 1) continue;
            if (c1 > static_cast<std::int64_t>(A.N) || c2 > static_cast<std::int64_t>(A.N))
                continue;
            Point3 e1{static_cast<std::uint32_t>(q), p[1], p[2]};
            Point3 e2{p[0], static_cast<std::uint32_t>(c1), p[2]};
            Point3 e3{p[0], p[1], static_cast<std::uint32_t>(c2)};
            if (members.count(pack_key(e1, M)) && members.count(pack_key(e2, M)) &&
                members.count(pack_key(e3, M)))
                ++count;
        }
        partials[static_cast<std::size_t>(pi)] = count;
    });
    std::uint64_t total = 0;
    for (const auto c : partials) total += c;
    return total;
}

} // namespace

PrimePointSet make_prime_point_set(std::uint32_t d, std::uint64_t N,
                                   std::vector<Point3> points) {
    if (d != 2 && d != 3) throw std::invalid_argument("PrimePointSet: d must be 2 or 3");
    const PrimeTable table = sieve_primes(std::max<std::uint64_t>(N, 2));
    for (auto& p : points) {
        for (std::uint32_t j = d; j < 3; ++j) p[j] = 0;
        for (std::uint32_t j = 0; j < d; ++j) {
            if (p[j] < 1 || p[j] > N)
                throw std::invalid_argument("PrimePointSet: coordinate out of [1, N]");
            if (!table.is_prime[p[j]])
                throw std::invalid_argument("PrimePointSet: coordinate " +
                                            std::to_string(p[j]) + " is not prime");
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    PrimePointSet A;
    A.d = d;
    A.N = N;
    A.points = std::move(points);
    return A;
}

PrimePointSet load_point_set(const std::string& path, std::uint32_t d, std::uint64_t N) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_point_set: cannot open " + path);
    std::vector<Point3> pts;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Point3 p{0, 0, 0};
        std::uint32_t j = 0;
        std::uint64_t c;
        while (ls >> c) {
            if (j >= d) throw std::invalid_argument("load_point_set: too many coordinates");
            p[j++] = static_cast<std::uint32_t>(c);
        }
        if (j == 0) continue; // blank line
        if (j != d) throw std::invalid_argument("load_point_set: expected " +
                                                std::to_string(d) + " coordinates per line");
        pts.push_back(p);
    }
    return make_prime_point_set(d, N, std::move(pts));
}

void save_point_set(const PrimePointSet& A, const std::string& path) {
    std::ofstream out(path);
    for (const auto& p : A.points) {
        for (std::uint32_t j = 0; j < A.d; ++j) out << p[j] << (j + 1 < A.d ? " " : "");
        out << "\n";
    }
}

namespace {

std::vector<std::uint64_t> windowed_primes(std::uint64_t N, double delta1, double delta2) {
    const PrimeTable table = sieve_primes(std::max<std::uint64_t>(N, 2));
    std::vector<std::uint64_t> out;
    const double lo = delta1 * static_cast<double>(N);
    const double hi = delta2 * static_cast<double>(N);
    for (const std::uint64_t p : table.primes) {
        const double x = static_cast<double>(p);
        if (x >= lo && x <= hi && p <= N) out.push_back(p);
    }
    return out;
}

} // namespace

PrimePointSet full_prime_grid(std::uint32_t d, std::uint64_t N, double delta1, double delta2) {
    const auto prs = windowed_primes(N, delta1, delta2);
    std::vector<Point3> pts;
    if (d == 2) {
        pts.reserve(prs.size() * prs.size());
        for (const auto a : prs)
            for (const auto b : prs)
                pts.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), 0});
    } else {
        for (const auto a : prs)
            for (const auto b : prs)
                for (const auto c : prs)
                    pts.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                   static_cast<std::uint32_t>(c)});
    }
    PrimePointSet A;
    A.d = d;
    A.N = N;
    A.points = std::move(pts); // construction preserves sortedness
    return A;
}

PrimePointSet random_prime_subset(std::uint32_t d, std::uint64_t N, double alpha,
                                  std::uint64_t seed, double delta1, double delta2) {
    const auto prs = windowed_primes(N, delta1, delta2);
    const CounterRng rng(seed);
    std::vector<Point3> pts;
    std::uint64_t k = 0;
    if (d == 2) {
        for (const auto a : prs)
            for (const auto b : prs) {
                if (rng.uniform01(k++) < alpha)
                    pts.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), 0});
            }
    } else {
        for (const auto a : prs)
            for (const auto b : prs)
                for (const auto c : prs) {
                    if (rng.uniform01(k++) < alpha)
                        pts.push_back({static_cast<std::uint32_t>(a),
                                       static_cast<std::uint32_t>(b),
                                       static_cast<std::uint32_t>(c)});
                }
    }
    PrimePointSet A;
    A.d = d;
    A.N = N;
    A.points = std::move(pts);
    return A;
}

CornerReport enumerate_corners(const PrimePointSet& A) {
    if (A.d != 2 && A.d != 3) throw std::invalid_argument("enumerate_corners: d must be 2 or 3");
    const auto t0 = std::chrono::steady_clock::now();
    CornerReport rep;
    rep.N = A.N;
    rep.d = A.d;
    rep.degenerate = A.points.size(); // the t = 0 corners are the points themselves
    if (A.d == 2) {
        const BitRows br = build_rows(A.points, A.N);
        rep.nondegenerate = count_corners_2d(br);
    } else {
        rep.nondegenerate = count_corners_3d(A);
    }
    const double piN = static_cast<double>(sieve_primes(std::max<std::uint64_t>(A.N, 2)).primes.size());
    double denom = 1.0;
    for (std::uint32_t j = 0; j < A.d; ++j) denom *= piN;
    rep.alpha_hat = denom > 0 ? static_cast<double>(A.points.size()) / denom : 0.0;
    const double logN = std::log(static_cast<double>(A.N));
    double scale = std::pow(logN, 2.0 * A.d);
    for (std::uint32_t j = 0; j < A.d + 1; ++j) scale /= static_cast<double>(A.N);
    rep.c_hat = static_cast<double>(rep.nondegenerate) * scale;
    rep.wall_ms = now_ms_since(t0);
    return rep;
}

std::vector<GridFunction> corner_face_functions(const PrimePointSet& A,
                                                const GreenTaoMeasure& nu) {
    const auto Nu = static_cast<std::uint32_t>(nu.params.N);
    const std::uint32_t d = A.d;
    std::vector<std::vector<std::uint32_t>> mapped;
    mapped.reserve(A.points.size());
    for (const auto& p : A.points) {
        std::vector<std::uint32_t> q(d);
        for (std::uint32_t j = 0; j < d; ++j) q[j] = static_cast<std::uint32_t>(p[j] % Nu);
        mapped.push_back(std::move(q));
    }
    const GridFunction ind = indicator_from_set(d, Nu, mapped);
    std::vector<GridFunction> fs;
    for (std::uint32_t i = 0; i < d; ++i) {
        GridFunction f = GridFunction::zeros(d, Nu);
        std::vector<std::uint32_t> coords(d); // face axes: [0..d] minus i, ascending
        std::vector<std::uint32_t> point(d);  // the grid point fed to 1_A
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            std::size_t rem = idx;
            for (std::uint32_t j = d; j-- > 0;) {
                coords[j] = static_cast<std::uint32_t>(rem % Nu);
                rem /= Nu;
            }
            // coords = (x_0,...,x_{i-1}, x_{i+1},...,x_{d-1}, x_d); x_d last
            std::int64_t u = coords[d - 1];
            for (std::uint32_t j = 0; j + 1 < d; ++j) u -= coords[j];
            u %= static_cast<std::int64_t>(Nu);
            if (u < 0) u += Nu;
            const double nuv = nu.values[static_cast<std::uint64_t>(u)];
            if (nuv == 0.0) continue;
            std::uint32_t pj = 0;
            for (std::uint32_t j = 0; j < d; ++j)
                point[j] = (j == i) ? static_cast<std::uint32_t>(u) : coords[pj++];
            f.values[idx] = ind.values[ind.index(point)] * nuv;
        }
        fs.push_back(std::move(f));
    }
    fs.push_back(ind);
    return fs;
}

WeightedCornerCount weighted_corner_count(const PrimePointSet& A, const GreenTaoMeasure& nu) {
    const std::uint64_t N = nu.params.N;
    const std::uint32_t d = A.d;
    // coordinate mapping: point coordinates land in Z_N by reduction mod N
    std::vector<std::vector<std::uint32_t>> mapped;
    mapped.reserve(A.points.size());
    std::unordered_set<std::uint64_t> seen;
    for (const auto& p : A.points) {
        std::vector<std::uint32_t> q(d);
        std::uint64_t flat = 0;
        for (std::uint32_t j = 0; j < d; ++j) {
            q[j] = static_cast<std::uint32_t>(p[j] % N);
            flat = flat * N + q[j];
            if (!nu.in_window(q[j]))
                throw std::invalid_argument(
                    "weighted_corner_count: point coordinate " + std::to_string(p[j]) +
                    " falls outside the measure window after mod-" + std::to_string(N) +
                    " mapping");
        }
        if (!seen.insert(flat).second)
            throw std::invalid_argument("weighted_corner_count: two points of A collide mod N");
        mapped.push_back(std::move(q));
    }

    const std::uint32_t Nu = static_cast<std::uint32_t>(N);
    WeightSystem ws = corner_weight_system(d, nu);
    const std::vector<GridFunction> fs = corner_face_functions(A, nu);
    const GridFunction& ind = fs.back();

    WeightedCornerCount out;
    out.lambda_path = lambda_form(fs, ws);

    // direct path: sum over base points of A and all gaps t in Z_N
    std::vector<std::uint8_t> member(ind.values.size());
    for (std::size_t i = 0; i < member.size(); ++i) member[i] = ind.values[i] != 0.0;
    const double direct_sum = parallel_sum(
        static_cast<std::int64_t>(mapped.size()), [&](std::int64_t pi) {
            const auto& q = mapped[static_cast<std::size_t>(pi)];
            double base_w = 1.0;
            for (std::uint32_t j = 0; j < d; ++j) base_w *= nu.values[q[j]];
            if (base_w == 0.0) return 0.0;
            double s = 0.0;
            std::vector<std::uint32_t> shifted(d);
            for (std::uint32_t t = 0; t < Nu; ++t) {
                double w = base_w;
                bool ok = true;
                for (std::uint32_t j = 0; j < d && ok; ++j) {
                    const std::uint32_t c = (q[j] + t) % Nu;
                    std::size_t idx = 0;
                    for (std::uint32_t jj = 0; jj < d; ++jj)
                        idx = idx * Nu + (jj == j ? c : q[jj]);
                    if (!member[idx]) {
                        ok = false;
                        break;
                    }
                    w *= nu.values[c];
                }
                if (ok) s += w;
            }
            return s;
        });
    double denom = 1.0;
    for (std::uint32_t j = 0; j < d + 1; ++j) denom *= static_cast<double>(Nu);
    out.direct_path = direct_sum / denom;
    out.difference = out.lambda_path - out.direct_path;
    const double scale = std::max(std::abs(out.lambda_path), std::abs(out.direct_path));
    if (std::abs(out.difference) > 1e-9 * std::max(scale, 1e-300) && scale > 0)
        throw std::runtime_error("weighted_corner_count: paths disagree by " +
                                 std::to_string(out.difference));
    return out;
}

ReductionResult wtrick_reduce(const PrimePointSet& A, std::uint32_t omega_cutoff,
                              std::pair<double, double> deltas, double delta_n) {
    const auto [delta1, delta2] = deltas;
    if (!(delta1 > 0.0 && delta1 < delta2 && delta2 <= 1.0))
        throw std::invalid_argument("wtrick_reduce: need 0 < delta1 < delta2 <= 1");
    ReductionResult res;
    res.omega_cutoff = omega_cutoff;
    res.delta1 = delta1;
    res.delta2 = delta2;
    res.delta_n = delta_n;
    const WTrickParams wt = make_wtrick(omega_cutoff, {});
    const std::uint64_t W = wt.W;
    res.W = W;
    const std::uint32_t d = A.d;

    // coprime residues of Z_W, ascending
    std::vector<std::uint32_t> coprime;
    if (W == 1) {
        coprime.push_back(0); // identity reduction
    } else {
        for (std::uint64_t r = 1; r < W; ++r)
            if (gcd_u64(r, W) == 1) coprime.push_back(static_cast<std::uint32_t>(r));
    }
    std::vector<std::uint32_t> rindex(W, ~0u);
    for (std::size_t i = 0; i < coprime.size(); ++i) rindex[coprime[i]] = static_cast<std::uint32_t>(i);

    const std::size_t classes = [&] {
        std::size_t c = 1;
        for (std::uint32_t j = 0; j < d; ++j) c *= coprime.size();
        return c;
    }();
    std::vector<std::uint64_t> counts(classes, 0);
    std::uint64_t coprime_total = 0;
    for (const auto& p : A.points) {
        std::size_t idx = 0;
        bool ok = true;
        for (std::uint32_t j = 0; j < d && ok; ++j) {
            const std::uint32_t r = rindex[p[j] % W];
            if (r == ~0u) ok = false;
            else idx = idx * coprime.size() + r;
        }
        if (!ok) continue;
        ++counts[idx];
        ++coprime_total;
    }
    res.coprime_total = coprime_total;
    res.mean_density = classes > 0 ? static_cast<double>(coprime_total) / static_cast<double>(classes)
                                   : 0.0;
    if (A.points.empty()) {
        res.empty = true;
        return res;
    }
    // exact argmax; ascending scan makes ties lexicographic
    std::size_t best = 0;
    for (std::size_t i = 1; i < classes; ++i)
        if (counts[i] > counts[best]) best = i;
    res.class_size = counts[best];
    res.achieved_density = static_cast<double>(counts[best]);
    res.b.assign(d, 0);
    {
        std::size_t rem = best;
        for (std::uint32_t j = d; j-- > 0;) {
            res.b[j] = coprime[rem % coprime.size()];
            rem /= coprime.size();
        }
    }

    // smallest prime N' with delta2 N' >= (1 + delta) N / W
    const double target = (1.0 + delta_n) * static_cast<double>(A.N) /
                          (static_cast<double>(W) * delta2);
    std::uint64_t Np = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(target)));
    while (!is_prime_u64(Np)) ++Np;
    res.N_prime = Np;

    const double lo = delta1 * static_cast<double>(Np);
    const double hi = delta2 * static_cast<double>(Np);
    std::uint32_t max_coord = 0;
    for (const auto& p : A.points) {
        Point3 n{0, 0, 0};
        bool in_class = true;
        for (std::uint32_t j = 0; j < d && in_class; ++j) {
            if (p[j] % W != res.b[j]) in_class = false;
            else n[j] = static_cast<std::uint32_t>((p[j] - res.b[j]) / W);
        }
        if (!in_class) continue;
        bool in_window = true;
        for (std::uint32_t j = 0; j < d; ++j) {
            const double x = static_cast<double>(n[j]);
            if (x < lo || x > hi) in_window = false;
        }
        if (!in_window) continue;
        for (std::uint32_t j = 0; j < d; ++j) max_coord = std::max(max_coord, n[j]);
        res.A_prime.push_back(n);
    }
    std::sort(res.A_prime.begin(), res.A_prime.end());
    res.wrap_around_free = static_cast<double>(max_coord) <= static_cast<double>(Np) / 2.0;
    return res;
}

PullbackVerdict corner_pullback_check(const ReductionResult& red, const PrimePointSet& A) {
    PullbackVerdict v;
    const std::uint32_t d = A.d;
    const std::uint64_t W = red.W;
    // A.points is sorted; membership by binary search
    const auto check_point = [&](const Point3& n, std::int64_t t, std::uint32_t axis) {
        Point3 img{0, 0, 0};
        for (std::uint32_t j = 0; j < d; ++j) {
            std::int64_t c = static_cast<std::int64_t>(n[j]);
            if (j == axis) c += t;
            const std::int64_t mapped = static_cast<std::int64_t>(W) * c +
                                        static_cast<std::int64_t>(red.b[j]);
            if (mapped < 1) return false;
            img[j] = static_cast<std::uint32_t>(mapped);
        }
        return std::binary_search(A.points.begin(), A.points.end(), img);
    };

    if (d == 2) {
        const std::uint64_t width = red.N_prime;
        const BitRows br = build_rows(red.A_prime, width);
        for_each_corner_2d(br, [&](std::uint32_t a, std::uint32_t b, std::int64_t t) {
            ++v.corners_checked;
            const Point3 base{a, b, 0};
            const bool ok = check_point(base, 0, 0) && check_point(base, t, 0) &&
                            check_point(base, t, 1);
            if (!ok && v.violations.size() < 16)
                v.violations.push_back("corner at (" + std::to_string(a) + "," +
                                       std::to_string(b) + ") t=" + std::to_string(t));
        });
    } else {
        // d = 3: direct walk over A' with gap candidates from the first axis
        const auto& ap = red.A_prime; // sorted
        const auto in_ap = [&](const Point3& q) {
            return std::binary_search(ap.begin(), ap.end(), q);
        };
        for (const auto& n : red.A_prime) {
            for (const auto& m : red.A_prime) {
                const std::int64_t t = static_cast<std::int64_t>(m[0]) - n[0];
                if (t == 0 || m[1] != n[1] || m[2] != n[2]) continue;
                if (static_cast<std::int64_t>(n[1]) + t < 0 ||
                    static_cast<std::int64_t>(n[2]) + t < 0)
                    continue;
                Point3 e2{n[0], static_cast<std::uint32_t>(n[1] + t), n[2]};
                Point3 e3{n[0], n[1], static_cast<std::uint32_t>(n[2] + t)};
                if (!in_ap(e2) || !in_ap(e3)) continue;
                ++v.corners_checked;
                const bool ok = check_point(n, 0, 0) && check_point(n, t, 0) &&
                                check_point(n, t, 1) && check_point(n, t, 2);
                if (!ok && v.violations.size() < 16)
                    v.violations.push_back("corner at first axis " + std::to_string(n[0]));
            }
        }
    }
    v.ok = v.violations.empty();
    return v;
}

std::vector<CornerReport> density_scan(std::uint32_t d, std::span<const std::uint64_t> N_grid,
                                       const SubsetRule& rule) {
    std::vector<CornerReport> out;
    for (const std::uint64_t N : N_grid) {
        PrimePointSet A = rule.full
                              ? full_prime_grid(d, N, rule.delta1, rule.delta2)
                              : random_prime_subset(d, N, rule.alpha, rule.seed, rule.delta1,
                                                    rule.delta2);
        out.push_back(enumerate_corners(A));
    }
    return out;
}

std::string corner_reports_csv(std::span<const CornerReport> reports) {
    std::ostringstream os;
    os << "N,d,alpha_hat,nondegenerate,degenerate,c_hat,wall_ms\n";
    os.precision(17);
    for (const auto& r : reports) {
        os << r.N << ',' << r.d << ',' << r.alpha_hat << ',' << r.nondegenerate << ','
           << r.degenerate << ',' << r.c_hat << ',' << r.wall_ms << '\n';
    }
    return os.str();
}

} // namespace gowerslab
