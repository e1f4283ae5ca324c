#include <doctest.h>

#include "gowerslab/numeric.hpp"
#include "gowerslab/rng.hpp"
#include "gowerslab/verify.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace gowerslab;

namespace {

IndexSet face_omitting(std::uint32_t d, std::uint32_t i) {
    return IndexSet{d + 1, ((1u << (d + 1)) - 1u) & ~(1u << i)};
}

GreenTaoMeasure genuine_measure(std::uint64_t N) {
    MeasureParams p;
    p.N = N;
    p.d = 2;
    p.R = std::sqrt(static_cast<double>(N));
    p.delta1 = 1e-6;
    p.delta2 = 1.0;
    return green_tao_measure(p, make_wtrick(7, {1}), 0);
}

} // namespace

TEST_CASE("forms family validation") {
    CHECK_NOTHROW(forms_family(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}}));
    // identically zero form
    CHECK_THROWS_AS(forms_family(2, {{{0, 0}, 3}}), std::invalid_argument);
    // proportional homogeneous parts, even with different constants
    CHECK_THROWS_AS(forms_family(1, {{{1}, 0}, {{2}, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(forms_family(2, {{{1, 1}, 0}, {{2, 2}, 0}}), std::invalid_argument);
}

TEST_CASE("linear forms check: single form and the product identity") {
    const GreenTaoMeasure nu = genuine_measure(521);
    const auto single = check_linear_forms(nu, forms_family(1, {{{1}, 0}}), std::nullopt);
    double mean = 0.0;
    for (const double v : nu.values) mean += v;
    mean /= static_cast<double>(nu.values.size());
    CHECK(rel_close(single.quantities["mean"].get<double>(), mean, 1e-12, 1e-15));

    const auto pair =
        check_linear_forms(nu, forms_family(2, {{{1, 0}, 0}, {{0, 1}, 0}}), std::nullopt);
    // E nu(x)nu(y) = (E nu)^2, so the signed deviations satisfy
    // delta_pair = delta_single (2 + delta_single) literally
    const double ds = single.deviations["signed"].get<double>();
    const double dp = pair.deviations["signed"].get<double>();
    CHECK(rel_close(dp, ds * (2.0 + ds), 1e-12, 1e-14));
}

TEST_CASE("linear forms check: sampled mode is reproducible") {
    const GreenTaoMeasure nu = genuine_measure(127);
    const FormsFamily fam = forms_family(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}});
    const auto a = check_linear_forms(nu, fam, SampledMode{20000, 9});
    const auto b = check_linear_forms(nu, fam, SampledMode{20000, 9});
    CHECK(a.quantities["mean"].get<double>() == b.quantities["mean"].get<double>());
    const auto c = check_linear_forms(nu, fam, SampledMode{20000, 10});
    CHECK(a.quantities["mean"].get<double>() != c.quantities["mean"].get<double>());
    // sampled mean should sit near the exact mean
    const auto exact = check_linear_forms(nu, fam, std::nullopt);
    CHECK(std::abs(a.quantities["mean"].get<double>() - exact.quantities["mean"].get<double>()) <
          10.0 * a.quantities["stderr"].get<double>() + 0.05);
}

TEST_CASE("linear forms check rejects oversized exact runs") {
    const GreenTaoMeasure nu = genuine_measure(100003);
    const FormsFamily fam = forms_family(2, {{{1, 0}, 0}, {{0, 1}, 0}});
    CHECK_THROWS_AS(check_linear_forms(nu, fam, std::nullopt), std::invalid_argument);
}

TEST_CASE("gcs check: identity and zero cases") {
    const std::uint32_t N = 24;
    const GreenTaoMeasure nu = synthetic_measure(N, 3, 0.05, 0.95, 2);
    const WeightSystem ws = corner_weight_system(2, nu);
    const BoxNormContext ctx(ws, face_omitting(2, 0));
    const GridFunction f = random_grid(2, N, 31, 0);
    const std::vector<GridFunction> equal(4, f);
    const auto rep = check_gcs(equal, ctx);
    CHECK(rep.pass);
    CHECK(std::abs(rep.deviations["margin"].get<double>()) <=
          1e-12 * std::max(1.0, rep.quantities["norm_product"].get<double>()));

    std::vector<GridFunction> withzero(4, f);
    withzero[1] = GridFunction::zeros(2, N);
    const auto rep0 = check_gcs(withzero, ctx);
    CHECK(rep0.pass);
    CHECK(rep0.quantities["inner_product"].get<double>() == 0.0);
}

TEST_CASE("gcs holds on 100 seeded instances") {
    const std::uint32_t N = 20;
    const GreenTaoMeasure nu = synthetic_measure(N, 101, 0.05, 0.95, 2);
    const WeightSystem ws = corner_weight_system(2, nu);
    const BoxNormContext ctx(ws, face_omitting(2, 2));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<GridFunction> fs;
        for (std::uint32_t k = 0; k < 4; ++k) fs.push_back(random_grid(2, N, seed, k));
        CHECK(check_gcs(fs, ctx).pass);
    }
}

TEST_CASE("norm axiom edge cases") {
    const std::uint32_t N = 16;
    const GreenTaoMeasure nu = synthetic_measure(N, 7, 0.05, 0.95, 2);
    const WeightSystem ws = corner_weight_system(2, nu);
    const BoxNormContext ctx(ws, face_omitting(2, 1));
    // f = -g: ||f + g|| = 0 and the slack is 2||f||
    const GridFunction f = random_grid(2, N, 1, 0);
    GridFunction g = f;
    for (double& v : g.values) v = -v;
    GridFunction sum = GridFunction::zeros(2, N);
    const double nf = box_norm(f, ctx);
    CHECK(box_norm(sum, ctx) == 0.0);
    CHECK(nf + box_norm(g, ctx) - box_norm(sum, ctx) >= 0.0);
    // lambda = 0 kills the norm
    GridFunction zero = f;
    for (double& v : zero.values) v *= 0.0;
    CHECK(box_norm(zero, ctx) == 0.0);
    // trivial weights: ||1|| = 1 exactly
    const WeightSystem triv = corner_weight_system_unweighted(2, N);
    const BoxNormContext tctx(triv, face_omitting(2, 1));
    CHECK(box_norm(GridFunction::constant(2, N, 1.0), tctx) == doctest::Approx(1.0).epsilon(1e-15));

    const auto rep = check_norm_axioms(ctx, 25, 12);
    CHECK(rep.pass);
}

TEST_CASE("von neumann check") {
    const std::uint32_t N = 24;
    const GreenTaoMeasure nu = synthetic_measure(N, 19, 0.05, 0.95, 2);
    const WeightSystem ws = corner_weight_system(2, nu);
    // all-zero faces: Lambda = 0, ratio 0
    std::vector<GridFunction> zeros(3, GridFunction::zeros(2, N));
    const auto rep0 = check_von_neumann(zeros, ws);
    CHECK(rep0.quantities["ratio"].get<double>() == 0.0);
    // domination violation names the face
    std::vector<GridFunction> bad = zeros;
    bad[2].values[5] = 2.0; // nu_{[0,1]} = 1 < 2
    CHECK_THROWS_WITH_AS(check_von_neumann(bad, ws),
                         doctest::Contains("face omitting class 2"), std::invalid_argument);

    // trivial weights, dominated by 1: the classical inequality against oracles
    const WeightSystem triv = corner_weight_system_unweighted(2, N);
    std::vector<GridFunction> fs;
    for (std::uint32_t k = 0; k < 3; ++k) {
        GridFunction f = random_grid(2, N, 77, k);
        fs.push_back(std::move(f));
    }
    const auto rep = check_von_neumann(fs, triv);
    CHECK(rep.pass);
    CHECK(rel_close(rep.quantities["lambda"].get<double>(), oracles::lambda_naive(fs, triv),
                    1e-12, 1e-15));
    const double min_norm = rep.quantities["min_norm"].get<double>();
    CHECK(min_norm > 0.0);
    CHECK(std::abs(rep.quantities["lambda"].get<double>()) <=
          rep.quantities["ratio"].get<double>() * min_norm + 1e-12);
}

TEST_CASE("dual product check") {
    const std::uint32_t N = 16;
    const GreenTaoMeasure nu = synthetic_measure(N, 23, 0.05, 0.95, 2);
    const WeightSystem ws = corner_weight_system(2, nu);
    const BoxNormContext ctx(ws, face_omitting(2, 0)); // face {1,2}: nu-composed edge
    // K = 1 consistency with the duality identity:
    // <F/||F||, DF> = ||F||^{2^d - 1}
    GridFunction F = GridFunction::zeros(2, N);
    const auto& bound = ctx.face_weight();
    const CounterRng rng(71);
    for (std::size_t i = 0; i < F.size(); ++i) F.values[i] = rng.uniform01(i) * bound[i];
    const double norm = box_norm(F, ctx);
    REQUIRE(norm > 0.0);
    GridFunction probe = F;
    for (double& v : probe.values) v /= norm;
    const GridFunction DF = dual_function(F, ctx);
    CHECK(rel_close(weighted_inner_product(probe, DF, ctx), std::pow(norm, 3.0), 1e-9, 1e-13));

    // all-zero factors pair to zero with every probe
    std::vector<GridFunction> zero_fs(2, GridFunction::zeros(2, N));
    const auto rep0 = check_dual_product(zero_fs, ctx, 4, 5);
    CHECK(rep0.quantities["max_pairing"].get<double>() == 0.0);

    std::vector<GridFunction> Fs(2, F);
    const auto rep = check_dual_product(Fs, ctx, 4, 5);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.quantities["max_pairing"].get<double>()));

    // undominated factors are rejected
    GridFunction big = GridFunction::constant(2, N, 100.0);
    std::vector<GridFunction> bad{big};
    CHECK_THROWS_AS(check_dual_product(bad, ctx, 2, 5), std::invalid_argument);
}

TEST_CASE("reports serialize without wall time") {
    const std::uint32_t N = 12;
    const GreenTaoMeasure nu = synthetic_measure(N, 1, 0.05, 0.95, 2);
    const WeightSystem ws = corner_weight_system(2, nu);
    const BoxNormContext ctx(ws, face_omitting(2, 0));
    const auto rep = check_norm_axioms(ctx, 2, 3);
    const auto j = rep.to_json();
    CHECK(j.contains("version"));
    CHECK(!j.contains("wall_ms"));
    CHECK(j["verdict"] == "pass");
}
