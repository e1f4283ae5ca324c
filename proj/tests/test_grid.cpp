#include <doctest.h>

#include <stdexcept>

#include "gowerslab/grid.hpp"
#include "gowerslab/rng.hpp"

using namespace gowerslab;

TEST_CASE("projection selects per mask") {
    const std::vector<std::uint32_t> x{3, 5}, y{7, 9};
    CHECK(project(ProjectionMask::from_mask(0b00, 2), x, y) == x);
    CHECK(project(ProjectionMask::from_mask(0b11, 2), x, y) == y);
    CHECK(project(ProjectionMask::from_mask(0b10, 2), x, y) ==
          std::vector<std::uint32_t>{3, 9});
    CHECK_THROWS_AS(project(ProjectionMask::from_mask(0, 3), x, y), std::invalid_argument);
}

TEST_CASE("projection of (x, x) is x for every mask") {
    const CounterRng rng(41);
    for (std::uint32_t d = 1; d <= 4; ++d) {
        std::vector<std::uint32_t> x(d);
        for (std::uint32_t j = 0; j < d; ++j)
            x[j] = static_cast<std::uint32_t>(rng.below(d * 10 + j, 97));
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
            CHECK(project(ProjectionMask::from_mask(mask, d), x, x) == x);
    }
}

TEST_CASE("mask restriction commutes exactly when masks agree") {
    // P_omega(x,y)|_I = P_{omega_I}(x_I, y_I) iff omega|_I = omega_I,
    // exhaustively for d <= 4 with coordinatewise-distinct x, y
    for (std::uint32_t d = 1; d <= 4; ++d) {
        std::vector<std::uint32_t> x(d), y(d);
        for (std::uint32_t j = 0; j < d; ++j) {
            x[j] = j + 1;
            y[j] = j + 9;
        }
        for (std::uint32_t omega = 0; omega < (1u << d); ++omega) {
            const auto u = project(ProjectionMask::from_mask(omega, d), x, y);
            for (std::uint32_t imask = 1; imask < (1u << d); ++imask) {
                const IndexSet I{d, imask};
                const auto members = I.members();
                const std::uint32_t k = I.size();
                std::vector<std::uint32_t> xI(k), yI(k), uI(k);
                for (std::uint32_t j = 0; j < k; ++j) {
                    xI[j] = x[members[j]];
                    yI[j] = y[members[j]];
                    uI[j] = u[members[j]];
                }
                for (std::uint32_t omega_I = 0; omega_I < (1u << k); ++omega_I) {
                    const auto v = project(ProjectionMask::from_mask(omega_I, k), xI, yI);
                    // omega restricted to I
                    std::uint32_t restricted = 0;
                    for (std::uint32_t j = 0; j < k; ++j)
                        restricted |= ((omega >> members[j]) & 1u) << j;
                    CHECK((v == uI) == (restricted == omega_I));
                }
            }
        }
    }
}

TEST_CASE("indicator functions") {
    CHECK(indicator_from_set(2, 8, {}).values ==
          GridFunction::zeros(2, 8).values);
    std::vector<std::vector<std::uint32_t>> all;
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = 0; b < 4; ++b) all.push_back({a, b});
    const GridFunction full = indicator_from_set(2, 4, all);
    double sum = 0.0;
    for (const double v : full.values) {
        CHECK(v == 1.0);
        sum += v;
    }
    CHECK(sum == 16.0);
    const GridFunction three = indicator_from_set(2, 8, {{1, 2}, {3, 4}, {5, 6}});
    double s3 = 0.0;
    for (const double v : three.values) s3 += v;
    CHECK(s3 == 3.0);
    CHECK_THROWS_AS(indicator_from_set(2, 4, {{4, 0}}), std::invalid_argument);
}

TEST_CASE("slices") {
    GridFunction f = GridFunction::zeros(2, 8);
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = 0; b < 8; ++b)
            f.values[a * 8 + b] = static_cast<double>(a);

    const GridFunction whole = restrict_slice(f, IndexSet::full(2), {});
    CHECK(whole.values == f.values);

    // pin the first axis to 4: the slice over the second axis is constant 4
    const std::vector<std::uint32_t> fixed{4};
    const GridFunction col = restrict_slice(f, IndexSet::of(2, {1}), fixed);
    CHECK(col.d == 1);
    for (const double v : col.values) CHECK(v == 4.0);

    const GridFunction c = GridFunction::constant(3, 4, 2.5);
    const std::vector<std::uint32_t> fixed2{1, 2};
    const GridFunction slice = restrict_slice(c, IndexSet::of(3, {1}), fixed2);
    for (const double v : slice.values) CHECK(v == 2.5);
}
