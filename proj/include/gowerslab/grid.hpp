#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gowerslab {

// Dense real-valued function on Z_N^d, row-major (axis 0 slowest).
struct GridFunction {
    std::uint32_t d = 0;
    std::uint32_t N = 0;
    std::vector<double> values;

    static GridFunction zeros(std::uint32_t d, std::uint32_t N);
    static GridFunction constant(std::uint32_t d, std::uint32_t N, double c);

    std::size_t size() const { return values.size(); }
    std::size_t index(std::span<const std::uint32_t> x) const;
    double at(std::span<const std::uint32_t> x) const { return values[index(x)]; }
    double& at(std::span<const std::uint32_t> x) { return values[index(x)]; }
};

// omega in {0,1}^d selecting x_j (0) or y_j (1) per coordinate.
struct ProjectionMask {
    std::vector<std::uint8_t> bits;

    std::uint32_t dim() const { return static_cast<std::uint32_t>(bits.size()); }
    static ProjectionMask from_mask(std::uint32_t mask, std::uint32_t d);
};

// Subset of a universe {0, ..., universe-1}, stored as a bitmask.
struct IndexSet {
    std::uint32_t universe = 0;
    std::uint32_t mask = 0;

    std::uint32_t size() const { return static_cast<std::uint32_t>(__builtin_popcount(mask)); }
    bool contains(std::uint32_t j) const { return (mask >> j) & 1u; }
    std::vector<std::uint32_t> members() const;
    static IndexSet of(std::uint32_t universe, std::initializer_list<std::uint32_t> js);
    static IndexSet full(std::uint32_t universe);
};

// u_j = x_j if omega_j = 0, y_j if omega_j = 1.
std::vector<std::uint32_t> project(const ProjectionMask& mask,
                                   std::span<const std::uint32_t> x,
                                   std::span<const std::uint32_t> y);

// 1 on the given points, 0 elsewhere. Points must lie in [0, N)^d.
GridFunction indicator_from_set(std::uint32_t d, std::uint32_t N,
                                const std::vector<std::vector<std::uint32_t>>& points);

// The |I|-dimensional slice of f with the coordinates outside I pinned to
// `fixed` (given in ascending order of the missing axes).
GridFunction restrict_slice(const GridFunction& f, const IndexSet& I,
                            std::span<const std::uint32_t> fixed);

} // namespace gowerslab
