#include "gowerslab/grid.hpp"

#include <stdexcept>
#include <string>

namespace gowerslab {

GridFunction GridFunction::zeros(std::uint32_t d, std::uint32_t N) {
    GridFunction f;
    f.d = d;
    f.N = N;
    std::size_t n = 1;
    for (std::uint32_t j = 0; j < d; ++j) n *= N;
    f.values.assign(n, 0.0);
    return f;
}

GridFunction GridFunction::constant(std::uint32_t d, std::uint32_t N, double c) {
    GridFunction f = zeros(d, N);
    for (double& v : f.values) v = c;
    return f;
}

std::size_t GridFunction::index(std::span<const std::uint32_t> x) const {
    if (x.size() != d) throw std::invalid_argument("GridFunction: point dimension mismatch");
    std::size_t idx = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
        if (x[j] >= N) throw std::invalid_argument("GridFunction: coordinate out of range");
        idx = idx * N + x[j];
    }
    return idx;
}

ProjectionMask ProjectionMask::from_mask(std::uint32_t mask, std::uint32_t d) {
    ProjectionMask m;
    m.bits.resize(d);
    for (std::uint32_t j = 0; j < d; ++j) m.bits[j] = (mask >> j) & 1u;
    return m;
}

std::vector<std::uint32_t> IndexSet::members() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t j = 0; j < universe; ++j)
        if (contains(j)) out.push_back(j);
    return out;
}

IndexSet IndexSet::of(std::uint32_t universe, std::initializer_list<std::uint32_t> js) {
    IndexSet s{universe, 0};
    for (const std::uint32_t j : js) {
        if (j >= universe) throw std::invalid_argument("IndexSet: member outside universe");
        s.mask |= 1u << j;
    }
    return s;
}

IndexSet IndexSet::full(std::uint32_t universe) {
    return IndexSet{universe, universe >= 32 ? ~0u : (1u << universe) - 1u};
}

std::vector<std::uint32_t> project(const ProjectionMask& mask,
                                   std::span<const std::uint32_t> x,
                                   std::span<const std::uint32_t> y) {
    const std::uint32_t d = mask.dim();
    if (x.size() != d || y.size() != d)
        throw std::invalid_argument("project: dimension mismatch");
    std::vector<std::uint32_t> u(d);
    for (std::uint32_t j = 0; j < d; ++j) u[j] = mask.bits[j] ? y[j] : x[j];
    return u;
}

GridFunction indicator_from_set(std::uint32_t d, std::uint32_t N,
                                const std::vector<std::vector<std::uint32_t>>& points) {
    GridFunction f = GridFunction::zeros(d, N);
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("indicator_from_set: point dimension mismatch");
        f.values[f.index(p)] = 1.0;
    }
    return f;
}

GridFunction restrict_slice(const GridFunction& f, const IndexSet& I,
                            std::span<const std::uint32_t> fixed) {
    if (I.universe != f.d) throw std::invalid_argument("restrict_slice: index set universe != d");
    const auto kept = I.members();
    const std::uint32_t missing = f.d - I.size();
    if (fixed.size() != missing)
        throw std::invalid_argument("restrict_slice: expected " + std::to_string(missing) +
                                    " fixed coordinates");
    GridFunction out = GridFunction::zeros(I.size(), f.N);
    std::vector<std::uint32_t> full(f.d, 0);
    {
        std::size_t fi = 0;
        for (std::uint32_t j = 0; j < f.d; ++j)
            if (!I.contains(j)) full[j] = fixed[fi++];
    }
    std::vector<std::uint32_t> sub(kept.size(), 0);
    const std::size_t count = out.size();
    for (std::size_t k = 0; k < count; ++k) {
        // decode k into the kept coordinates (row-major)
        std::size_t rem = k;
        for (std::size_t j = kept.size(); j-- > 0;) {
            sub[j] = static_cast<std::uint32_t>(rem % f.N);
            rem /= f.N;
        }
        for (std::size_t j = 0; j < kept.size(); ++j) full[kept[j]] = sub[j];
        out.values[k] = f.at(full);
    }
    return out;
}

} // namespace gowerslab
