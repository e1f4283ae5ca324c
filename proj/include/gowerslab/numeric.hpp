#pragma once

#include <algorithm>
#include <cmath>

namespace gowerslab {

// |a - b| <= tol * max(|a|, |b|), with an absolute escape hatch for pairs that
// are both essentially zero.
inline bool rel_close(double a, double b, double tol, double abs_floor = 1e-300) {
    const double diff = std::abs(a - b);
    const double scale = std::max(std::abs(a), std::abs(b));
    return diff <= tol * scale || diff <= abs_floor;
}

} // namespace gowerslab
