#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gowerslab/grid.hpp"
#include "gowerslab/measure.hpp"

#include <json.hpp>

namespace gowerslab {

// Integer affine form on the variables of its support; every coefficient is
// nonzero (the form depends on exactly those variables).
struct AffineForm {
    std::uint32_t universe = 0;
    std::vector<std::uint32_t> support; // ascending
    std::vector<std::int64_t> coeffs;   // one per support member
    std::int64_t constant = 0;

    // point = values of the support variables, in support order
    std::int64_t eval(std::span<const std::uint32_t> point) const;
    // coefficients embedded into the full universe, constant last
    std::vector<std::int64_t> embedded() const;
};

// Either trivial (constant 1) or a product of measure-composed forms sharing
// one support.
struct WeightFactor {
    std::vector<AffineForm> forms;

    bool trivial() const { return forms.empty(); }
};

struct WeightSystem {
    std::uint32_t d = 0;          // hypergraph dimension; vertex classes 0..d
    std::uint32_t N = 0;          // grid modulus
    std::optional<GreenTaoMeasure> measure; // nullopt = constant-1 (unweighted mode)
    std::map<std::uint32_t, WeightFactor> factors; // key: class-subset bitmask

    std::uint32_t vertex_count() const { return d + 1; }
    const WeightFactor* factor(std::uint32_t mask) const;
    double measure_at(std::uint64_t n_mod) const {
        return measure ? measure->values[n_mod] : 1.0;
    }
};

// The corner hypergraph weights: nu on the vertex classes 0..d-1, trivial on
// class d, nu(a_d - sum_{j in I, j<d} a_j) on the d-edges containing class d,
// trivial on the edge {0..d-1} and everywhere else.
WeightSystem corner_weight_system(std::uint32_t d, GreenTaoMeasure nu);

// Same shape with the constant-1 measure.
WeightSystem corner_weight_system_unweighted(std::uint32_t d, std::uint32_t N);

struct IndependenceVerdict {
    bool ok = true;
    std::string message;                   // empty when ok
    std::optional<std::pair<AffineForm, AffineForm>> offending;
};

// Accepts iff no two distinct forms are rational multiples of each other
// (embedding into coefficients-plus-constant; exact integer cross products)
// and every form has all-nonzero coefficients on its support. Never throws.
IndependenceVerdict validate_independent(const WeightSystem& ws);

// Product over the factor's forms of measure(L(point) mod N); 1 for trivial.
double eval_weight(const WeightSystem& ws, const IndexSet& I,
                   std::span<const std::uint32_t> point);

nlohmann::ordered_json weight_system_to_json(const WeightSystem& ws);
WeightSystem weight_system_from_json(const nlohmann::json& j);

} // namespace gowerslab
