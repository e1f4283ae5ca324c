#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gowerslab/grid.hpp"
#include "gowerslab/weights.hpp"

namespace gowerslab {

// Evaluation context for box norms, Gowers inner products and duals on one
// face J of [d+1], |J| = d. Weight factors of the proper subsets of J are
// materialized as dense tables once; everything downstream is lookups.
class BoxNormContext {
  public:
    BoxNormContext(const WeightSystem& ws, IndexSet face);

    std::uint32_t face_dim() const { return m_; }
    std::uint32_t modulus() const { return N_; }
    const IndexSet& face() const { return face_; }

    // weight table for a position-subset of the face (empty = trivial factor)
    const std::vector<double>& table(std::uint32_t pos_mask) const {
        return tables_[pos_mask];
    }
    // pointwise product of all proper-subset weights, i.e. the density of
    // d mu_{X_J} against the uniform average
    const std::vector<double>& mu_density() const { return mu_density_; }
    // the d-edge weight nu_J of the face itself (all ones when trivial);
    // the domination bound for functions living on this face
    const std::vector<double>& face_weight() const { return face_weight_; }

  private:
    IndexSet face_;
    std::uint32_t m_ = 0;
    std::uint32_t N_ = 0;
    std::vector<std::vector<double>> tables_; // indexed by position mask
    std::vector<double> mu_density_;
    std::vector<double> face_weight_;
};

// <f, g>_nu = E_x f(x) g(x) prod_{|I|<d} nu_I(x_I)
double weighted_inner_product(const GridFunction& f, const GridFunction& g,
                              const BoxNormContext& ctx);

// Weighted Gowers average of 2^d functions indexed by the projection mask
// (bit j = position j of the face; bit set selects the y side).
// Factored evaluation: the last coordinate pair is eliminated first and the
// remaining doubled grid is swept directly — O(N^3) at d = 2, O(N^{2d-1})
// in general, versus the naive O(N^{2d}).
double gowers_inner_product(std::span<const GridFunction> fs, const BoxNormContext& ctx);

// 2^d-th root of the Gowers average of (f, ..., f). The final stage is a
// weighted sum of squares, so the average cannot go negative with
// nonnegative weights; a violation beyond -1e-9 * scale throws.
double box_norm(const GridFunction& f, const BoxNormContext& ctx);

// Raw 2^d Gowers average of (f, ..., f) (what box_norm takes the root of).
double box_gowers_average(const GridFunction& f, const BoxNormContext& ctx);

// Df(x) = E_y prod_{omega != 0} f(P_omega(x, y)) prod_{|I|<d} prod_{omega_I != 0}
// nu_I(P_{omega_I}(x_I, y_I)); same coordinate elimination as above.
GridFunction dual_function(const GridFunction& f, const BoxNormContext& ctx);

// Lambda(f^I, |I| = d) = E_{x_{[d+1]}} prod_i f^{(i)}(x without coord i)
// prod_{|I|<d} nu_I(x_I), with fs[i] living on the face omitting class i.
double lambda_form(std::span<const GridFunction> fs, const WeightSystem& ws);

struct OmegaSet {
    double T = 0.0;
    std::uint32_t d = 0;
    std::uint32_t N = 0;
    std::vector<std::uint8_t> membership; // 1 iff |Df(x)| <= T
    double max_abs_dual = 0.0;

    std::size_t member_count() const;
};

// Membership grid of {x : |Df(x)| <= T}; requires T > 1.
OmegaSet omega_set(const GridFunction& f, const BoxNormContext& ctx, double T);
OmegaSet omega_set_from_dual(const GridFunction& dual, double T);

// nu-mass of the complement: E_x 1{x not in Omega} prod_{|I|<d} nu_I(x_I).
double complement_mass(const OmegaSet& omega, const BoxNormContext& ctx);

// <1, Df>_nu, the quantity whose 1/T multiple bounds the complement mass.
double dual_l1_mass(const GridFunction& dual, const BoxNormContext& ctx);

} // namespace gowerslab
