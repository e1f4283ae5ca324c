#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gowerslab/gowers.hpp"
#include "gowerslab/measure.hpp"
#include "gowerslab/weights.hpp"

#include <json.hpp>

namespace gowerslab {

inline constexpr const char* kReportVersion = "0.1.0";

// Family of affine forms on t variables; homogeneous parts pairwise
// non-proportional, none identically zero.
struct FormsFamily {
    std::uint32_t t = 0;
    std::vector<AffineForm> forms;
};

FormsFamily forms_family(std::uint32_t t,
                         const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>& rows);

// Throws std::invalid_argument if the family is invalid.
void validate_forms_family(const FormsFamily& family);

struct SampledMode {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

struct ExperimentReport {
    std::string experiment;
    nlohmann::ordered_json params;
    nlohmann::ordered_json quantities;
    nlohmann::ordered_json deviations;
    bool pass = true;
    double wall_ms = 0.0; // console/CSV only; excluded from JSON for re-run byte-identity

    nlohmann::ordered_json to_json() const;
};

// E prod_i nu(L_i(x)) over Z_N^t, exact (requires N^t <= 2e9) or sampled.
// Reports signed deviation E - 1 and Delta = |E - 1|.
ExperimentReport check_linear_forms(const GreenTaoMeasure& nu, const FormsFamily& family,
                                    std::optional<SampledMode> sampled);

// Gowers-Cauchy-Schwarz margin prod ||f_omega|| - |<f_omega>| >= -1e-9 * prod.
ExperimentReport check_gcs(std::span<const GridFunction> fs, const BoxNormContext& ctx);

// Triangle inequality and absolute homogeneity on seeded random instances;
// also reports ||1|| (expected 1 + o(1), reported not asserted).
ExperimentReport check_norm_axioms(const BoxNormContext& ctx, std::uint64_t trials,
                                   std::uint64_t seed);

// |Lambda| / min_i ||f^{(i)}|| after verifying |f^I| <= nu_I pointwise
// (violation throws, naming the face and point).
ExperimentReport check_von_neumann(std::span<const GridFunction> fs, const WeightSystem& ws);

// Pairings <f, prod_j D F_j>_nu over box-norm-normalized random probes
// f = u * (pointwise weight bound), |u| <= 1; zero-norm probes are resampled.
ExperimentReport check_dual_product(std::span<const GridFunction> Fs,
                                    const BoxNormContext& ctx, std::uint64_t probes,
                                    std::uint64_t seed);

// Entries uniform in [-1, 1] from the counter RNG (seed, substream).
GridFunction random_grid(std::uint32_t d, std::uint32_t N, std::uint64_t seed,
                         std::uint64_t substream);

} // namespace gowerslab
