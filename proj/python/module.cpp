#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gowerslab/corners.hpp"
#include "gowerslab/gowers.hpp"
#include "gowerslab/measure.hpp"
#include "gowerslab/parallel.hpp"
#include "gowerslab/primes.hpp"
#include "gowerslab/verify.hpp"
#include "gowerslab/weights.hpp"

namespace py = pybind11;
using namespace gowerslab;

namespace {

GridFunction grid_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    const auto ndim = static_cast<std::uint32_t>(a.ndim());
    if (ndim < 1) throw std::invalid_argument("expected an array with at least one axis");
    const auto N = static_cast<std::uint32_t>(a.shape(0));
    for (std::uint32_t j = 0; j < ndim; ++j)
        if (a.shape(j) != N) throw std::invalid_argument("expected a cubical array");
    GridFunction f = GridFunction::zeros(ndim, N);
    std::copy(a.data(), a.data() + f.size(), f.values.begin());
    return f;
}

py::array_t<double> grid_to_array(const GridFunction& f) {
    std::vector<py::ssize_t> shape(f.d, f.N);
    py::array_t<double> a(shape);
    std::copy(f.values.begin(), f.values.end(), a.mutable_data());
    return a;
}

std::vector<GridFunction> grids_from_list(const py::sequence& seq) {
    std::vector<GridFunction> fs;
    for (const auto& item : seq)
        fs.push_back(grid_from_array(
            item.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>()));
    return fs;
}

py::dict report_to_dict(const ExperimentReport& rep) {
    py::module_ json = py::module_::import("json");
    py::dict d = json.attr("loads")(rep.to_json().dump()).cast<py::dict>();
    d["wall_ms"] = rep.wall_ms;
    return d;
}

PrimePointSet points_to_set(std::uint32_t d, std::uint64_t N,
                            const std::vector<std::vector<std::uint32_t>>& pts) {
    std::vector<Point3> raw;
    for (const auto& p : pts) {
        if (p.size() != d) throw std::invalid_argument("point dimension mismatch");
        Point3 q{0, 0, 0};
        for (std::uint32_t j = 0; j < d; ++j) q[j] = p[j];
        raw.push_back(q);
    }
    return make_prime_point_set(d, N, std::move(raw));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.def("set_worker_count", &set_worker_count, py::arg("n"));

    // arithmetic core
    py::class_<PrimeTable>(m, "PrimeTable")
        .def_readonly("limit", &PrimeTable::limit)
        .def_readonly("primes", &PrimeTable::primes)
        .def("contains", &PrimeTable::contains);
    m.def("sieve_primes", &sieve_primes, py::arg("limit"));
    m.def("mobius", [](std::uint64_t limit) {
        const auto mu = mobius_table(limit);
        py::array_t<std::int8_t> a(static_cast<py::ssize_t>(mu.size()));
        std::copy(mu.begin(), mu.end(), a.mutable_data());
        return a;
    }, py::arg("limit"));
    m.def("is_prime", &is_prime_u64, py::arg("n"));

    py::class_<WTrickParams>(m, "WTrickParams")
        .def_readonly("omega_cutoff", &WTrickParams::omega_cutoff)
        .def_readonly("W", &WTrickParams::W)
        .def_readonly("phi_W", &WTrickParams::phi_W)
        .def_readonly("residues", &WTrickParams::residues);
    m.def("make_wtrick", &make_wtrick, py::arg("omega_cutoff"), py::arg("b"));
    m.def("modified_von_mangoldt", &modified_von_mangoldt, py::arg("n"), py::arg("wt"),
          py::arg("i") = 0);
    m.def("von_mangoldt_mean", &von_mangoldt_mean, py::arg("n"), py::arg("wt"),
          py::arg("i") = 0);
    m.def("goldston_yildirim", &goldston_yildirim, py::arg("n"), py::arg("r"));
    m.def("gy_progression", [](std::uint64_t N, const WTrickParams& wt, std::size_t i, double R) {
        const auto lam = gy_progression(N, wt, i, R);
        py::array_t<double> a(static_cast<py::ssize_t>(lam.size()));
        std::copy(lam.begin(), lam.end(), a.mutable_data());
        return a;
    }, py::arg("n"), py::arg("wt"), py::arg("i"), py::arg("r"));
    m.def("default_truncation_level", &default_truncation_level, py::arg("n"), py::arg("d"));

    py::class_<GreenTaoMeasure>(m, "GreenTaoMeasure")
        .def_property_readonly("n", [](const GreenTaoMeasure& nu) { return nu.params.N; })
        .def_property_readonly("r", [](const GreenTaoMeasure& nu) { return nu.params.R; })
        .def_property_readonly("values", [](const GreenTaoMeasure& nu) {
            py::array_t<double> a(static_cast<py::ssize_t>(nu.values.size()));
            std::copy(nu.values.begin(), nu.values.end(), a.mutable_data());
            return a;
        })
        .def("minorization_margin", [](const GreenTaoMeasure& nu) {
            return minorization_margin(nu);
        });
    m.def("green_tao_measure",
          [](std::uint64_t N, const WTrickParams& wt, std::size_t i, double R, double delta1,
             double delta2, std::uint32_t d) {
              MeasureParams p;
              p.N = N;
              p.R = R;
              p.delta1 = delta1;
              p.delta2 = delta2;
              p.d = d;
              return green_tao_measure(p, wt, i);
          },
          py::arg("n"), py::arg("wt"), py::arg("i") = 0, py::arg("r") = 0.0,
          py::arg("delta1") = 0.05, py::arg("delta2") = 0.95, py::arg("d") = 2);
    m.def("synthetic_measure", &synthetic_measure, py::arg("n"), py::arg("seed"),
          py::arg("delta1") = 0.05, py::arg("delta2") = 0.95, py::arg("d") = 2);

    // weight systems and box norms
    py::class_<WeightSystem>(m, "WeightSystem")
        .def_readonly("d", &WeightSystem::d)
        .def_readonly("n", &WeightSystem::N)
        .def("to_json", [](const WeightSystem& ws) { return weight_system_to_json(ws).dump(); })
        .def("validate", [](const WeightSystem& ws) {
            const auto v = validate_independent(ws);
            return py::make_tuple(v.ok, v.message);
        });
    m.def("corner_weight_system",
          [](std::uint32_t d, const GreenTaoMeasure& nu) { return corner_weight_system(d, nu); },
          py::arg("d"), py::arg("nu"));
    m.def("corner_weight_system_unweighted", &corner_weight_system_unweighted, py::arg("d"),
          py::arg("n"));
    m.def("weight_system_from_json", [](const std::string& s) {
        return weight_system_from_json(nlohmann::json::parse(s));
    });

    py::class_<BoxNormContext>(m, "BoxNormContext")
        .def(py::init([](const WeightSystem& ws, const std::vector<std::uint32_t>& face) {
                 IndexSet I{ws.d + 1, 0};
                 for (const auto c : face) I.mask |= 1u << c;
                 return BoxNormContext(ws, I);
             }),
             py::arg("ws"), py::arg("face"))
        .def_property_readonly("face_dim", &BoxNormContext::face_dim)
        .def_property_readonly("n", &BoxNormContext::modulus);

    m.def("box_norm", [](const py::array_t<double>& f, const BoxNormContext& ctx) {
        return box_norm(grid_from_array(f), ctx);
    }, py::arg("f"), py::arg("ctx"));
    m.def("gowers_inner_product", [](const py::sequence& fs, const BoxNormContext& ctx) {
        return gowers_inner_product(grids_from_list(fs), ctx);
    }, py::arg("fs"), py::arg("ctx"));
    m.def("dual_function", [](const py::array_t<double>& f, const BoxNormContext& ctx) {
        return grid_to_array(dual_function(grid_from_array(f), ctx));
    }, py::arg("f"), py::arg("ctx"));
    m.def("weighted_inner_product",
          [](const py::array_t<double>& f, const py::array_t<double>& g, const BoxNormContext& ctx) {
              return weighted_inner_product(grid_from_array(f), grid_from_array(g), ctx);
          },
          py::arg("f"), py::arg("g"), py::arg("ctx"));
    m.def("lambda_form", [](const py::sequence& fs, const WeightSystem& ws) {
        return lambda_form(grids_from_list(fs), ws);
    }, py::arg("fs"), py::arg("ws"));
    m.def("omega_complement_mass",
          [](const py::array_t<double>& f, const BoxNormContext& ctx, double T) {
              const OmegaSet omega = omega_set(grid_from_array(f), ctx, T);
              return py::make_tuple(complement_mass(omega, ctx), omega.max_abs_dual);
          },
          py::arg("f"), py::arg("ctx"), py::arg("t"));

    // verification
    m.def("check_linear_forms",
          [](const GreenTaoMeasure& nu, std::uint32_t t,
             const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>& rows,
             std::optional<std::pair<std::uint64_t, std::uint64_t>> sampled) {
              std::optional<SampledMode> mode;
              if (sampled) mode = SampledMode{sampled->first, sampled->second};
              return report_to_dict(check_linear_forms(nu, forms_family(t, rows), mode));
          },
          py::arg("nu"), py::arg("t"), py::arg("forms"), py::arg("sampled") = py::none());
    m.def("check_gcs", [](const py::sequence& fs, const BoxNormContext& ctx) {
        return report_to_dict(check_gcs(grids_from_list(fs), ctx));
    }, py::arg("fs"), py::arg("ctx"));
    m.def("check_norm_axioms",
          [](const BoxNormContext& ctx, std::uint64_t trials, std::uint64_t seed) {
              return report_to_dict(check_norm_axioms(ctx, trials, seed));
          },
          py::arg("ctx"), py::arg("trials"), py::arg("seed"));
    m.def("check_von_neumann", [](const py::sequence& fs, const WeightSystem& ws) {
        return report_to_dict(check_von_neumann(grids_from_list(fs), ws));
    }, py::arg("fs"), py::arg("ws"));
    m.def("check_dual_product",
          [](const py::sequence& Fs, const BoxNormContext& ctx, std::uint64_t probes,
             std::uint64_t seed) {
              return report_to_dict(check_dual_product(grids_from_list(Fs), ctx, probes, seed));
          },
          py::arg("fs"), py::arg("ctx"), py::arg("probes"), py::arg("seed"));

    // corners
    py::class_<PrimePointSet>(m, "PrimePointSet")
        .def_readonly("d", &PrimePointSet::d)
        .def_readonly("n", &PrimePointSet::N)
        .def_property_readonly("points", [](const PrimePointSet& A) {
            std::vector<std::vector<std::uint32_t>> out;
            for (const auto& p : A.points)
                out.emplace_back(p.begin(), p.begin() + A.d);
            return out;
        })
        .def("__len__", [](const PrimePointSet& A) { return A.points.size(); });
    m.def("prime_point_set", &points_to_set, py::arg("d"), py::arg("n"), py::arg("points"));
    m.def("load_point_set", &load_point_set, py::arg("path"), py::arg("d"), py::arg("n"));
    m.def("full_prime_grid", &full_prime_grid, py::arg("d"), py::arg("n"),
          py::arg("delta1") = 0.0, py::arg("delta2") = 1.0);
    m.def("random_prime_subset", &random_prime_subset, py::arg("d"), py::arg("n"),
          py::arg("alpha"), py::arg("seed"), py::arg("delta1") = 0.0, py::arg("delta2") = 1.0);

    py::class_<CornerReport>(m, "CornerReport")
        .def_readonly("n", &CornerReport::N)
        .def_readonly("d", &CornerReport::d)
        .def_readonly("alpha_hat", &CornerReport::alpha_hat)
        .def_readonly("nondegenerate", &CornerReport::nondegenerate)
        .def_readonly("degenerate", &CornerReport::degenerate)
        .def_readonly("c_hat", &CornerReport::c_hat)
        .def_readonly("wall_ms", &CornerReport::wall_ms);
    m.def("enumerate_corners", &enumerate_corners, py::arg("a"));
    m.def("weighted_corner_count", [](const PrimePointSet& A, const GreenTaoMeasure& nu) {
        const auto w = weighted_corner_count(A, nu);
        return py::make_tuple(w.lambda_path, w.direct_path, w.difference);
    }, py::arg("a"), py::arg("nu"));

    py::class_<ReductionResult>(m, "ReductionResult")
        .def_readonly("W", &ReductionResult::W)
        .def_readonly("b", &ReductionResult::b)
        .def_readonly("n_prime", &ReductionResult::N_prime)
        .def_readonly("class_size", &ReductionResult::class_size)
        .def_readonly("mean_density", &ReductionResult::mean_density)
        .def_readonly("wrap_around_free", &ReductionResult::wrap_around_free)
        .def_readonly("empty", &ReductionResult::empty)
        .def_property_readonly("a_prime_size", [](const ReductionResult& r) {
            return r.A_prime.size();
        });
    m.def("wtrick_reduce",
          [](const PrimePointSet& A, std::uint32_t omega_cutoff, double delta1, double delta2,
             double delta_n) { return wtrick_reduce(A, omega_cutoff, {delta1, delta2}, delta_n); },
          py::arg("a"), py::arg("omega_cutoff"), py::arg("delta1") = 0.05,
          py::arg("delta2") = 0.95, py::arg("delta_n") = 0.01);
    m.def("corner_pullback_check", [](const ReductionResult& red, const PrimePointSet& A) {
        const auto v = corner_pullback_check(red, A);
        return py::make_tuple(v.ok, v.corners_checked, v.violations);
    }, py::arg("red"), py::arg("a"));
    m.def("density_scan",
          [](std::uint32_t d, const std::vector<std::uint64_t>& grid, bool full, double alpha,
             std::uint64_t seed, double delta1, double delta2) {
              SubsetRule rule{full, alpha, seed, delta1, delta2};
              return density_scan(d, grid, rule);
          },
          py::arg("d"), py::arg("n_grid"), py::arg("full") = true, py::arg("alpha") = 1.0,
          py::arg("seed") = 0, py::arg("delta1") = 0.0, py::arg("delta2") = 1.0);
}
