#include "gowerslab/weights.hpp"

#include <stdexcept>
#include <string>

namespace gowerslab {

std::int64_t AffineForm::eval(std::span<const std::uint32_t> point) const {
    if (point.size() != support.size())
        throw std::invalid_argument("AffineForm: point dimension != |support|");
    std::int64_t v = constant;
    for (std::size_t j = 0; j < support.size(); ++j)
        v += coeffs[j] * static_cast<std::int64_t>(point[j]);
    return v;
}

std::vector<std::int64_t> AffineForm::embedded() const {
    std::vector<std::int64_t> v(universe + 1, 0);
    for (std::size_t j = 0; j < support.size(); ++j) v[support[j]] = coeffs[j];
    v[universe] = constant;
    return v;
}

const WeightFactor* WeightSystem::factor(std::uint32_t mask) const {
    const auto it = factors.find(mask);
    return it == factors.end() ? nullptr : &it->second;
}

namespace {

AffineForm identity_form(std::uint32_t universe, std::uint32_t j) {
    AffineForm f;
    f.universe = universe;
    f.support = {j};
    f.coeffs = {1};
    f.constant = 0;
    return f;
}

// a_{d} - sum_{j in I, j < d} a_j on the classes of I (class d last)
AffineForm corner_edge_form(std::uint32_t universe, std::uint32_t d, std::uint32_t mask) {
    AffineForm f;
    f.universe = universe;
    for (std::uint32_t j = 0; j <= d; ++j) {
        if (!((mask >> j) & 1u)) continue;
        f.support.push_back(j);
        f.coeffs.push_back(j == d ? 1 : -1);
    }
    f.constant = 0;
    return f;
}

} // namespace

WeightSystem corner_weight_system(std::uint32_t d, GreenTaoMeasure nu) {
    if (d < 2) throw std::invalid_argument("corner_weight_system: d must be >= 2");
    WeightSystem ws;
    ws.d = d;
    ws.N = static_cast<std::uint32_t>(nu.params.N);
    const std::uint32_t u = d + 1;
    for (std::uint32_t j = 0; j < d; ++j)
        ws.factors[1u << j] = WeightFactor{{identity_form(u, j)}};
    ws.factors[1u << d] = WeightFactor{}; // class d carries no weight
    const std::uint32_t all = (1u << u) - 1u;
    for (std::uint32_t j = 0; j < d; ++j) {
        const std::uint32_t mask = all & ~(1u << j); // |I| = d, contains class d
        ws.factors[mask] = WeightFactor{{corner_edge_form(u, d, mask)}};
    }
    ws.factors[(1u << d) - 1u] = WeightFactor{}; // the edge {0..d-1}
    ws.measure = std::move(nu);
    return ws;
}

WeightSystem corner_weight_system_unweighted(std::uint32_t d, std::uint32_t N) {
    MeasureParams p;
    p.N = N;
    GreenTaoMeasure unit;
    unit.params = p;
    WeightSystem ws = corner_weight_system(d, std::move(unit));
    ws.measure.reset();
    ws.N = N;
    return ws;
}

IndependenceVerdict validate_independent(const WeightSystem& ws) {
    IndependenceVerdict v;
    std::vector<AffineForm> all_forms;
    for (const auto& [mask, factor] : ws.factors) {
        for (const auto& form : factor.forms) {
            for (std::size_t j = 0; j < form.coeffs.size(); ++j) {
                if (form.coeffs[j] == 0) {
                    v.ok = false;
                    v.message = "form has zero coefficient on its declared support";
                    v.offending = {form, form};
                    return v;
                }
            }
            all_forms.push_back(form);
        }
    }
    for (std::size_t a = 0; a < all_forms.size(); ++a) {
        const auto ea = all_forms[a].embedded();
        for (std::size_t b = a + 1; b < all_forms.size(); ++b) {
            const auto eb = all_forms[b].embedded();
            if (ea.size() != eb.size()) continue; // different universes cannot collide
            bool proportional = true;
            for (std::size_t i = 0; i < ea.size() && proportional; ++i)
                for (std::size_t j = i + 1; j < ea.size(); ++j)
                    if (ea[i] * eb[j] != ea[j] * eb[i]) {
                        proportional = false;
                        break;
                    }
            if (proportional) {
                v.ok = false;
                v.message = "two forms are rational multiples of each other";
                v.offending = {all_forms[a], all_forms[b]};
                return v;
            }
        }
    }
    return v;
}

double eval_weight(const WeightSystem& ws, const IndexSet& I,
                   std::span<const std::uint32_t> point) {
    if (point.size() != I.size())
        throw std::invalid_argument("eval_weight: point dimension != |I|");
    const WeightFactor* factor = ws.factor(I.mask);
    if (factor == nullptr || factor->trivial()) return 1.0;
    const std::int64_t N = static_cast<std::int64_t>(ws.N);
    double prod = 1.0;
    for (const auto& form : factor->forms) {
        std::int64_t val = form.eval(point) % N;
        if (val < 0) val += N;
        prod *= ws.measure_at(static_cast<std::uint64_t>(val));
    }
    return prod;
}

nlohmann::ordered_json weight_system_to_json(const WeightSystem& ws) {
    nlohmann::ordered_json j;
    j["d"] = ws.d;
    j["n"] = ws.N;
    if (ws.measure) {
        const auto& m = *ws.measure;
        nlohmann::ordered_json mj;
        mj["kind"] = m.synthetic ? "synthetic" : "green_tao";
        mj["n"] = m.params.N;
        mj["r"] = m.params.R;
        mj["delta1"] = m.params.delta1;
        mj["delta2"] = m.params.delta2;
        mj["ambient_d"] = m.params.d;
        if (m.synthetic) {
            mj["seed"] = m.synthetic_seed;
        } else {
            mj["omega_cutoff"] = m.wtrick.omega_cutoff;
            mj["b"] = m.wtrick.residues;
            mj["coord"] = m.coord;
        }
        j["measure"] = mj;
    } else {
        j["measure"] = nullptr;
    }
    auto& fs = j["factors"] = nlohmann::ordered_json::array();
    for (const auto& [mask, factor] : ws.factors) {
        nlohmann::ordered_json fj;
        std::vector<std::uint32_t> classes;
        for (std::uint32_t c = 0; c <= ws.d; ++c)
            if ((mask >> c) & 1u) classes.push_back(c);
        fj["classes"] = classes;
        auto& forms = fj["forms"] = nlohmann::ordered_json::array();
        for (const auto& form : factor.forms) {
            forms.push_back({{"support", form.support},
                             {"coeffs", form.coeffs},
                             {"constant", form.constant}});
        }
        fs.push_back(fj);
    }
    return j;
}

WeightSystem weight_system_from_json(const nlohmann::json& j) {
    WeightSystem ws;
    ws.d = j.at("d").get<std::uint32_t>();
    ws.N = j.at("n").get<std::uint32_t>();
    if (!j.at("measure").is_null()) {
        const auto& mj = j.at("measure");
        const std::string kind = mj.at("kind").get<std::string>();
        if (kind == "synthetic") {
            ws.measure = synthetic_measure(mj.at("n").get<std::uint64_t>(),
                                           mj.at("seed").get<std::uint64_t>(),
                                           mj.at("delta1").get<double>(),
                                           mj.at("delta2").get<double>(),
                                           mj.at("ambient_d").get<std::uint32_t>());
        } else {
            MeasureParams p;
            p.N = mj.at("n").get<std::uint64_t>();
            p.R = mj.at("r").get<double>();
            p.delta1 = mj.at("delta1").get<double>();
            p.delta2 = mj.at("delta2").get<double>();
            p.d = mj.at("ambient_d").get<std::uint32_t>();
            const auto wt = make_wtrick(mj.at("omega_cutoff").get<std::uint32_t>(),
                                        mj.at("b").get<std::vector<std::uint64_t>>());
            ws.measure = green_tao_measure(p, wt, mj.at("coord").get<std::size_t>());
        }
    }
    for (const auto& fj : j.at("factors")) {
        std::uint32_t mask = 0;
        for (const auto& c : fj.at("classes")) mask |= 1u << c.get<std::uint32_t>();
        WeightFactor factor;
        for (const auto& formj : fj.at("forms")) {
            AffineForm form;
            form.universe = ws.d + 1;
            form.support = formj.at("support").get<std::vector<std::uint32_t>>();
            form.coeffs = formj.at("coeffs").get<std::vector<std::int64_t>>();
            form.constant = formj.at("constant").get<std::int64_t>();
            factor.forms.push_back(std::move(form));
        }
        ws.factors[mask] = std::move(factor);
    }
    return ws;
}

} // namespace gowerslab
