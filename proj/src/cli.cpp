#include "gowerslab/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gowerslab/corners.hpp"
#include "gowerslab/gowers.hpp"
#include "gowerslab/measure.hpp"
#include "gowerslab/parallel.hpp"
#include "gowerslab/primes.hpp"
#include "gowerslab/rng.hpp"
#include "gowerslab/verify.hpp"
#include "gowerslab/weights.hpp"

namespace gowerslab::cli {

namespace {

using nlohmann::ordered_json;

struct MeasureOpts {
    std::uint64_t n = 521;
    std::uint32_t d = 2;
    std::uint32_t omega_cutoff = 7; // W = 210
    std::uint64_t b = 1;
    double r = 0.0; // 0 = default truncation level
    double delta1 = 0.05;
    double delta2 = 0.95;
};

void add_measure_opts(CLI::App* cmd, MeasureOpts& m) {
    cmd->add_option("--n", m.n, "modulus N (prime for Green-Tao measures)");
    cmd->add_option("--d", m.d, "ambient dimension");
    cmd->add_option("--omega-cutoff", m.omega_cutoff, "W = product of primes <= cutoff");
    cmd->add_option("--b", m.b, "residue b, coprime to W");
    cmd->add_option("--r", m.r, "truncation level R (0 = default)");
    cmd->add_option("--delta1", m.delta1, "window lower fraction");
    cmd->add_option("--delta2", m.delta2, "window upper fraction");
}

int config_error(const std::string& field, const std::string& what) {
    std::cerr << "config error [" << field << "]: " << what << "\n";
    return 2;
}

// Flat key=value config support: keys become --key arguments inserted before
// the user's own flags, so explicit command-line values win.
std::vector<std::string> merge_config_args(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("config", "cannot open " + path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) pairs.emplace_back(key, value);
    }
    std::vector<std::string> merged;
    if (!args.empty()) merged.push_back(args[0]); // the subcommand word
    std::size_t skip_from = 1;
    if (args.size() > 1 && !args[1].empty() && args[1][0] != '-') {
        merged.push_back(args[1]); // a positional like `verify lf`
        skip_from = 2;
    }
    for (const auto& [key, value] : pairs) {
        const std::string flag = "--" + key;
        bool overridden = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) overridden = true;
        if (overridden) continue;
        merged.push_back(flag);
        merged.push_back(value);
    }
    for (std::size_t i = skip_from; i < args.size(); ++i) merged.push_back(args[i]);
    return merged;
}

void validate_window(const MeasureOpts& m) {
    if (!(m.delta1 > 0.0 && m.delta1 < m.delta2 && m.delta2 <= 1.0))
        throw CLI::ValidationError("delta window",
                                   "need 0 < delta1 < delta2 <= 1 (delta1=" +
                                       std::to_string(m.delta1) +
                                       ", delta2=" + std::to_string(m.delta2) + ")");
}

GreenTaoMeasure build_measure(const MeasureOpts& m) {
    validate_window(m);
    const WTrickParams wt = make_wtrick(m.omega_cutoff, {m.b});
    MeasureParams p;
    p.N = m.n;
    p.R = m.r;
    p.delta1 = m.delta1;
    p.delta2 = m.delta2;
    p.d = m.d;
    return green_tao_measure(p, wt, 0);
}

void write_json(const ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

ordered_json effective_measure_config(const MeasureOpts& m, double resolved_r) {
    ordered_json j;
    j["n"] = m.n;
    j["d"] = m.d;
    j["omega_cutoff"] = m.omega_cutoff;
    j["b"] = m.b;
    j["r"] = resolved_r;
    j["delta1"] = m.delta1;
    j["delta2"] = m.delta2;
    return j;
}

ordered_json report_envelope(const std::string& experiment) {
    ordered_json j;
    j["version"] = kReportVersion;
    j["experiment"] = experiment;
    return j;
}

// ---- subcommand payloads -------------------------------------------------

struct SieveArgs {
    std::uint64_t limit = 1000000;
    std::string out = "sieve_report.json";
    std::string csv;
};

int run_sieve(const SieveArgs& a) {
    if (a.limit < 2) return config_error("limit", "must be >= 2");
    const PrimeTable table = sieve_primes(a.limit);
    const auto mu = mobius_table(a.limit);
    std::int64_t mertens = 0;
    for (std::uint64_t n = 1; n <= a.limit; ++n) mertens += mu[n];
    ordered_json j = report_envelope("sieve");
    j["params"] = {{"limit", a.limit}};
    j["quantities"] = {{"prime_count", table.primes.size()},
                       {"largest_prime", table.primes.back()},
                       {"mertens_sum", mertens}};
    j["verdict"] = "pass";
    write_json(j, a.out);
    if (!a.csv.empty()) {
        std::ostringstream os;
        os << "n,mu,is_prime\n";
        for (std::uint64_t n = 1; n <= a.limit; ++n)
            os << n << ',' << static_cast<int>(mu[n]) << ',' << static_cast<int>(table.is_prime[n])
               << '\n';
        write_text(os.str(), a.csv);
    }
    std::cout << "sieve: pi(" << a.limit << ") = " << table.primes.size() << "\n";
    return 0;
}

struct MeasureArgs {
    MeasureOpts m;
    std::string out = "measure_report.json";
    std::string csv;
};

int run_measure(const MeasureArgs& a) {
    const GreenTaoMeasure nu = build_measure(a.m);
    double mean = 0.0, mx = 0.0, window_mass = 0.0;
    std::uint64_t support = 0;
    for (const double v : nu.values) {
        mean += v;
        mx = std::max(mx, v);
        if (v != 0.0) ++support;
    }
    mean /= static_cast<double>(nu.values.size());
    for (std::uint64_t n = 0; n < nu.params.N; ++n)
        if (nu.in_window(n)) window_mass += nu.values[n];
    window_mass /= static_cast<double>(nu.params.N);
    const double margin = minorization_margin(nu);

    ordered_json j = report_envelope("measure");
    j["params"] = effective_measure_config(a.m, nu.params.R);
    j["quantities"] = {{"mean", mean},
                       {"window_mass", window_mass},
                       {"max", mx},
                       {"support", support},
                       {"minorization_margin", margin},
                       {"minorization_holds", margin >= 0.0}};
    j["verdict"] = margin >= 0.0 ? "pass" : "fail";
    write_json(j, a.out);
    if (!a.csv.empty()) {
        std::ostringstream os;
        os << "n,nu\n";
        os.precision(17);
        for (std::uint64_t n = 0; n < nu.params.N; ++n) os << n << ',' << nu.values[n] << '\n';
        write_text(os.str(), a.csv);
    }
    std::cout << "measure: mean " << mean << ", minorization margin " << margin << "\n";
    return margin >= 0.0 ? 0 : 1;
}

struct VerifyArgs {
    std::string which; // lf | gcs | norm | vn | dual
    MeasureOpts m;
    std::string family = "schur"; // single | product | schur
    std::string mode = "exact";   // exact | sampled
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 7;
    std::uint64_t trials = 100;
    double alpha = 0.5;
    std::uint32_t k = 2;
    std::uint64_t probes = 8;
    std::vector<std::uint64_t> n_grid;
    std::string out;
};

FormsFamily named_family(const std::string& name) {
    if (name == "single") return forms_family(1, {{{1}, 0}});
    if (name == "product") return forms_family(2, {{{1, 0}, 0}, {{0, 1}, 0}});
    if (name == "schur")
        return forms_family(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}});
    throw CLI::ValidationError("family", "unknown family '" + name +
                                             "' (single | product | schur)");
}

int emit_report(const ExperimentReport& rep, const std::string& out_path,
                const std::string& fallback_name) {
    const std::string path = out_path.empty() ? fallback_name : out_path;
    write_json(rep.to_json(), path);
    std::cout << rep.experiment << ": " << (rep.pass ? "pass" : "FAIL") << " ("
              << rep.wall_ms << " ms) -> " << path << "\n";
    return rep.pass ? 0 : 1;
}

int run_verify(const VerifyArgs& a) {
    if (a.which == "lf") {
        const GreenTaoMeasure nu = build_measure(a.m);
        std::optional<SampledMode> mode;
        if (a.mode == "sampled") mode = SampledMode{a.samples, a.seed};
        else if (a.mode != "exact") return config_error("mode", "exact or sampled");
        ExperimentReport rep = check_linear_forms(nu, named_family(a.family), mode);
        return emit_report(rep, a.out, "verify_lf_report.json");
    }
    if (a.which == "gcs" || a.which == "norm") {
        // synthetic measure: the checked inequalities hold for any nonnegative
        // weights, and composite N stays available
        validate_window(a.m);
        const GreenTaoMeasure nu = synthetic_measure(a.m.n, a.seed, a.m.delta1, a.m.delta2, a.m.d);
        const WeightSystem ws = corner_weight_system(a.m.d, nu);
        const BoxNormContext ctx(ws, IndexSet{a.m.d + 1, (1u << a.m.d) - 1u});
        if (a.which == "norm") {
            ExperimentReport rep = check_norm_axioms(ctx, a.trials, a.seed);
            return emit_report(rep, a.out, "verify_norm_report.json");
        }
        const std::size_t count = std::size_t{1} << a.m.d;
        bool all_pass = true;
        ExperimentReport last;
        double worst_margin = std::numeric_limits<double>::infinity();
        for (std::uint64_t trial = 0; trial < a.trials; ++trial) {
            std::vector<GridFunction> fs;
            for (std::size_t i = 0; i < count; ++i)
                fs.push_back(random_grid(a.m.d, static_cast<std::uint32_t>(a.m.n), a.seed,
                                         trial * count + i));
            last = check_gcs(fs, ctx);
            worst_margin = std::min(worst_margin, last.deviations["margin"].get<double>());
            all_pass = all_pass && last.pass;
        }
        last.params["trials"] = a.trials;
        last.params["seed"] = a.seed;
        last.deviations["worst_margin"] = worst_margin;
        last.pass = all_pass;
        return emit_report(last, a.out, "verify_gcs_report.json");
    }
    if (a.which == "vn" || a.which == "dual") {
        std::vector<std::uint64_t> grid = a.n_grid;
        if (grid.empty()) grid.push_back(a.m.n);
        auto rows = ordered_json::array();
        std::vector<double> stats;
        bool pass = true;
        double wall = 0.0;
        for (const std::uint64_t N : grid) {
            MeasureOpts m = a.m;
            m.n = N;
            const GreenTaoMeasure nu = build_measure(m);
            if (a.which == "vn") {
                if (m.d != 2 && m.d != 3)
                    throw CLI::ValidationError("d", "vn supports d = 2 or 3");
                const PrimePointSet A =
                    random_prime_subset(m.d, N, a.alpha, a.seed, m.delta1, m.delta2);
                const WeightSystem ws = corner_weight_system(m.d, nu);
                const auto fs = corner_face_functions(A, nu);
                ExperimentReport rep = check_von_neumann(fs, ws);
                pass = pass && rep.pass;
                wall += rep.wall_ms;
                stats.push_back(rep.quantities["ratio"].get<double>());
                rep.quantities["n"] = N;
                rep.quantities["r"] = nu.params.R;
                rows.push_back(rep.quantities);
            } else {
                const WeightSystem ws = corner_weight_system(m.d, nu);
                // face {1, .., d}: its d-edge weight is nu-composed, so the
                // dominated class is nontrivial
                const std::uint32_t face_mask = ((1u << (m.d + 1)) - 1u) & ~1u;
                const BoxNormContext ctx(ws, IndexSet{m.d + 1, face_mask});
                std::vector<GridFunction> Fs;
                const auto& bound = ctx.face_weight();
                for (std::uint32_t j = 0; j < a.k; ++j) {
                    GridFunction F = GridFunction::zeros(m.d, static_cast<std::uint32_t>(N));
                    const CounterRng rng(a.seed, 500 + j);
                    for (std::size_t i = 0; i < F.size(); ++i)
                        F.values[i] = rng.uniform01(i) * bound[i];
                    Fs.push_back(std::move(F));
                }
                ExperimentReport rep = check_dual_product(Fs, ctx, a.probes, a.seed);
                pass = pass && rep.pass;
                wall += rep.wall_ms;
                stats.push_back(rep.quantities["max_pairing"].get<double>());
                rep.quantities["n"] = N;
                rep.quantities["r"] = nu.params.R;
                rows.push_back(rep.quantities);
            }
        }
        // stability across the grid: vn within 20% slack non-increasing,
        // dual within 50%
        const double slack = a.which == "vn" ? 1.2 : 1.5;
        bool stable = true;
        for (std::size_t i = 0; i + 1 < stats.size(); ++i)
            if (stats[i + 1] > slack * std::max(stats[i], 1e-300)) stable = false;
        ExperimentReport rep;
        rep.experiment = a.which == "vn" ? "von_neumann_grid" : "dual_product_grid";
        rep.params = effective_measure_config(a.m, 0.0);
        rep.params["n_grid"] = grid;
        rep.params["seed"] = a.seed;
        if (a.which == "vn") rep.params["alpha"] = a.alpha;
        else {
            rep.params["k"] = a.k;
            rep.params["probes"] = a.probes;
        }
        rep.quantities["rows"] = rows;
        rep.quantities["stats"] = stats;
        rep.deviations["stable"] = stable;
        rep.pass = pass && (grid.size() < 2 || stable);
        rep.wall_ms = wall;
        return emit_report(rep, a.out, "verify_" + a.which + "_report.json");
    }
    return config_error("verify", "unknown check '" + a.which + "' (lf|gcs|norm|vn|dual)");
}

struct CornersArgs {
    std::string which; // count | scan | reduce
    std::uint64_t n = 1000;
    std::uint32_t d = 2;
    std::string input;
    std::string rule = "full"; // full | random
    double alpha = 0.5;
    std::uint64_t seed = 0;
    double delta1 = 0.0;
    double delta2 = 1.0;
    std::uint32_t omega_cutoff = 5;
    double delta_n = 0.01;
    std::vector<std::uint64_t> n_grid;
    std::string out;
    std::string csv;
};

PrimePointSet corners_input(const CornersArgs& a, std::uint64_t N) {
    if (!a.input.empty()) return load_point_set(a.input, a.d, N);
    if (a.rule == "full") return full_prime_grid(a.d, N, a.delta1, a.delta2);
    if (a.rule == "random")
        return random_prime_subset(a.d, N, a.alpha, a.seed, a.delta1, a.delta2);
    throw CLI::ValidationError("rule", "unknown rule '" + a.rule + "' (full | random)");
}

ordered_json corner_report_json(const CornerReport& r) {
    ordered_json j;
    j["n"] = r.N;
    j["d"] = r.d;
    j["alpha_hat"] = r.alpha_hat;
    j["nondegenerate"] = r.nondegenerate;
    j["degenerate"] = r.degenerate;
    j["c_hat"] = r.c_hat;
    return j;
}

int run_corners(const CornersArgs& a) {
    if (a.which == "count") {
        const PrimePointSet A = corners_input(a, a.n);
        const CornerReport rep = enumerate_corners(A);
        ordered_json j = report_envelope("corners_count");
        j["params"] = {{"n", a.n},       {"d", a.d},     {"input", a.input},
                       {"rule", a.rule}, {"alpha", a.alpha}, {"seed", a.seed},
                       {"delta1", a.delta1}, {"delta2", a.delta2}};
        j["quantities"] = corner_report_json(rep);
        j["verdict"] = "pass";
        write_json(j, a.out.empty() ? "corners_count_report.json" : a.out);
        if (!a.csv.empty())
            write_text(corner_reports_csv(std::span<const CornerReport>(&rep, 1)), a.csv);
        std::cout << "corners count: " << rep.nondegenerate << " nondegenerate, "
                  << rep.degenerate << " degenerate (" << rep.wall_ms << " ms)\n";
        return 0;
    }
    if (a.which == "scan") {
        if (a.n_grid.empty()) return config_error("n-grid", "scan needs --n-grid");
        SubsetRule rule;
        rule.full = a.rule == "full";
        rule.alpha = a.alpha;
        rule.seed = a.seed;
        rule.delta1 = a.delta1;
        rule.delta2 = a.delta2;
        const auto reports = density_scan(a.d, a.n_grid, rule);
        ordered_json j = report_envelope("corners_scan");
        j["params"] = {{"d", a.d},         {"n_grid", a.n_grid}, {"rule", a.rule},
                       {"alpha", a.alpha}, {"seed", a.seed},     {"delta1", a.delta1},
                       {"delta2", a.delta2}};
        auto rows = ordered_json::array();
        for (const auto& r : reports) rows.push_back(corner_report_json(r));
        j["quantities"] = {{"rows", rows}};
        j["verdict"] = "pass";
        write_json(j, a.out.empty() ? "corners_scan_report.json" : a.out);
        write_text(corner_reports_csv(reports),
                   a.csv.empty() ? "corners_scan.csv" : a.csv);
        std::cout << "corners scan: " << reports.size() << " grid points\n";
        return 0;
    }
    if (a.which == "reduce") {
        const PrimePointSet A = corners_input(a, a.n);
        const double d1 = a.delta1 > 0.0 ? a.delta1 : 0.05;
        const double d2 = a.delta2 < 1.0 ? a.delta2 : 0.95;
        const ReductionResult red = wtrick_reduce(A, a.omega_cutoff, {d1, d2}, a.delta_n);
        const PullbackVerdict pv = corner_pullback_check(red, A);
        const bool pigeonhole = red.achieved_density >= red.mean_density;
        ordered_json j = report_envelope("corners_reduce");
        j["params"] = {{"n", a.n},         {"d", a.d},
                       {"input", a.input}, {"rule", a.rule},
                       {"omega_cutoff", a.omega_cutoff},
                       {"delta1", d1},     {"delta2", d2},
                       {"delta_n", a.delta_n}};
        j["quantities"] = {{"w", red.W},
                           {"b", red.b},
                           {"n_prime", red.N_prime},
                           {"a_prime_size", red.A_prime.size()},
                           {"class_size", red.class_size},
                           {"coprime_total", red.coprime_total},
                           {"mean_density", red.mean_density},
                           {"wrap_around_free", red.wrap_around_free},
                           {"pullback_corners_checked", pv.corners_checked},
                           {"pigeonhole_holds", pigeonhole}};
        j["verdict"] = (pv.ok && pigeonhole) ? "pass" : "fail";
        write_json(j, a.out.empty() ? "corners_reduce_report.json" : a.out);
        std::cout << "corners reduce: W=" << red.W << " N'=" << red.N_prime << " |A'|="
                  << red.A_prime.size() << " pullback " << (pv.ok ? "pass" : "FAIL") << "\n";
        return (pv.ok && pigeonhole) ? 0 : 1;
    }
    return config_error("corners", "unknown subcommand '" + a.which + "' (count|scan|reduce)");
}

} // namespace

namespace {

int parse_and_run(int argc, const char* const* argv) {
    CLI::App app{"gowers-lab: weighted-hypergraph box norms, Green-Tao measures and "
                 "corner counts in dense subsets of the primes"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker thread cap")
        ->envname("GOWERS_LAB_THREADS");

    SieveArgs sieve_args;
    auto* sieve_cmd = app.add_subcommand("sieve", "prime and Mobius tables");
    sieve_cmd->fallthrough();
    sieve_cmd->add_option("--config", "flat key=value config file (command line overrides)")->expected(1);
    sieve_cmd->add_option("--limit", sieve_args.limit, "sieve bound");
    sieve_cmd->add_option("--out", sieve_args.out, "JSON report path");
    sieve_cmd->add_option("--csv", sieve_args.csv, "CSV table path");

    MeasureArgs measure_args;
    auto* measure_cmd = app.add_subcommand("measure", "emit a Green-Tao measure with stats");
    measure_cmd->fallthrough();
    measure_cmd->add_option("--config", "flat key=value config file (command line overrides)")->expected(1);
    add_measure_opts(measure_cmd, measure_args.m);
    measure_cmd->add_option("--out", measure_args.out, "JSON report path");
    measure_cmd->add_option("--csv", measure_args.csv, "CSV of (n, nu)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "verification experiments");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--config", "flat key=value config file (command line overrides)")->expected(1);
    verify_cmd->add_option("which", verify_args.which, "lf | gcs | norm | vn | dual")
        ->required();
    add_measure_opts(verify_cmd, verify_args.m);
    verify_cmd->add_option("--family", verify_args.family, "forms family (single|product|schur)");
    verify_cmd->add_option("--mode", verify_args.mode, "exact | sampled");
    verify_cmd->add_option("--samples", verify_args.samples, "sample count (sampled mode)");
    verify_cmd->add_option("--seed", verify_args.seed, "RNG seed");
    verify_cmd->add_option("--trials", verify_args.trials, "instance count (gcs/norm)");
    verify_cmd->add_option("--alpha", verify_args.alpha, "subset density (vn)");
    verify_cmd->add_option("--k", verify_args.k, "dual-product factor count");
    verify_cmd->add_option("--probes", verify_args.probes, "dual-product probe count");
    verify_cmd->add_option("--n-grid", verify_args.n_grid, "N grid for stability checks")
        ->delimiter(',');
    verify_cmd->add_option("--out", verify_args.out, "JSON report path");

    CornersArgs corners_args;
    auto* corners_cmd = app.add_subcommand("corners", "corner counting and reduction");
    corners_cmd->fallthrough();
    corners_cmd->add_option("--config", "flat key=value config file (command line overrides)")->expected(1);
    corners_cmd->add_option("which", corners_args.which, "count | scan | reduce")->required();
    corners_cmd->add_option("--n", corners_args.n, "coordinate bound N");
    corners_cmd->add_option("--d", corners_args.d, "dimension (2 or 3)");
    corners_cmd->add_option("--input", corners_args.input, "point-set file (one point per line)");
    corners_cmd->add_option("--rule", corners_args.rule, "full | random");
    corners_cmd->add_option("--alpha", corners_args.alpha, "density for random rule");
    corners_cmd->add_option("--seed", corners_args.seed, "RNG seed");
    corners_cmd->add_option("--delta1", corners_args.delta1, "window lower fraction");
    corners_cmd->add_option("--delta2", corners_args.delta2, "window upper fraction");
    corners_cmd->add_option("--omega-cutoff", corners_args.omega_cutoff, "W cutoff for reduce");
    corners_cmd->add_option("--delta-n", corners_args.delta_n, "N' slack delta");
    corners_cmd->add_option("--n-grid", corners_args.n_grid, "N grid for scan")->delimiter(',');
    corners_cmd->add_option("--out", corners_args.out, "JSON report path");
    corners_cmd->add_option("--csv", corners_args.csv, "CSV table path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (threads > 0) set_worker_count(threads);

    try {
        if (sieve_cmd->parsed()) return run_sieve(sieve_args);
        if (measure_cmd->parsed()) return run_measure(measure_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (corners_cmd->parsed()) return run_corners(corners_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace

int main_entry(const std::vector<std::string>& args) {
    std::vector<std::string> merged;
    try {
        merged = merge_config_args(args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> argv;
    argv.push_back("gowers-lab");
    for (const auto& a : merged) argv.push_back(a.c_str());
    return parse_and_run(static_cast<int>(argv.size()), argv.data());
}

int main_entry(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return main_entry(args);
}

} // namespace gowerslab::cli
