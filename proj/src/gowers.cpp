#include "gowerslab/gowers.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gowerslab/parallel.hpp"

namespace gowerslab {

namespace {

std::size_t pow_sz(std::uint32_t N, std::uint32_t k) {
    std::size_t r = 1;
    for (std::uint32_t i = 0; i < k; ++i) r *= N;
    return r;
}

void decode(std::size_t idx, std::uint32_t m, std::uint32_t N, std::uint32_t* out) {
    for (std::uint32_t j = m; j-- > 0;) {
        out[j] = static_cast<std::uint32_t>(idx % N);
        idx /= N;
    }
}

// Weight factor materialized over its positions within the face.
struct PosFactor {
    std::vector<std::uint32_t> positions; // ascending, face-internal
    const std::vector<double>* table;     // dense over Z_N^{|positions|}
};

// prod over omega in {0,1}^{|S|} (optionally omega != 0) of
// table[P_omega(x_S, y_S)].
double factor_cube_product(const PosFactor& f, const std::uint32_t* x,
                           const std::uint32_t* y, std::uint32_t N, bool skip_zero) {
    const std::uint32_t k = static_cast<std::uint32_t>(f.positions.size());
    double prod = 1.0;
    for (std::uint32_t omega = skip_zero ? 1u : 0u; omega < (1u << k); ++omega) {
        std::size_t idx = 0;
        for (std::uint32_t j = 0; j < k; ++j) {
            const std::uint32_t pos = f.positions[j];
            idx = idx * N + (((omega >> j) & 1u) ? y[pos] : x[pos]);
        }
        prod *= (*f.table)[idx];
    }
    return prod;
}

// Split of the context's weight factors around the eliminated (last) position.
struct KernelPlan {
    std::uint32_t m = 0, N = 0;
    std::size_t M = 1;                  // N^{m-1}
    std::vector<PosFactor> keep;        // support inside the first m-1 positions
    std::vector<PosFactor> elim;        // support contains the last position;
                                        // positions stores S' = S \ {last}
    const std::vector<double>* elim_singleton = nullptr; // table of S = {last}, if any
    std::vector<std::array<std::uint32_t, 4>> coords;    // decoded x'/y' indices
};

KernelPlan make_plan(const BoxNormContext& ctx) {
    KernelPlan plan;
    plan.m = ctx.face_dim();
    plan.N = ctx.modulus();
    plan.M = pow_sz(plan.N, plan.m - 1);
    const std::uint32_t last = plan.m - 1;
    for (std::uint32_t mask = 1; mask + 1 < (1u << plan.m); ++mask) {
        const auto& table = ctx.table(mask);
        if (table.empty()) continue;
        PosFactor f;
        for (std::uint32_t p = 0; p < plan.m; ++p)
            if ((mask >> p) & 1u && p != last) f.positions.push_back(p);
        f.table = &table;
        if ((mask >> last) & 1u) {
            if (f.positions.empty())
                plan.elim_singleton = &table;
            else
                plan.elim.push_back(std::move(f));
        } else {
            plan.keep.push_back(std::move(f));
        }
    }
    if (plan.m > 4)
        throw std::invalid_argument("box kernels: face dimension > 4 is outside desk scale");
    plan.coords.resize(plan.M);
    for (std::size_t i = 0; i < plan.M; ++i)
        decode(i, plan.m - 1, plan.N, plan.coords[i].data());
    return plan;
}

// t-row of the eliminated-coordinate weights for a fixed (x', y'):
// trow[t] = prod_{S contains last} prod_{omega_{S'}} table_S[P_{omega_{S'}}, t].
// skip_zero restricts to omega_{S'} != 0 (the dual's x_d side).
void fill_trow(const KernelPlan& plan, const std::uint32_t* x, const std::uint32_t* y,
               bool skip_zero, std::vector<double>& trow) {
    const std::uint32_t N = plan.N;
    if (plan.elim_singleton != nullptr && !skip_zero) {
        trow.assign(plan.elim_singleton->begin(), plan.elim_singleton->end());
    } else {
        trow.assign(N, 1.0);
    }
    for (const auto& f : plan.elim) {
        const std::uint32_t k = static_cast<std::uint32_t>(f.positions.size());
        for (std::uint32_t omega = skip_zero ? 1u : 0u; omega < (1u << k); ++omega) {
            std::size_t base = 0;
            for (std::uint32_t j = 0; j < k; ++j) {
                const std::uint32_t pos = f.positions[j];
                base = base * N + (((omega >> j) & 1u) ? y[pos] : x[pos]);
            }
            const double* row = f.table->data() + base * N;
            for (std::uint32_t t = 0; t < N; ++t) trow[t] *= row[t];
        }
    }
}

bool trow_is_static(const KernelPlan& plan) { return plan.elim.empty(); }

} // namespace

BoxNormContext::BoxNormContext(const WeightSystem& ws, IndexSet face) : face_(face) {
    if (face.universe != ws.d + 1)
        throw std::invalid_argument("BoxNormContext: face universe must be d+1");
    if (face.size() != ws.d)
        throw std::invalid_argument("BoxNormContext: face must have size d");
    m_ = ws.d;
    N_ = ws.N;
    const auto classes = face.members();
    tables_.assign(1u << m_, {});
    std::vector<std::uint32_t> point;
    for (std::uint32_t pos_mask = 1; pos_mask + 1 < (1u << m_); ++pos_mask) {
        std::uint32_t class_mask = 0;
        std::vector<std::uint32_t> positions;
        for (std::uint32_t p = 0; p < m_; ++p)
            if ((pos_mask >> p) & 1u) {
                class_mask |= 1u << classes[p];
                positions.push_back(p);
            }
        const WeightFactor* factor = ws.factor(class_mask);
        if (factor == nullptr || factor->trivial()) continue;
        const std::uint32_t k = static_cast<std::uint32_t>(positions.size());
        std::vector<double> table(pow_sz(N_, k));
        point.resize(k);
        const IndexSet I{ws.d + 1, class_mask};
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            decode(idx, k, N_, point.data());
            table[idx] = eval_weight(ws, I, point);
        }
        tables_[pos_mask] = std::move(table);
    }
    // density of d mu against the uniform average
    mu_density_.assign(pow_sz(N_, m_), 1.0);
    std::vector<std::uint32_t> x(m_);
    for (std::uint32_t pos_mask = 1; pos_mask + 1 < (1u << m_); ++pos_mask) {
        if (tables_[pos_mask].empty()) continue;
        std::vector<std::uint32_t> positions;
        for (std::uint32_t p = 0; p < m_; ++p)
            if ((pos_mask >> p) & 1u) positions.push_back(p);
        for (std::size_t idx = 0; idx < mu_density_.size(); ++idx) {
            decode(idx, m_, N_, x.data());
            std::size_t ti = 0;
            for (const std::uint32_t p : positions) ti = ti * N_ + x[p];
            mu_density_[idx] *= tables_[pos_mask][ti];
        }
    }
    // the face's own d-edge weight (domination bound)
    {
        std::uint32_t face_class_mask = 0;
        for (const std::uint32_t c : classes) face_class_mask |= 1u << c;
        const WeightFactor* factor = ws.factor(face_class_mask);
        if (factor == nullptr || factor->trivial()) {
            face_weight_.assign(pow_sz(N_, m_), 1.0);
        } else {
            face_weight_.resize(pow_sz(N_, m_));
            const IndexSet I{ws.d + 1, face_class_mask};
            for (std::size_t idx = 0; idx < face_weight_.size(); ++idx) {
                decode(idx, m_, N_, x.data());
                face_weight_[idx] = eval_weight(ws, I, x);
            }
        }
    }
}

double weighted_inner_product(const GridFunction& f, const GridFunction& g,
                              const BoxNormContext& ctx) {
    if (f.d != ctx.face_dim() || g.d != ctx.face_dim() || f.N != ctx.modulus() ||
        g.N != ctx.modulus())
        throw std::invalid_argument("weighted_inner_product: dimension mismatch");
    const std::size_t total = f.size();
    const std::uint32_t N = ctx.modulus();
    const std::size_t rows = total / N;
    const auto& mu = ctx.mu_density();
    const double sum = parallel_sum(static_cast<std::int64_t>(rows), [&](std::int64_t r) {
        const std::size_t base = static_cast<std::size_t>(r) * N;
        double s = 0.0;
        for (std::uint32_t t = 0; t < N; ++t)
            s += f.values[base + t] * g.values[base + t] * mu[base + t];
        return s;
    });
    return sum / static_cast<double>(total);
}

namespace {

// Shared core of the Gowers inner product: fs0/fs1 are the 2^{m-1}-tuples for
// the x_d and y_d sides. abs_scale receives sum of |contributions|.
double gowers_core(const BoxNormContext& ctx, const GridFunction* const* fs0,
                   const GridFunction* const* fs1, bool all_equal, double* abs_scale) {
    const KernelPlan plan = make_plan(ctx);
    const std::uint32_t m = plan.m, N = plan.N;
    const std::size_t M = plan.M;
    const std::uint32_t half = 1u << (m - 1);
    const bool static_trow = trow_is_static(plan);
    std::vector<double> static_row;
    if (static_trow) {
        if (plan.elim_singleton != nullptr)
            static_row.assign(plan.elim_singleton->begin(), plan.elim_singleton->end());
        else
            static_row.assign(N, 1.0);
    }

    std::vector<double> abs_partials(M, 0.0);
    const double sum = parallel_sum(static_cast<std::int64_t>(M), [&](std::int64_t ixs) {
        const std::size_t ix = static_cast<std::size_t>(ixs);
        const std::uint32_t* x = plan.coords[ix].data();
        std::vector<double> trow;
        std::vector<std::size_t> offs(half);
        double row_sum = 0.0, row_abs = 0.0;
        for (std::size_t iy = 0; iy < M; ++iy) {
            const std::uint32_t* y = plan.coords[iy].data();
            double wprime = 1.0;
            for (const auto& f : plan.keep)
                wprime *= factor_cube_product(f, x, y, N, /*skip_zero=*/false);
            if (wprime == 0.0) continue;
            const double* tr;
            if (static_trow) {
                tr = static_row.data();
            } else {
                fill_trow(plan, x, y, /*skip_zero=*/false, trow);
                tr = trow.data();
            }
            for (std::uint32_t omega = 0; omega < half; ++omega) {
                std::size_t idx = 0;
                for (std::uint32_t p = 0; p + 1 < m; ++p)
                    idx = idx * N + (((omega >> p) & 1u) ? y[p] : x[p]);
                offs[omega] = idx * N;
            }
            double p0 = 0.0, p1 = 0.0;
            for (std::uint32_t t = 0; t < N; ++t) {
                double prod0 = tr[t];
                for (std::uint32_t omega = 0; omega < half; ++omega)
                    prod0 *= fs0[omega]->values[offs[omega] + t];
                p0 += prod0;
                if (!all_equal) {
                    double prod1 = tr[t];
                    for (std::uint32_t omega = 0; omega < half; ++omega)
                        prod1 *= fs1[omega]->values[offs[omega] + t];
                    p1 += prod1;
                }
            }
            if (all_equal) p1 = p0;
            const double contrib = wprime * (p0 / N) * (p1 / N);
            row_sum += contrib;
            row_abs += std::abs(contrib);
        }
        abs_partials[ix] = row_abs;
        return row_sum;
    });
    if (abs_scale != nullptr) *abs_scale = pairwise_sum(abs_partials) /
                                           (static_cast<double>(M) * static_cast<double>(M));
    return sum / (static_cast<double>(M) * static_cast<double>(M));
}

} // namespace

double gowers_inner_product(std::span<const GridFunction> fs, const BoxNormContext& ctx) {
    const std::uint32_t m = ctx.face_dim();
    if (fs.size() != (std::size_t{1} << m))
        throw std::invalid_argument("gowers_inner_product: expected 2^d functions, got " +
                                    std::to_string(fs.size()));
    for (const auto& f : fs)
        if (f.d != m || f.N != ctx.modulus())
            throw std::invalid_argument("gowers_inner_product: function domain mismatch");
    const std::uint32_t half = 1u << (m - 1);
    std::vector<const GridFunction*> fs0(half), fs1(half);
    for (std::uint32_t omega = 0; omega < half; ++omega) {
        fs0[omega] = &fs[omega];                 // last bit 0
        fs1[omega] = &fs[omega | half];          // last bit 1
    }
    return gowers_core(ctx, fs0.data(), fs1.data(), /*all_equal=*/false, nullptr);
}

double box_gowers_average(const GridFunction& f, const BoxNormContext& ctx) {
    const std::uint32_t m = ctx.face_dim();
    if (f.d != m || f.N != ctx.modulus())
        throw std::invalid_argument("box_norm: function domain mismatch");
    const std::uint32_t half = 1u << (m - 1);
    std::vector<const GridFunction*> fp(half, &f);
    double abs_scale = 0.0;
    const double G = gowers_core(ctx, fp.data(), fp.data(), /*all_equal=*/true, &abs_scale);
    if (G < -1e-9 * abs_scale)
        throw std::runtime_error("box_norm: negative Gowers average " + std::to_string(G) +
                                 " beyond tolerance (scale " + std::to_string(abs_scale) + ")");
    return G;
}

double box_norm(const GridFunction& f, const BoxNormContext& ctx) {
    const double G = box_gowers_average(f, ctx);
    const double root = 1.0 / static_cast<double>(std::size_t{1} << ctx.face_dim());
    return std::pow(std::max(G, 0.0), root);
}

GridFunction dual_function(const GridFunction& f, const BoxNormContext& ctx) {
    const std::uint32_t m = ctx.face_dim();
    if (f.d != m || f.N != ctx.modulus())
        throw std::invalid_argument("dual_function: function domain mismatch");
    const KernelPlan plan = make_plan(ctx);
    const std::uint32_t N = plan.N;
    const std::size_t M = plan.M;
    const std::uint32_t half = 1u << (m - 1);

    // Psi(x', y') = E_t prod_{omega'} f(P_omega', t) * [all y_d-side weights](t)
    std::vector<double> Psi(M * M);
    const bool static_trow = trow_is_static(plan);
    std::vector<double> static_row;
    if (static_trow) {
        if (plan.elim_singleton != nullptr)
            static_row.assign(plan.elim_singleton->begin(), plan.elim_singleton->end());
        else
            static_row.assign(N, 1.0);
    }
    parallel_for(static_cast<std::int64_t>(M), [&](std::int64_t ixs) {
        const std::size_t ix = static_cast<std::size_t>(ixs);
        const std::uint32_t* x = plan.coords[ix].data();
        std::vector<double> trow;
        std::vector<std::size_t> offs(half);
        for (std::size_t iy = 0; iy < M; ++iy) {
            const std::uint32_t* y = plan.coords[iy].data();
            const double* tr;
            if (static_trow) {
                tr = static_row.data();
            } else {
                fill_trow(plan, x, y, /*skip_zero=*/false, trow);
                tr = trow.data();
            }
            for (std::uint32_t omega = 0; omega < half; ++omega) {
                std::size_t idx = 0;
                for (std::uint32_t p = 0; p + 1 < m; ++p)
                    idx = idx * N + (((omega >> p) & 1u) ? y[p] : x[p]);
                offs[omega] = idx * N;
            }
            double s = 0.0;
            for (std::uint32_t t = 0; t < N; ++t) {
                double prod = tr[t];
                for (std::uint32_t omega = 0; omega < half; ++omega)
                    prod *= f.values[offs[omega] + t];
                s += prod;
            }
            Psi[ix * M + iy] = s / N;
        }
    });

    GridFunction out = GridFunction::zeros(m, N);
    parallel_for(static_cast<std::int64_t>(M), [&](std::int64_t ixs) {
        const std::size_t ix = static_cast<std::size_t>(ixs);
        const std::uint32_t* x = plan.coords[ix].data();
        double* drow = out.values.data() + ix * N;
        std::vector<double> brow(N);
        std::vector<std::size_t> offs(half);
        for (std::size_t iy = 0; iy < M; ++iy) {
            const std::uint32_t* y = plan.coords[iy].data();
            double a = Psi[ix * M + iy];
            for (const auto& fac : plan.keep)
                a *= factor_cube_product(fac, x, y, N, /*skip_zero=*/true);
            if (a == 0.0) continue;
            // x_d-side: f over omega' != 0 and weights over omega_{S'} != 0
            fill_trow(plan, x, y, /*skip_zero=*/true, brow);
            for (std::uint32_t omega = 1; omega < half; ++omega) {
                std::size_t idx = 0;
                for (std::uint32_t p = 0; p + 1 < m; ++p)
                    idx = idx * N + (((omega >> p) & 1u) ? y[p] : x[p]);
                offs[omega] = idx * N;
            }
            for (std::uint32_t t = 0; t < N; ++t) {
                double prod = brow[t];
                for (std::uint32_t omega = 1; omega < half; ++omega)
                    prod *= f.values[offs[omega] + t];
                drow[t] += a * prod;
            }
        }
        for (std::uint32_t t = 0; t < N; ++t) drow[t] /= static_cast<double>(M);
    });
    return out;
}

namespace {

// dense singleton table for a class, or nullptr when trivial
const std::vector<double>* singleton_table(const WeightSystem& ws, std::uint32_t cls,
                                           std::vector<std::vector<double>>& storage) {
    const WeightFactor* factor = ws.factor(1u << cls);
    if (factor == nullptr || factor->trivial()) return nullptr;
    std::vector<double> table(ws.N);
    const IndexSet I{ws.d + 1, 1u << cls};
    std::uint32_t pt[1];
    for (std::uint32_t n = 0; n < ws.N; ++n) {
        pt[0] = n;
        table[n] = eval_weight(ws, I, std::span<const std::uint32_t>(pt, 1));
    }
    storage.push_back(std::move(table));
    return &storage.back();
}

} // namespace

double lambda_form(std::span<const GridFunction> fs, const WeightSystem& ws) {
    const std::uint32_t d = ws.d;
    const std::uint32_t N = ws.N;
    if (fs.size() != d + 1)
        throw std::invalid_argument("lambda_form: expected d+1 face functions");
    for (const auto& f : fs)
        if (f.d != d || f.N != N)
            throw std::invalid_argument("lambda_form: face function domain mismatch");

    if (d == 2) {
        std::vector<std::vector<double>> storage;
        storage.reserve(3);
        const auto* w0 = singleton_table(ws, 0, storage);
        const auto* w1 = singleton_table(ws, 1, storage);
        const auto* w2 = singleton_table(ws, 2, storage);
        const double* f0 = fs[0].values.data(); // on face {1,2}
        const double* f1 = fs[1].values.data(); // on face {0,2}
        const double* f2 = fs[2].values.data(); // on face {0,1}
        const double total = parallel_sum(N, [&](std::int64_t x0) {
            const double a0 = w0 ? (*w0)[static_cast<std::size_t>(x0)] : 1.0;
            if (a0 == 0.0) return 0.0;
            const double* f1row = f1 + static_cast<std::size_t>(x0) * N;
            const double* f2row = f2 + static_cast<std::size_t>(x0) * N;
            double s1 = 0.0;
            for (std::uint32_t x1 = 0; x1 < N; ++x1) {
                const double a1 = (w1 ? (*w1)[x1] : 1.0) * f2row[x1];
                if (a1 == 0.0) continue;
                const double* f0row = f0 + static_cast<std::size_t>(x1) * N;
                double s2 = 0.0;
                if (w2) {
                    const double* w2p = w2->data();
                    for (std::uint32_t x2 = 0; x2 < N; ++x2)
                        s2 += f0row[x2] * f1row[x2] * w2p[x2];
                } else {
                    for (std::uint32_t x2 = 0; x2 < N; ++x2) s2 += f0row[x2] * f1row[x2];
                }
                s1 += a1 * s2;
            }
            return a0 * s1;
        });
        return total / (static_cast<double>(N) * N * N);
    }

    // generic path: odometer over Z_N^{d+1} with per-point table lookups
    struct Small {
        std::vector<std::uint32_t> classes;
        std::vector<double> table;
    };
    std::vector<Small> smalls;
    for (const auto& [mask, factor] : ws.factors) {
        if (factor.trivial()) continue;
        const std::uint32_t size = static_cast<std::uint32_t>(__builtin_popcount(mask));
        if (size >= d) continue; // only |I| < d weights enter Lambda
        Small s;
        for (std::uint32_t c = 0; c <= d; ++c)
            if ((mask >> c) & 1u) s.classes.push_back(c);
        s.table.resize(pow_sz(N, size));
        std::vector<std::uint32_t> pt(size);
        const IndexSet I{d + 1, mask};
        for (std::size_t idx = 0; idx < s.table.size(); ++idx) {
            decode(idx, size, N, pt.data());
            s.table[idx] = eval_weight(ws, I, pt);
        }
        smalls.push_back(std::move(s));
    }
    // strides of face coordinates: fs[i] omits class i
    std::vector<std::vector<std::size_t>> stride(d + 1, std::vector<std::size_t>(d + 1, 0));
    for (std::uint32_t i = 0; i <= d; ++i) {
        std::size_t s = 1;
        for (std::uint32_t c = d + 1; c-- > 0;) {
            if (c == i) continue;
            stride[i][c] = s;
            s *= N;
        }
    }
    const std::size_t inner_count = pow_sz(N, d);
    const double total = parallel_sum(N, [&](std::int64_t x0) {
        std::vector<std::uint32_t> x(d + 1, 0);
        x[0] = static_cast<std::uint32_t>(x0);
        double s = 0.0;
        for (std::size_t rest = 0; rest < inner_count; ++rest) {
            std::size_t rem = rest;
            for (std::uint32_t c = d + 1; c-- > 1;) {
                x[c] = static_cast<std::uint32_t>(rem % N);
                rem /= N;
            }
            double term = 1.0;
            for (const auto& sm : smalls) {
                std::size_t ti = 0;
                for (const std::uint32_t c : sm.classes) ti = ti * N + x[c];
                term *= sm.table[ti];
                if (term == 0.0) break;
            }
            if (term == 0.0) continue;
            for (std::uint32_t i = 0; i <= d && term != 0.0; ++i) {
                std::size_t fi = 0;
                for (std::uint32_t c = 0; c <= d; ++c)
                    if (c != i) fi += stride[i][c] * x[c];
                term *= fs[i].values[fi];
            }
            s += term;
        }
        return s;
    });
    return total / static_cast<double>(pow_sz(N, d + 1));
}

std::size_t OmegaSet::member_count() const {
    std::size_t c = 0;
    for (const auto b : membership) c += b;
    return c;
}

OmegaSet omega_set_from_dual(const GridFunction& dual, double T) {
    if (!(T > 1.0)) throw std::invalid_argument("omega_set: T must be > 1");
    OmegaSet omega;
    omega.T = T;
    omega.d = dual.d;
    omega.N = dual.N;
    omega.membership.resize(dual.size());
    double mx = 0.0;
    for (std::size_t i = 0; i < dual.size(); ++i) {
        const double a = std::abs(dual.values[i]);
        mx = std::max(mx, a);
        omega.membership[i] = a <= T ? 1 : 0;
    }
    omega.max_abs_dual = mx;
    return omega;
}

OmegaSet omega_set(const GridFunction& f, const BoxNormContext& ctx, double T) {
    return omega_set_from_dual(dual_function(f, ctx), T);
}

double complement_mass(const OmegaSet& omega, const BoxNormContext& ctx) {
    const auto& mu = ctx.mu_density();
    if (mu.size() != omega.membership.size())
        throw std::invalid_argument("complement_mass: context/omega mismatch");
    const std::uint32_t N = ctx.modulus();
    const std::size_t rows = mu.size() / N;
    const double sum = parallel_sum(static_cast<std::int64_t>(rows), [&](std::int64_t r) {
        const std::size_t base = static_cast<std::size_t>(r) * N;
        double s = 0.0;
        for (std::uint32_t t = 0; t < N; ++t)
            if (!omega.membership[base + t]) s += mu[base + t];
        return s;
    });
    return sum / static_cast<double>(mu.size());
}

double dual_l1_mass(const GridFunction& dual, const BoxNormContext& ctx) {
    const auto& mu = ctx.mu_density();
    const std::uint32_t N = ctx.modulus();
    const std::size_t rows = mu.size() / N;
    const double sum = parallel_sum(static_cast<std::int64_t>(rows), [&](std::int64_t r) {
        const std::size_t base = static_cast<std::size_t>(r) * N;
        double s = 0.0;
        for (std::uint32_t t = 0; t < N; ++t) s += dual.values[base + t] * mu[base + t];
        return s;
    });
    return sum / static_cast<double>(mu.size());
}

} // namespace gowerslab
