#pragma once

#include <string>
#include <vector>

#include "fraclab/existence.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/system_spec.hpp"
#include "fraclab/trajectory.hpp"

namespace fraclab {

enum class SolverMode { GlobalPicard, ETDMarching };

struct SolverConfig {
    SolverMode mode = SolverMode::ETDMarching;
    int substeps = 256;          // Duhamel substeps / marching steps per run
    double picard_tol = 1e-10;   // trajectory-norm tolerance on successive differences
    int picard_max_iters = 50;
    double constant_C = 1.0;     // the generic constant of the contraction estimates
    bool enforce_existence = false;
    bool store_states = true;

    void validate() const {
        if (substeps < 1) throw ConfigError("solver substeps must be positive");
        if (!(picard_tol > 0.0 && picard_tol < 1.0))
            throw ConfigError("picard tolerance must lie in (0, 1)");
        if (picard_max_iters < 1) throw ConfigError("picard iteration budget must be positive");
        if (!(constant_C > 0.0)) throw ConfigError("the generic constant C must be positive");
    }

    std::uint64_t hash() const {
        std::vector<double> v = {static_cast<double>(mode == SolverMode::GlobalPicard),
                                 static_cast<double>(substeps), picard_tol,
                                 static_cast<double>(picard_max_iters), constant_C,
                                 static_cast<double>(enforce_existence)};
        return hash_doubles(v);
    }
};

/// Contraction-condition bookkeeping for one Picard run:
///   C_A = C n T,  C_B = C sum_i T^{1-1/alpha_i}/(1-1/alpha_i),
///   delta_0 = C sum_j ||u_{0,j}||_{H^s};
/// the contraction is guaranteed when 3 C_A < 1, 9 C_B delta_0 < 1 and
/// C_A + 6 C_B delta_0 < 1, and the successive-difference ratios should then
/// stay below C_A + 6 C_B delta_0.
struct PicardReport {
    int iterations = 0;
    bool converged = false;
    std::vector<double> deltas;  // trajectory-norm of successive differences
    std::vector<double> ratios;  // deltas[k] / deltas[k-1]
    double c_a = 0.0;
    double c_b = 0.0;
    double delta0 = 0.0;
    bool conditions_pass = false;
    double contraction_bound = 0.0;  // C_A + 6 C_B delta_0
};

namespace detail {

inline std::uint64_t spec_hash(const SystemSpec& spec) {
    std::vector<double> v = {static_cast<double>(spec.grid.dimension()),
                             static_cast<double>(spec.grid.modes_per_axis()), spec.grid.length(),
                             static_cast<double>(spec.n), spec.sobolev_s};
    v.insert(v.end(), spec.alpha.begin(), spec.alpha.end());
    std::uint64_t h = hash_doubles(v);
    for (const auto& [key, sym] : spec.q_table)
        h = fnv1a(key.data(), sizeof(key), h);
    for (const auto& [key, sym] : spec.l_table)
        h = fnv1a(key.data(), sizeof(key), h);
    return h;
}

// per-component |xi|^alpha on the lattice
inline std::vector<std::vector<double>> lattice_lambdas(const SystemSpec& spec) {
    std::vector<std::vector<double>> lam(spec.n, std::vector<double>(spec.grid.size()));
    for (int i = 0; i < spec.n; ++i)
        for (std::size_t f = 0; f < spec.grid.size(); ++f) {
            const double r = xi_norm(spec.grid.xi(f));
            lam[i][f] = r > 0.0 ? std::pow(r, spec.alpha[i]) : 0.0;
        }
    return lam;
}

}  // namespace detail

/// Semigroup evolution of an n-component field with per-component exponents.
inline SpectralField semigroup_evolve(const SystemSpec& spec, const SpectralField& field,
                                      double t) {
    SpectralField out = field;
    for (int i = 0; i < spec.n; ++i) {
        auto c = out.comp(i);
        for (std::size_t f = 0; f < spec.grid.size(); ++f)
            c[f] *= heat_multiplier(spec.alpha[i], t, xi_norm(spec.grid.xi(f)));
    }
    return out;
}

namespace detail {

// Exact per-substep kernel factor of the product-integration rule:
//   W = int_{tau_m}^{tau_{m+1}} exp(-(t - tau) lambda) dtau
//     = (exp(-(t - tau_{m+1}) lambda) - exp(-(t - tau_m) lambda)) / lambda,
// with the lambda -> 0 limit tau_{m+1} - tau_m.
inline double kernel_weight(double lambda, double t, double tau_lo, double tau_hi) {
    if (lambda == 0.0) return tau_hi - tau_lo;
    return (std::exp(-(t - tau_hi) * lambda) - std::exp(-(t - tau_lo) * lambda)) / lambda;
}

}  // namespace detail

/// Linear Duhamel term of the mild formulation, evaluated at the trajectory
/// node with index `g` by product integration (integrand frozen at the left
/// endpoint of each substep, kernel factor integrated in closed form):
///   A_i = sum_j int_0^{t_g} h_{alpha_i}(t_g - tau) * L_{i,j}(u_j)(tau) dtau.
inline SpectralField duhamel_linear(const SystemSpec& spec, const std::vector<SpectralField>& states,
                                    const std::vector<double>& times, std::size_t g) {
    if (g >= times.size() || states.size() != times.size())
        throw std::invalid_argument("duhamel_linear: quadrature grid mismatch");
    detail::EvaluatedSymbols ev(spec);
    const auto lam = detail::lattice_lambdas(spec);
    SpectralField out = SpectralField::zeros(spec.grid, spec.n);
    const double t = times[g];
    for (std::size_t l = 0; l < ev.l_keys.size(); ++l) {
        const int i = ev.l_keys[l][0], j = ev.l_keys[l][1];
        auto dst = out.comp(i);
        for (std::size_t m = 0; m < g; ++m) {
            auto src = states[m].comp(j);
            for (std::size_t f = 0; f < spec.grid.size(); ++f)
                dst[f] += detail::kernel_weight(lam[i][f], t, times[m], times[m + 1]) *
                          ev.l_values[l][f] * src[f];
        }
    }
    return out;
}

/// Bilinear Duhamel term, same quadrature:
///   B_i = sum_{j,k} int_0^{t_g} h_{alpha_i}(t_g - tau) * Q_{i,j,k}(u_j v_k)(tau) dtau.
inline SpectralField duhamel_bilinear(const SystemSpec& spec,
                                      const std::vector<SpectralField>& states_u,
                                      const std::vector<SpectralField>& states_v,
                                      const std::vector<double>& times, std::size_t g) {
    if (g >= times.size() || states_u.size() != times.size() || states_v.size() != times.size())
        throw std::invalid_argument("duhamel_bilinear: quadrature grid mismatch");
    detail::EvaluatedSymbols ev(spec);
    const auto lam = detail::lattice_lambdas(spec);
    SpectralField out = SpectralField::zeros(spec.grid, spec.n);
    const double t = times[g];
    for (std::size_t m = 0; m < g; ++m) {
        const auto products = detail::pair_products(ev, states_u[m], states_v[m]);
        for (std::size_t q = 0; q < ev.q_keys.size(); ++q) {
            const auto& key = ev.q_keys[q];
            auto dst = out.comp(key[0]);
            auto src = products.at({key[1], key[2]}).comp(0);
            for (std::size_t f = 0; f < spec.grid.size(); ++f)
                dst[f] += detail::kernel_weight(lam[key[0]][f], t, times[m], times[m + 1]) *
                          ev.q_values[q][f] * src[f];
        }
    }
    return out;
}

namespace detail {

struct PicardWorkspace {
    EvaluatedSymbols ev;
    std::vector<std::vector<double>> lam;  // [component][lattice]
    // decay[i][r*size+f] = exp(-r dt lambda_i(f)), r = 0..M
    std::vector<std::vector<double>> decay;
    int substeps;
    double dt;

    PicardWorkspace(const SystemSpec& spec, double T, int M)
        : ev(spec), lam(lattice_lambdas(spec)), substeps(M), dt(T / M) {
        const std::size_t sz = spec.grid.size();
        decay.assign(spec.n, std::vector<double>(static_cast<std::size_t>(M + 1) * sz));
        for (int i = 0; i < spec.n; ++i)
            for (int r = 0; r <= M; ++r)
                for (std::size_t f = 0; f < sz; ++f)
                    decay[i][static_cast<std::size_t>(r) * sz + f] =
                        std::exp(-static_cast<double>(r) * dt * lam[i][f]);
    }

    // W for target node g, substep [t_m, t_{m+1}]; depends only on r = g - m
    double weight(int i, std::size_t f, int r, std::size_t sz) const {
        const double l = lam[i][f];
        if (l == 0.0) return dt;
        return (decay[i][static_cast<std::size_t>(r - 1) * sz + f] -
                decay[i][static_cast<std::size_t>(r) * sz + f]) / l;
    }
};

}  // namespace detail

/// Global Picard construction of the mild solution on [0, T]: starting from
/// the semigroup evolution of the data, iterate the Duhamel map on the full
/// time grid until the trajectory-space norm sup_t sum_i ||.||_{H^s} of
/// successive differences drops below the tolerance. The forcing enters
/// with the Duhamel sign, so the fixed point solves
/// d/dt u_i = -(-Lap)^{alpha_i/2} u_i - N_i(u).
inline SolutionTrajectory picard_solve(const SystemSpec& spec, double T, const SolverConfig& config,
                                       PicardReport* report_out = nullptr) {
    config.validate();
    if (!(T > 0.0)) throw ConfigError("solve horizon must be positive");
    const NormKind hs = NormKind::hs(spec.sobolev_s);

    std::vector<double> data_norms(spec.n);
    for (int i = 0; i < spec.n; ++i) data_norms[i] = norm(spec.initial_data, hs, i);
    if (config.enforce_existence) {
        const double t_guar = existence_time_alpha(spec.alpha, data_norms, config.constant_C);
        if (T > t_guar * (1.0 + 1e-12))
            throw ConfigError("requested horizon " + std::to_string(T) +
                              " exceeds the guaranteed Picard window " + std::to_string(t_guar));
    }

    const int M = config.substeps;
    SolutionTrajectory traj;
    traj.alpha = spec.alpha;
    traj.spec_hash = detail::spec_hash(spec);
    traj.config_hash = config.hash();
    traj.times.resize(M + 1);
    for (int g = 0; g <= M; ++g) traj.times[g] = T * g / M;

    // e0: semigroup evolution of the data at every node
    std::vector<SpectralField> e0;
    e0.reserve(M + 1);
    for (int g = 0; g <= M; ++g) e0.push_back(semigroup_evolve(spec, spec.initial_data, traj.times[g]));

    PicardReport report;
    report.c_a = config.constant_C * spec.n * T;
    report.delta0 = 0.0;
    for (double m : data_norms) report.delta0 += config.constant_C * m;
    report.c_b = 0.0;
    for (double a : spec.alpha)
        report.c_b += config.constant_C * std::pow(T, 1.0 - 1.0 / a) / (1.0 - 1.0 / a);
    report.contraction_bound = report.c_a + 6.0 * report.c_b * report.delta0;
    report.conditions_pass = (3.0 * report.c_a < 1.0) && (9.0 * report.c_b * report.delta0 < 1.0) &&
                             (report.contraction_bound < 1.0);

    detail::PicardWorkspace ws(spec, T, M);
    const std::size_t sz = spec.grid.size();
    std::vector<SpectralField> cur = e0;

    for (int it = 1; it <= config.picard_max_iters; ++it) {
        // forcing at every node of the current iterate
        std::vector<SpectralField> forcing;
        forcing.reserve(M);
        for (int m = 0; m < M; ++m) {
            const auto products = detail::pair_products(ws.ev, cur[m], cur[m]);
            forcing.push_back(detail::assemble_forcing(spec, ws.ev, products, cur[m]));
        }

        double delta = 0.0;
        std::vector<SpectralField> next;
        next.reserve(M + 1);
        next.push_back(e0[0]);
        for (int g = 1; g <= M; ++g) {
            SpectralField acc = e0[g];
            for (int i = 0; i < spec.n; ++i) {
                auto dst = acc.comp(i);
                for (int m = 0; m < g; ++m) {
                    auto src = forcing[m].comp(i);
                    const int r = g - m;
                    for (std::size_t f = 0; f < sz; ++f)
                        dst[f] -= ws.weight(i, f, r, sz) * src[f];
                }
            }
            if (!acc.all_finite())
                throw BlowUpError("picard iterate blew up at node " + std::to_string(g), g,
                                  traj.times[g]);
            delta = std::max(delta, norm_sum(acc - cur[g], hs));
            next.push_back(std::move(acc));
        }
        cur = std::move(next);
        report.iterations = it;
        if (!report.deltas.empty()) report.ratios.push_back(delta / report.deltas.back());
        report.deltas.push_back(delta);
        if (delta < config.picard_tol) {
            report.converged = true;
            break;
        }
    }

    if (!report.converged) {
        const double last_ratio = report.ratios.empty() ? 0.0 : report.ratios.back();
        if (report_out) *report_out = report;
        throw NonConvergenceError("picard iteration did not reach tolerance " +
                                      std::to_string(config.picard_tol) + " within " +
                                      std::to_string(config.picard_max_iters) +
                                      " iterations (last ratio " + std::to_string(last_ratio) + ")",
                                  last_ratio, report.iterations);
    }
    if (report_out) *report_out = report;
    traj.states = std::move(cur);
    traj.validate();
    return traj;
}

/// First-order exponential marching, one Duhamel substep at a time:
///   uhat(t+dt) = exp(-dt lambda) uhat(t) - (1 - exp(-dt lambda))/lambda * Nhat(u(t)),
/// with the lambda -> 0 limit dt. Exact for linear systems; consistent with
/// the product-integration quadrature of the global construction, so the two
/// modes agree up to the Picard tolerance on a shared grid.
inline SolutionTrajectory etd_march(const SystemSpec& spec, double T, const SolverConfig& config) {
    config.validate();
    if (!(T > 0.0)) throw ConfigError("solve horizon must be positive");
    const int M = config.substeps;
    const double dt = T / M;

    if (config.enforce_existence) {
        const NormKind hs = NormKind::hs(spec.sobolev_s);
        std::vector<double> data_norms(spec.n);
        for (int i = 0; i < spec.n; ++i) data_norms[i] = norm(spec.initial_data, hs, i);
        const double t_guar = existence_time_alpha(spec.alpha, data_norms, config.constant_C);
        if (T > t_guar * (1.0 + 1e-12))
            throw ConfigError("requested horizon " + std::to_string(T) +
                              " exceeds the guaranteed Picard window " + std::to_string(t_guar));
    }

    detail::EvaluatedSymbols ev(spec);
    const auto lam = detail::lattice_lambdas(spec);
    const std::size_t sz = spec.grid.size();
    std::vector<std::vector<double>> decay(spec.n, std::vector<double>(sz));
    std::vector<std::vector<double>> phi(spec.n, std::vector<double>(sz));
    for (int i = 0; i < spec.n; ++i)
        for (std::size_t f = 0; f < sz; ++f) {
            decay[i][f] = std::exp(-dt * lam[i][f]);
            phi[i][f] = lam[i][f] == 0.0 ? dt : (1.0 - decay[i][f]) / lam[i][f];
        }

    SolutionTrajectory traj;
    traj.alpha = spec.alpha;
    traj.spec_hash = detail::spec_hash(spec);
    traj.config_hash = config.hash();
    traj.times.resize(M + 1);
    for (int g = 0; g <= M; ++g) traj.times[g] = T * g / M;

    SpectralField u = spec.initial_data;
    traj.states.push_back(u);
    for (int g = 0; g < M; ++g) {
        const auto products = detail::pair_products(ev, u, u);
        const SpectralField forcing = detail::assemble_forcing(spec, ev, products, u);
        for (int i = 0; i < spec.n; ++i) {
            auto dst = u.comp(i);
            auto fsrc = forcing.comp(i);
            for (std::size_t f = 0; f < sz; ++f)
                dst[f] = decay[i][f] * dst[f] - phi[i][f] * fsrc[f];
        }
        if (!u.all_finite())
            throw BlowUpError("marching blew up at step " + std::to_string(g + 1), g + 1,
                              traj.times[g + 1]);
        traj.states.push_back(u);
    }
    traj.validate();
    return traj;
}

inline SolutionTrajectory solve(const SystemSpec& spec, double T, const SolverConfig& config,
                                PicardReport* report_out = nullptr) {
    return config.mode == SolverMode::GlobalPicard ? picard_solve(spec, T, config, report_out)
                                                   : etd_march(spec, T, config);
}

/// max over trajectory nodes and component pairs (j,k) of ||u_j u_k||_{H^s};
/// the uniform product bound reported alongside rate studies.
inline double uniform_product_bound(const SolutionTrajectory& traj, double s) {
    const NormKind hs = NormKind::hs(s);
    double worst = 0.0;
    for (const auto& state : traj.states) {
        for (int j = 0; j < state.components; ++j) {
            const SpectralField uj = state.component_copy(j);
            for (int k = j; k < state.components; ++k) {
                const SpectralField prod = dealiased_product(uj, state.component_copy(k));
                worst = std::max(worst, norm(prod, hs, 0));
            }
        }
    }
    return worst;
}

}  // namespace fraclab
