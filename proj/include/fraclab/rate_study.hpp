#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <thread>

#include "fraclab/data_builders.hpp"
#include "fraclab/presets.hpp"
#include "fraclab/rates.hpp"
#include "fraclab/solver.hpp"

namespace fraclab {

enum class HorizonPolicy { UpToT2, Fixed };

struct RateStudyConfig {
    Preset preset = Preset::Burgers1D;
    FourierGrid grid{1, 256, 2.0 * std::numbers::pi};
    std::vector<double> alpha_grid;      // all inside (2-delta, 2+delta), never 2
    double delta = 0.1;
    std::vector<double> beta;            // per component; a single value broadcasts
    double c = 1.0;                      // data-family constant
    double sobolev_s = 1.5;
    HorizonPolicy horizon_policy = HorizonPolicy::UpToT2;
    double fixed_horizon = 0.0;          // used by HorizonPolicy::Fixed
    double epsilon_fraction = 0.1;       // window start as a fraction of the horizon
    std::uint64_t seed = kDefaultSeed;
    int perturbation_band = 4;
    double slope_tol = 0.2;              // pass when |slope - min(beta_min,1)| <= tol
    double wsp_sigma = 1.0;              // order of the homogeneous-norm table
    SolverConfig solver;
    SpectralField base_data{FourierGrid(1, 4, 1.0), 1, true};  // u_{0,2}; set by caller
    bool has_base_data = false;

    double beta_min() const {
        double b = beta.empty() ? 1.0 : beta.front();
        for (double v : beta) b = std::min(b, v);
        return b;
    }

    void validate() const {
        DeltaParams dp(delta);
        if (alpha_grid.empty()) throw ConfigError("rate study needs a nonempty alpha grid");
        for (double a : alpha_grid) {
            if (a == 2.0)
                throw ConfigError("alpha grid must exclude the classical value 2 "
                                  "(the gap vanishes and the log-log fit degenerates)");
            if (!dp.admits(a))
                throw ConfigError("alpha = " + std::to_string(a) +
                                  " lies outside the window |2 - alpha| <= delta = " +
                                  std::to_string(delta));
        }
        if (beta.empty()) throw ConfigError("rate study needs at least one beta exponent");
        for (double b : beta)
            if (!(b > 0.0)) throw ConfigError("data-family rates beta must be positive");
        if (!(c > 0.0)) throw ConfigError("data-family constant c must be positive");
        if (!(epsilon_fraction > 0.0 && epsilon_fraction < 1.0))
            throw ConfigError("epsilon must satisfy 0 < eps < horizon (given as a fraction)");
        if (horizon_policy == HorizonPolicy::Fixed && !(fixed_horizon > 0.0))
            throw ConfigError("fixed horizon must be positive");
        if (!has_base_data) throw ConfigError("rate study needs base initial data");
        solver.validate();
    }
};

struct RateStudyRow {
    double alpha = 0.0;
    double z = 0.0;            // |2 - alpha|
    double horizon = 0.0;
    bool horizon_truncated = false;  // T_alpha exceeded T_2, compared on T_2
    double gap_weighted = 0.0;       // sup_t t^eta sum_i ||.||_{H^s}
    double gap_hs = 0.0;             // window distances over [eps, T]
    double gap_l2 = 0.0;
    double gap_linf = 0.0;
    double gap_wsp = 0.0;
    double product_bound = 0.0;      // uniform product bound of the fractional run
    double runtime_s = 0.0;
};

struct RateStudyReport {
    std::vector<RateStudyRow> rows;
    double eta = 0.0;
    double delta = 0.0;
    double predicted_rate = 0.0;  // min(beta_min, 1)
    double t2 = 0.0;
    double epsilon = 0.0;
    double noise_floor = 0.0;     // 10 x solver self-convergence error
    double self_convergence_error = 0.0;
    RateFit fit_weighted;
    RateFit fit_hs;
    RateFit fit_l2;
    RateFit fit_linf;
    RateFit fit_wsp;
    bool pass = false;
    std::vector<std::string> warnings;
};

namespace detail {

inline SystemSpec study_system(const RateStudyConfig& cfg, double alpha_value,
                               const SpectralField& data) {
    std::vector<double> alphas(preset_components(cfg.preset, cfg.grid.dimension()), alpha_value);
    return build_preset(cfg.preset, cfg.grid, std::move(alphas), data, cfg.sobolev_s);
}

}  // namespace detail

/// Full convergence experiment. For every alpha on the grid: build the
/// prescribed-rate data family, solve the fractional and classical systems
/// on a shared time grid, measure the weighted and window distances, then
/// fit log-log slopes against |2 - alpha|. Gaps below 10x the solver
/// self-convergence error are excluded from fits with a warning.
inline RateStudyReport run_rate_study(const RateStudyConfig& cfg, int workers = 1) {
    cfg.validate();
    const DeltaParams dp(cfg.delta);
    const NormKind hs = NormKind::hs(cfg.sobolev_s);
    const int n = preset_components(cfg.preset, cfg.grid.dimension());

    // fixed band-limited perturbation; build_data_family projects + normalizes
    const SpectralField w = make_random_band_data(cfg.grid, n, cfg.perturbation_band,
                                                  Rng::derive(cfg.seed, 0), 1.0, cfg.sobolev_s);
    const std::vector<int> blocks = preset_leray_blocks(cfg.preset);

    // classical run (alpha = 2): build_preset projects velocity blocks
    SystemSpec classical = detail::study_system(cfg, 2.0, cfg.base_data);
    std::vector<double> classical_norms(n);
    for (int i = 0; i < n; ++i) classical_norms[i] = norm(classical.initial_data, hs, i);
    const double t2 = existence_time_classical(classical_norms, cfg.solver.constant_C);

    RateStudyReport rep;
    rep.eta = dp.eta;
    rep.delta = cfg.delta;
    rep.predicted_rate = std::min(cfg.beta_min(), 1.0);
    rep.t2 = t2;

    // noise floor: classical self-convergence at the study resolution
    {
        const double horizon = cfg.horizon_policy == HorizonPolicy::Fixed ? cfg.fixed_horizon : t2;
        SolverConfig fine = cfg.solver;
        fine.substeps *= 2;
        const auto coarse = solve(classical, horizon, cfg.solver);
        const auto refined = solve(classical, horizon, fine);
        double err = 0.0;
        for (const auto& [ja, jb] : common_nodes(coarse, refined))
            err = std::max(err, norm_sum(coarse.states[ja] - refined.states[jb], hs));
        rep.self_convergence_error = err;
        rep.noise_floor = 10.0 * err;
    }

    rep.rows.resize(cfg.alpha_grid.size());
    std::atomic<std::size_t> cursor{0};
    std::vector<std::string> row_warnings(cfg.alpha_grid.size());

    auto run_one = [&](std::size_t idx) {
        const auto start = std::chrono::steady_clock::now();
        const double alpha_value = cfg.alpha_grid[idx];
        RateStudyRow row;
        row.alpha = alpha_value;
        row.z = std::abs(2.0 - alpha_value);

        const double beta_i = cfg.beta.size() == 1 ? cfg.beta.front() : cfg.beta_min();
        const SpectralField data_alpha =
            build_data_family(classical.initial_data, alpha_value, beta_i, cfg.c, w,
                              cfg.sobolev_s, blocks);
        SystemSpec fractional = detail::study_system(cfg, alpha_value, data_alpha);

        double horizon;
        if (cfg.horizon_policy == HorizonPolicy::Fixed) {
            horizon = cfg.fixed_horizon;
        } else {
            std::vector<double> frac_norms(n);
            for (int i = 0; i < n; ++i) frac_norms[i] = norm(fractional.initial_data, hs, i);
            const double t_alpha =
                existence_time_alpha(fractional.alpha, frac_norms, cfg.solver.constant_C);
            horizon = std::min(t_alpha, t2);
            if (t_alpha > t2) {
                row.horizon_truncated = true;
                row_warnings[idx] = "alpha = " + std::to_string(alpha_value) +
                                    ": guaranteed window exceeds the classical one; horizon "
                                    "truncated to T_2";
            }
        }
        row.horizon = horizon;

        const auto traj_frac = solve(fractional, horizon, cfg.solver);
        const auto traj_classical = solve(classical, horizon, cfg.solver);

        const double eps = cfg.epsilon_fraction * horizon;
        row.gap_weighted = weighted_sup_distance(traj_frac, traj_classical, dp.eta, cfg.sobolev_s);
        row.gap_hs = epsilon_window_distance(traj_frac, traj_classical, eps, hs, cfg.sobolev_s);
        row.gap_l2 =
            epsilon_window_distance(traj_frac, traj_classical, eps, NormKind::lp(2.0), cfg.sobolev_s);
        row.gap_linf = epsilon_window_distance(traj_frac, traj_classical, eps,
                                               NormKind::lp(std::numeric_limits<double>::infinity()),
                                               cfg.sobolev_s);
        row.gap_wsp = epsilon_window_distance(traj_frac, traj_classical, eps,
                                              NormKind::hom_wsp(cfg.wsp_sigma, 2.0), cfg.sobolev_s);
        row.product_bound = uniform_product_bound(traj_frac, cfg.sobolev_s);
        row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rep.rows[idx] = row;
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < cfg.alpha_grid.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = cursor.fetch_add(1); i < cfg.alpha_grid.size();
                     i = cursor.fetch_add(1))
                    run_one(i);
            });
        for (auto& th : pool) th.join();
    }

    for (auto& wmsg : row_warnings)
        if (!wmsg.empty()) rep.warnings.push_back(wmsg);

    rep.epsilon = cfg.epsilon_fraction *
                  (cfg.horizon_policy == HorizonPolicy::Fixed ? cfg.fixed_horizon : t2);

    auto column = [&](auto member) {
        std::vector<double> v;
        for (const auto& r : rep.rows) v.push_back(r.*member);
        return v;
    };
    const std::vector<double> alphas = column(&RateStudyRow::alpha);
    rep.fit_weighted = fit_rate(alphas, column(&RateStudyRow::gap_weighted), rep.noise_floor);
    rep.fit_hs = fit_rate(alphas, column(&RateStudyRow::gap_hs), rep.noise_floor);
    rep.fit_l2 = fit_rate(alphas, column(&RateStudyRow::gap_l2), rep.noise_floor);
    rep.fit_linf = fit_rate(alphas, column(&RateStudyRow::gap_linf), rep.noise_floor);
    rep.fit_wsp = fit_rate(alphas, column(&RateStudyRow::gap_wsp), rep.noise_floor);
    for (const auto* f : {&rep.fit_weighted, &rep.fit_hs, &rep.fit_l2, &rep.fit_linf, &rep.fit_wsp})
        for (const auto& msg : f->warnings) rep.warnings.push_back(msg);

    rep.pass = std::abs(rep.fit_weighted.fit.slope - rep.predicted_rate) <= cfg.slope_tol;
    return rep;
}

}  // namespace fraclab
