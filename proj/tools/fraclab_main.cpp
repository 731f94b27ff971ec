// Batch front-end: deterministic experiment commands over config files.
//
// Exit codes: 0 success, 2 config error, 3 solver non-convergence,
//             4 blow-up, 5 every rate-fit point below the noise floor.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include "fraclab/reports.hpp"
#include "fraclab/study_config.hpp"

namespace fs = std::filesystem;
using namespace fraclab;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = kDefaultSeed;
    int workers = 0;  // 0 -> hardware concurrency
    bool plots = false;
    bool timings = false;
};

void warn_unused(const ParsedConfig& cfg) {
    for (const auto& key : cfg.unused_keys())
        std::cerr << "warning: config key '" << key << "' was not used by this command\n";
}

int effective_workers(const CliOptions& opt) {
    if (opt.workers > 0) return opt.workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

fs::path prepare_out(const CliOptions& opt) {
    fs::path dir(opt.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ConfigError("output directory '" + opt.out_dir + "' is not writable");
    return dir;
}

int run_kernel_verify(const CliOptions& opt) {
    const auto cfg = ParsedConfig::from_file(opt.config_path);
    const double delta = load_delta(cfg, "kernel.delta");
    const auto alphas = load_alpha_window_grid(cfg, "kernel.alpha", delta);
    const double horizon = cfg.get_double("kernel.horizon", 1.0);
    const int time_points = cfg.get_int("kernel.time_points", 48);
    warn_unused(cfg);

    const auto rep = kernel_rate_check(alphas, delta, horizon, time_points);
    const auto dir = prepare_out(opt);
    write_text(dir / "kernel_report.csv", kernel_report_csv(rep));
    write_json(dir / "kernel_report.json", kernel_report_json(rep));
    if (opt.plots) {
        for (double a : alphas) {
            const auto prof = weighted_gap_profile(a, delta, horizon, time_points);
            char name[64];
            std::snprintf(name, sizeof(name), "kernel_profile_alpha_%.6g.gp", a);
            write_text(dir / name, kernel_profile_script(a, prof));
        }
    }
    std::cout << "kernel-verify: slope_eta=" << fmt(rep.fit_eta.slope)
              << " slope_kappa=" << fmt(rep.fit_kappa.slope)
              << " spread_eta=" << fmt(rep.ratio_spread_eta)
              << " spread_kappa=" << fmt(rep.ratio_spread_kappa)
              << " pass=" << (rep.pass ? "yes" : "no") << "\n";
    return 0;
}

int run_existence_time(const CliOptions& opt) {
    const auto cfg = ParsedConfig::from_file(opt.config_path);
    const FourierGrid grid = load_grid(cfg);
    const Preset preset = parse_preset(cfg.get_string("system.preset", std::string("burgers")));
    const double s = cfg.get_double("system.s", grid.dimension() / 2.0 + 1.0);
    const double delta = load_delta(cfg, "times.delta");
    const auto alphas = load_alpha_window_grid(cfg, "times.alpha", delta);
    const double beta_min = cfg.get_double("times.beta_min", 1.0);
    const double C = cfg.get_double("solver.constant", 1.0);
    const int n = preset_components(preset, grid.dimension());
    SpectralField data = load_data(cfg, grid, n, s, opt.seed);
    for (int block : preset_leray_blocks(preset)) leray_project_block(data, block);
    warn_unused(cfg);

    const NormKind hs = NormKind::hs(s);
    std::vector<double> norms(n);
    for (int i = 0; i < n; ++i) norms[i] = norm(data, hs, i);

    ExistenceTable tab;
    tab.alphas = alphas;
    tab.t2 = existence_time_classical(norms, C);
    tab.t0 = existence_time_floor(delta, beta_min, norms, C);
    std::vector<double> z, gap;
    for (double a : alphas) {
        std::vector<double> avec(n, a);
        const double ta = existence_time_alpha(avec, norms, C);
        tab.t_alpha.push_back(ta);
        if (ta < tab.t0) tab.floor_holds = false;
        const double g = std::abs(ta - tab.t2);
        if (g > 0.0) {
            z.push_back(std::abs(2.0 - a));
            gap.push_back(g);
        }
    }
    if (z.size() >= 2) tab.gap_fit = fit_loglog(z, gap);

    const auto dir = prepare_out(opt);
    write_text(dir / "existence_times.csv", existence_csv(tab));
    write_json(dir / "existence_times.json", existence_json(tab));
    std::cout << "existence-time: T2=" << fmt(tab.t2) << " T0=" << fmt(tab.t0)
              << " gap_slope=" << fmt(tab.gap_fit.slope)
              << " floor_holds=" << (tab.floor_holds ? "yes" : "no")
              << " (times relative to C=" << fmt(C) << ")\n";
    return 0;
}

int run_solve(const CliOptions& opt) {
    const auto cfg = ParsedConfig::from_file(opt.config_path);
    const FourierGrid grid = load_grid(cfg);
    const SystemSpec spec = load_system(cfg, grid, opt.seed);
    SolverConfig sc = load_solver(cfg);
    double horizon = cfg.get_double("solver.horizon", 0.0);
    const bool dump = cfg.get_bool("solver.dump_coefficients", false);
    const int dump_stride = cfg.get_int("solver.dump_stride", sc.substeps);
    warn_unused(cfg);

    const NormKind hs = NormKind::hs(spec.sobolev_s);
    std::vector<double> norms(spec.n);
    for (int i = 0; i < spec.n; ++i) norms[i] = norm(spec.initial_data, hs, i);
    const double t_alpha = existence_time_alpha(spec.alpha, norms, sc.constant_C);
    if (horizon <= 0.0) horizon = t_alpha;

    PicardReport pr;
    const SolutionTrajectory traj = solve(spec, horizon, sc, &pr);

    const auto dir = prepare_out(opt);
    write_text(dir / "trajectory.csv", trajectory_csv(traj, spec.sobolev_s));
    Json j;
    j["horizon"] = horizon;
    j["t_alpha_guaranteed"] = t_alpha;
    j["constant_C"] = sc.constant_C;
    j["mode"] = sc.mode == SolverMode::GlobalPicard ? "picard" : "etd";
    j["substeps"] = sc.substeps;
    j["spec_hash"] = traj.spec_hash;
    j["uniform_product_bound"] = uniform_product_bound(traj, spec.sobolev_s);
    if (sc.mode == SolverMode::GlobalPicard) {
        j["picard"] = {{"iterations", pr.iterations},
                       {"converged", pr.converged},
                       {"deltas", pr.deltas},
                       {"ratios", pr.ratios},
                       {"c_a", pr.c_a},
                       {"c_b", pr.c_b},
                       {"delta0", pr.delta0},
                       {"conditions_pass", pr.conditions_pass},
                       {"contraction_bound", pr.contraction_bound}};
    }
    write_json(dir / "solve_report.json", j);
    if (dump) {
        for (std::size_t g = 0; g < traj.times.size(); g += std::max(dump_stride, 1)) {
            char name[64];
            std::snprintf(name, sizeof(name), "coeff_%06zu.bin", g);
            write_text(dir / name, coefficient_dump(traj.states[g], traj.times[g]));
        }
    }
    std::cout << "solve: horizon=" << fmt(horizon) << " nodes=" << traj.times.size()
              << " final_hs=" << fmt(norm_sum(traj.states.back(), hs)) << "\n";
    return 0;
}

int run_rate_study_cmd(const CliOptions& opt) {
    const auto cfg = ParsedConfig::from_file(opt.config_path);
    RateStudyConfig rc = load_rate_study(cfg, opt.seed);
    warn_unused(cfg);

    const auto rep = run_rate_study(rc, effective_workers(opt));
    const auto dir = prepare_out(opt);
    write_text(dir / "rate_report.csv", rate_report_csv(rep, opt.timings));
    write_json(dir / "rate_report.json", rate_report_json(rep, opt.timings));
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    if (opt.plots) {
        auto gaps = [&](auto member) {
            std::vector<double> v;
            for (const auto& r : rep.rows) v.push_back(r.*member);
            return v;
        };
        write_text(dir / "rate_weighted_hs.gp",
                   rate_plot_script(rep, "weighted Hs", gaps(&RateStudyRow::gap_weighted),
                                    rep.fit_weighted.fit));
        write_text(dir / "rate_hs.gp",
                   rate_plot_script(rep, "Hs", gaps(&RateStudyRow::gap_hs), rep.fit_hs.fit));
        write_text(dir / "rate_l2.gp",
                   rate_plot_script(rep, "L2", gaps(&RateStudyRow::gap_l2), rep.fit_l2.fit));
        write_text(dir / "rate_linf.gp",
                   rate_plot_script(rep, "Linf", gaps(&RateStudyRow::gap_linf), rep.fit_linf.fit));
        write_text(dir / "rate_wsp.gp",
                   rate_plot_script(rep, "W^{sigma,2}", gaps(&RateStudyRow::gap_wsp), rep.fit_wsp.fit));
    }
    std::cout << "rate-study: slope=" << fmt(rep.fit_weighted.fit.slope) << " +/- "
              << fmt(rep.fit_weighted.fit.ci95_halfwidth)
              << " predicted=" << fmt(rep.predicted_rate)
              << " pass=" << (rep.pass ? "yes" : "no") << "\n";
    return 0;
}

int run_presets(const CliOptions& opt) {
    std::string out;
    out += "preset         dim  components  q-entries  l-entries  homogeneity\n";
    const Preset all[] = {Preset::NavierStokes, Preset::MHD, Preset::Boussinesq,
                          Preset::KellerSegel, Preset::Burgers1D};
    for (Preset p : all) {
        const int d = p == Preset::Burgers1D ? 1 : (p == Preset::KellerSegel ? 2 : 3);
        const int n = preset_components(p, d);
        const FourierGrid grid(d, 8, 2.0 * std::numbers::pi);
        SpectralField data = SpectralField::zeros(grid, n);
        std::vector<double> alphas(n, 2.0);
        const SystemSpec spec = build_preset(p, grid, alphas, data, d / 2.0 + 1.0);
        bool homog = true;
        for (const auto& [key, sym] : spec.q_table)
            homog = homog && check_homogeneity(sym, 1, d, 32, 1e-9).pass;
        for (const auto& [key, sym] : spec.l_table)
            homog = homog && check_homogeneity(sym, 0, d, 32, 1e-9).pass;
        char line[128];
        std::snprintf(line, sizeof(line), "%-14s %-4d %-11d %-10zu %-10zu %s\n",
                      preset_name(p).c_str(), d, n, spec.q_table.size(), spec.l_table.size(),
                      homog ? "pass" : "FAIL");
        out += line;
    }
    const auto dir = prepare_out(opt);
    write_text(dir / "presets.txt", out);
    std::cout << out;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclab: pseudo-spectral laboratory for coupled quadratic parabolic systems "
                 "with fractional diffusion"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", opt.config_path, "config file (key = value schema)")
                ->required()
                ->envname("FRACLAB_CONFIG");
        sub->add_option("--out", opt.out_dir, "output directory")->envname("FRACLAB_OUT");
        sub->add_option("--seed", opt.seed, "RNG seed (deterministic default)")
            ->envname("FRACLAB_SEED");
        sub->add_option("--workers", opt.workers, "worker threads for per-alpha runs; "
                                                  "1 guarantees the determinism contract")
            ->envname("FRACLAB_WORKERS");
        sub->add_flag("--plots", opt.plots, "emit gnuplot scripts")->envname("FRACLAB_PLOTS");
        sub->add_flag("--timings", opt.timings,
                      "include wall-clock timings in reports (non-deterministic)")
            ->envname("FRACLAB_TIMINGS");
    };

    auto* kernel = app.add_subcommand("kernel-verify", "verify the weighted kernel-gap rates");
    add_common(kernel, true);
    auto* times = app.add_subcommand("existence-time", "tabulate T_alpha, T_2 and the floor T_0");
    add_common(times, true);
    auto* solve_cmd = app.add_subcommand("solve", "run one mild-solution construction");
    add_common(solve_cmd, true);
    auto* study = app.add_subcommand("rate-study", "full solution convergence-rate study");
    add_common(study, true);
    auto* presets_cmd = app.add_subcommand("presets", "list model presets and validate symbols");
    add_common(presets_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernel->parsed()) return run_kernel_verify(opt);
        if (times->parsed()) return run_existence_time(opt);
        if (solve_cmd->parsed()) return run_solve(opt);
        if (study->parsed()) return run_rate_study_cmd(opt);
        if (presets_cmd->parsed()) return run_presets(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergenceError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return 4;
    } catch (const BelowNoiseFloorError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
