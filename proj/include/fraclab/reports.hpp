#pragma once

#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "fraclab/kernels.hpp"
#include "fraclab/rate_study.hpp"
#include "fraclab/solver.hpp"

namespace fraclab {

using Json = nlohmann::ordered_json;

// shortest round-trip formatting; identical across runs for identical values
inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + path.string() + "'");
    out << text;
}

inline void write_json(const std::filesystem::path& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// kernel-verify

inline std::string kernel_report_csv(const KernelRateReport& rep) {
    std::string out = "alpha,z,gap_eta_weighted,gap_kappa_weighted,ratio_eta,ratio_kappa\n";
    for (std::size_t i = 0; i < rep.alphas.size(); ++i) {
        out += fmt(rep.alphas[i]) + "," + fmt(std::abs(2.0 - rep.alphas[i])) + "," +
               fmt(rep.gaps_eta[i]) + "," + fmt(rep.gaps_kappa[i]) + "," +
               fmt(rep.ratios_eta[i]) + "," + fmt(rep.ratios_kappa[i]) + "\n";
    }
    return out;
}

inline Json kernel_report_json(const KernelRateReport& rep) {
    Json j;
    j["delta"] = rep.delta;
    j["horizon"] = rep.horizon;
    j["alphas"] = rep.alphas;
    j["gaps_eta_weighted"] = rep.gaps_eta;
    j["gaps_kappa_weighted"] = rep.gaps_kappa;
    j["slope_eta"] = rep.fit_eta.slope;
    j["slope_eta_ci95"] = rep.fit_eta.ci95_halfwidth;
    j["slope_kappa"] = rep.fit_kappa.slope;
    j["slope_kappa_ci95"] = rep.fit_kappa.ci95_halfwidth;
    j["ratio_spread_eta"] = rep.ratio_spread_eta;
    j["ratio_spread_kappa"] = rep.ratio_spread_kappa;
    j["fitted_prefactor_eta"] = rep.fitted_prefactor_eta;
    j["fitted_prefactor_kappa"] = rep.fitted_prefactor_kappa;
    j["pass"] = rep.pass;
    return j;
}

// ---------------------------------------------------------------------------
// rate-study

inline std::string rate_report_csv(const RateStudyReport& rep, bool timings) {
    std::string out = "alpha,gap_Hs,gap_L2,gap_Linf,gap_Wsp,eta,horizon,runtime_s\n";
    for (const auto& r : rep.rows) {
        out += fmt(r.alpha) + "," + fmt(r.gap_weighted) + "," + fmt(r.gap_l2) + "," +
               fmt(r.gap_linf) + "," + fmt(r.gap_wsp) + "," + fmt(rep.eta) + "," +
               fmt(r.horizon) + "," + fmt(timings ? r.runtime_s : 0.0) + "\n";
    }
    return out;
}

inline Json rate_report_json(const RateStudyReport& rep, bool timings) {
    Json j;
    j["delta"] = rep.delta;
    j["eta"] = rep.eta;
    j["t2"] = rep.t2;
    j["epsilon"] = rep.epsilon;
    j["predicted_rate"] = rep.predicted_rate;
    j["noise_floor"] = rep.noise_floor;
    j["self_convergence_error"] = rep.self_convergence_error;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row;
        row["alpha"] = r.alpha;
        row["z"] = r.z;
        row["horizon"] = r.horizon;
        row["horizon_truncated"] = r.horizon_truncated;
        row["gap_weighted_hs"] = r.gap_weighted;
        row["gap_hs"] = r.gap_hs;
        row["gap_l2"] = r.gap_l2;
        row["gap_linf"] = r.gap_linf;
        row["gap_wsp"] = r.gap_wsp;
        row["uniform_product_bound"] = r.product_bound;
        row["runtime_s"] = timings ? r.runtime_s : 0.0;
        rows.push_back(row);
    }
    j["rows"] = rows;
    auto fit_json = [](const RateFit& f) {
        Json out;
        out["slope"] = f.fit.slope;
        out["intercept"] = f.fit.intercept;
        out["ci95_halfwidth"] = f.fit.ci95_halfwidth;
        out["points_used"] = f.fit.n;
        out["excluded"] = f.excluded;
        return out;
    };
    j["fit_weighted_hs"] = fit_json(rep.fit_weighted);
    j["fit_hs"] = fit_json(rep.fit_hs);
    j["fit_l2"] = fit_json(rep.fit_l2);
    j["fit_linf"] = fit_json(rep.fit_linf);
    j["fit_wsp"] = fit_json(rep.fit_wsp);
    j["pass"] = rep.pass;
    j["warnings"] = rep.warnings;
    return j;
}

// ---------------------------------------------------------------------------
// solve: per-(time, component) norm records and optional coefficient dumps

inline std::string trajectory_csv(const SolutionTrajectory& traj, double sobolev_s) {
    const NormKind hs = NormKind::hs(sobolev_s);
    const NormKind l2 = NormKind::hs(0.0);
    std::string out = "time,component,norm_hs,norm_l2\n";
    for (std::size_t g = 0; g < traj.times.size(); ++g)
        for (int i = 0; i < traj.states[g].components; ++i)
            out += fmt(traj.times[g]) + "," + std::to_string(i + 1) + "," +
                   fmt(norm(traj.states[g], hs, i)) + "," + fmt(norm(traj.states[g], l2, i)) + "\n";
    return out;
}

namespace detail {

inline void put_u64(std::string& buf, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

inline void put_f64(std::string& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    put_u64(buf, bits);
}

}  // namespace detail

/// Fixed binary layout, little-endian 64-bit fields throughout:
///   header  u64 d, u64 N, u64 n, f64 L, f64 t
///   payload n * N^d complex pairs (re, im) as f64, components consecutive,
///           lattice points in row-major order.
inline std::string coefficient_dump(const SpectralField& field, double t) {
    std::string buf;
    buf.reserve(40 + field.coef.size() * 16);
    detail::put_u64(buf, static_cast<std::uint64_t>(field.grid.dimension()));
    detail::put_u64(buf, static_cast<std::uint64_t>(field.grid.modes_per_axis()));
    detail::put_u64(buf, static_cast<std::uint64_t>(field.components));
    detail::put_f64(buf, field.grid.length());
    detail::put_f64(buf, t);
    for (const auto& c : field.coef) {
        detail::put_f64(buf, c.real());
        detail::put_f64(buf, c.imag());
    }
    return buf;
}

// ---------------------------------------------------------------------------
// existence-time table

struct ExistenceTable {
    std::vector<double> alphas;
    std::vector<double> t_alpha;
    double t2 = 0.0;
    double t0 = 0.0;
    LineFit gap_fit;       // log|T_alpha - T_2| against log|2 - alpha|
    bool floor_holds = true;  // T_0 <= T_alpha at every grid point
};

inline std::string existence_csv(const ExistenceTable& tab) {
    std::string out = "alpha,T_alpha,T_2,T_0,gap\n";
    for (std::size_t i = 0; i < tab.alphas.size(); ++i)
        out += fmt(tab.alphas[i]) + "," + fmt(tab.t_alpha[i]) + "," + fmt(tab.t2) + "," +
               fmt(tab.t0) + "," + fmt(std::abs(tab.t_alpha[i] - tab.t2)) + "\n";
    return out;
}

inline Json existence_json(const ExistenceTable& tab) {
    Json j;
    j["alphas"] = tab.alphas;
    j["t_alpha"] = tab.t_alpha;
    j["t2"] = tab.t2;
    j["t0"] = tab.t0;
    j["gap_slope"] = tab.gap_fit.slope;
    j["gap_slope_ci95"] = tab.gap_fit.ci95_halfwidth;
    j["floor_holds"] = tab.floor_holds;
    return j;
}

// ---------------------------------------------------------------------------
// gnuplot emission (self-contained scripts with inline data)

inline std::string rate_plot_script(const RateStudyReport& rep, const std::string& kind_label,
                                    const std::vector<double>& gaps, const LineFit& fit) {
    std::string s;
    s += "set logscale xy\n";
    s += "set xlabel '|2 - alpha|'\n";
    s += "set ylabel 'gap (" + kind_label + ")'\n";
    s += "set key left top\n";
    s += "fitslope(x) = exp(" + fmt(fit.intercept) + ") * x**(" + fmt(fit.slope) + ")\n";
    s += "ref(x) = exp(" + fmt(fit.intercept) + ") * x**(" + fmt(rep.predicted_rate) + ")\n";
    s += "$gaps << EOD\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        s += fmt(rep.rows[i].z) + " " + fmt(gaps[i]) + "\n";
    s += "EOD\n";
    s += "plot $gaps with points pt 7 title 'measured', \\\n";
    s += "     fitslope(x) with lines title 'fit slope " + fmt(fit.slope) + "', \\\n";
    s += "     ref(x) with lines dt 2 title 'reference slope " + fmt(rep.predicted_rate) + "'\n";
    return s;
}

inline std::string kernel_profile_script(double alpha, const WeightedGapProfile& prof) {
    std::string s;
    s += "set logscale x\n";
    s += "set xlabel 't'\n";
    s += "set ylabel 'weighted kernel gap, alpha = " + fmt(alpha) + "'\n";
    s += "$prof << EOD\n";
    for (std::size_t i = 1; i < prof.times.size(); ++i)
        s += fmt(prof.times[i]) + " " + fmt(prof.eta_weighted[i]) + " " +
             fmt(prof.kappa_weighted[i]) + "\n";
    s += "EOD\n";
    s += "plot $prof using 1:2 with lines title 't^eta sup gap', \\\n";
    s += "     $prof using 1:3 with lines title 't^kappa sup |xi| gap'\n";
    return s;
}

}  // namespace fraclab
