#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fraclab/fitting.hpp"
#include "fraclab/spectral_field.hpp"

namespace fraclab {

/// Fractional heat semigroup symbol exp(-t |xi|^alpha). The dimensional
/// constant in front of |xi|^alpha is normalized to 1 throughout; every
/// rate statement in this library is insensitive to a bounded constant
/// there, and no other normalization is used anywhere.
inline double heat_multiplier(double alpha, double t, double xi_norm_value) {
    if (!(alpha > 0.0)) throw ConfigError("heat multiplier requires alpha > 0");
    if (!(t >= 0.0)) throw ConfigError("heat multiplier requires t >= 0");
    if (t == 0.0 || xi_norm_value == 0.0) return 1.0;
    return std::exp(-t * std::pow(xi_norm_value, alpha));
}

/// Coefficient-wise multiplication by the heat multiplier. Preserves
/// Hermitian symmetry (the symbol is real and even); H^s norms are
/// nonincreasing in t.
inline SpectralField apply_semigroup(const SpectralField& field, double alpha, double t) {
    SpectralField out = field;
    const auto& g = field.grid;
    std::vector<double> mult(g.size());
    for (std::size_t f = 0; f < g.size(); ++f)
        mult[f] = heat_multiplier(alpha, t, xi_norm(g.xi(f)));
    for (int i = 0; i < field.components; ++i) {
        auto c = out.comp(i);
        for (std::size_t f = 0; f < g.size(); ++f) c[f] *= mult[f];
    }
    return out;
}

inline double eta_of_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0 / 6.0))
        throw ConfigError("delta must lie in (0, 1/6): the time weights eta = (1+4*delta)/(4-2*delta) "
                          "and kappa = (3+4*delta)/(4-2*delta) require it");
    return (1.0 + 4.0 * delta) / (4.0 - 2.0 * delta);
}

inline double kappa_of_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0 / 6.0))
        throw ConfigError("delta must lie in (0, 1/6): the time weights eta = (1+4*delta)/(4-2*delta) "
                          "and kappa = (3+4*delta)/(4-2*delta) require it");
    return (3.0 + 4.0 * delta) / (4.0 - 2.0 * delta);
}

/// Window half-width delta with its derived time-weight exponents.
/// 1/4 < eta < 1/2 and 3/4 < kappa < 1 are asserted on construction.
struct DeltaParams {
    double delta;
    double eta;
    double kappa;

    explicit DeltaParams(double d) : delta(d), eta(eta_of_delta(d)), kappa(kappa_of_delta(d)) {
        if (!(eta > 0.25 && eta < 0.5) || !(kappa > 0.75 && kappa < 1.0))
            throw ConfigError("derived weight exponents left their admissible ranges");
    }

    // alpha admissible for this window; endpoints included so that grids
    // placed exactly at 2 +/- delta are usable
    bool admits(double alpha) const { return std::abs(2.0 - alpha) <= delta; }
};

namespace detail {

inline double gap_integrand(double alpha, double t, int w, double r) {
    const double g = std::abs(std::exp(-t * std::pow(r, alpha)) - std::exp(-t * r * r));
    return w == 0 ? g : r * g;
}

}  // namespace detail

/// sup over r in [0, 1e3] of r^w |exp(-t r^alpha) - exp(-t r^2)|, computed
/// on a 10^4-point log grid over [1e-6, 1e3] followed by golden-section
/// refinement of the bracketing cell. Exactly 0 at t = 0 or alpha = 2.
inline double kernel_gap_sup(double alpha, double t, int w) {
    if (!(alpha > 1.0)) throw ConfigError("kernel gap requires alpha > 1");
    if (!(t >= 0.0)) throw ConfigError("kernel gap requires t >= 0");
    if (w != 0 && w != 1) throw ConfigError("kernel gap weight exponent must be 0 or 1");
    if (t == 0.0 || alpha == 2.0) return 0.0;

    constexpr int points = 10000;
    constexpr double lr_min = -6.0 * 2.302585092994046;  // ln(1e-6)
    constexpr double lr_max = 3.0 * 2.302585092994046;   // ln(1e3)
    double best = 0.0;
    int best_j = 0;
    for (int j = 0; j < points; ++j) {
        const double lr = lr_min + (lr_max - lr_min) * j / (points - 1);
        const double v = detail::gap_integrand(alpha, t, w, std::exp(lr));
        if (v > best) {
            best = v;
            best_j = j;
        }
    }
    // golden-section on log r in the bracketing cell
    const double step = (lr_max - lr_min) / (points - 1);
    double a = lr_min + step * std::max(best_j - 1, 0);
    double b = lr_min + step * std::min(best_j + 1, points - 1);
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = detail::gap_integrand(alpha, t, w, std::exp(c));
    double fd = detail::gap_integrand(alpha, t, w, std::exp(d));
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = detail::gap_integrand(alpha, t, w, std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = detail::gap_integrand(alpha, t, w, std::exp(d));
        }
    }
    return std::max({best, fc, fd});
}

/// Time profile of the weighted kernel-gap quantities
///   t^eta   * sup_r |h_alpha - h_2|      and
///   t^kappa * sup_r r |h_alpha - h_2|.
/// Times are geometric over [T*1e-6, T] with t = 0 prepended, so the small-t
/// endpoint where the weight matters is resolved.
struct WeightedGapProfile {
    std::vector<double> times;
    std::vector<double> eta_weighted;    // t^eta * gap(w=0)
    std::vector<double> kappa_weighted;  // t^kappa * gap(w=1)
    double max_eta_weighted = 0.0;       // empirical left-hand side, eta variant
    double max_kappa_weighted = 0.0;     // kappa variant
};

inline WeightedGapProfile weighted_gap_profile(double alpha, double delta, double T,
                                               int n_times = 48) {
    DeltaParams dp(delta);
    if (!dp.admits(alpha))
        throw ConfigError("alpha = " + std::to_string(alpha) +
                          " lies outside the window |2 - alpha| <= delta = " + std::to_string(delta));
    if (!(T > 0.0)) throw ConfigError("profile horizon must be positive");
    if (n_times < 2) throw ConfigError("profile needs at least 2 time points");

    WeightedGapProfile out;
    out.times.push_back(0.0);
    out.eta_weighted.push_back(0.0);
    out.kappa_weighted.push_back(0.0);
    const double lt_min = std::log(T * 1e-6), lt_max = std::log(T);
    for (int j = 0; j < n_times; ++j) {
        const double t = std::exp(lt_min + (lt_max - lt_min) * j / (n_times - 1));
        const double ew = std::pow(t, dp.eta) * kernel_gap_sup(alpha, t, 0);
        const double kw = std::pow(t, dp.kappa) * kernel_gap_sup(alpha, t, 1);
        out.times.push_back(t);
        out.eta_weighted.push_back(ew);
        out.kappa_weighted.push_back(kw);
        out.max_eta_weighted = std::max(out.max_eta_weighted, ew);
        out.max_kappa_weighted = std::max(out.max_kappa_weighted, kw);
    }
    return out;
}

/// Per-alpha verification that the weighted kernel gaps scale linearly in
/// |2 - alpha|: ratios must stay within a uniform band (spread < 10) and the
/// log-log slope must land in [0.9, 1.1] for both weight variants. The bound
/// constant in front of |2 - alpha| is not prescribed, so a fitted prefactor
/// is reported instead of checked.
struct KernelRateReport {
    std::vector<double> alphas;
    std::vector<double> gaps_eta;     // sup_t t^eta gap
    std::vector<double> gaps_kappa;   // sup_t t^kappa |xi|-weighted gap
    std::vector<double> ratios_eta;   // gap / |2-alpha|
    std::vector<double> ratios_kappa;
    LineFit fit_eta;
    LineFit fit_kappa;
    double ratio_spread_eta = 0.0;
    double ratio_spread_kappa = 0.0;
    double fitted_prefactor_eta = 0.0;    // exp(intercept)
    double fitted_prefactor_kappa = 0.0;
    double delta = 0.0;
    double horizon = 0.0;
    bool pass = false;
};

inline KernelRateReport kernel_rate_check(const std::vector<double>& alpha_grid, double delta,
                                          double T, int n_times = 48) {
    DeltaParams dp(delta);
    if (alpha_grid.size() < 2)
        throw ConfigError("kernel rate check needs at least 2 alpha values for a slope fit");
    KernelRateReport rep;
    rep.delta = delta;
    rep.horizon = T;
    std::vector<double> z;
    for (double a : alpha_grid) {
        if (a == 2.0)
            throw ConfigError("alpha grid must exclude the classical value 2 (the gap vanishes there)");
        if (!dp.admits(a))
            throw ConfigError("alpha = " + std::to_string(a) +
                              " lies outside the window |2 - alpha| <= delta = " + std::to_string(delta));
        const auto prof = weighted_gap_profile(a, delta, T, n_times);
        rep.alphas.push_back(a);
        rep.gaps_eta.push_back(prof.max_eta_weighted);
        rep.gaps_kappa.push_back(prof.max_kappa_weighted);
        z.push_back(std::abs(2.0 - a));
        rep.ratios_eta.push_back(prof.max_eta_weighted / z.back());
        rep.ratios_kappa.push_back(prof.max_kappa_weighted / z.back());
    }
    rep.fit_eta = fit_loglog(z, rep.gaps_eta);
    rep.fit_kappa = fit_loglog(z, rep.gaps_kappa);
    rep.fitted_prefactor_eta = std::exp(rep.fit_eta.intercept);
    rep.fitted_prefactor_kappa = std::exp(rep.fit_kappa.intercept);
    auto spread = [](const std::vector<double>& r) {
        const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
        return *hi / *lo;
    };
    rep.ratio_spread_eta = spread(rep.ratios_eta);
    rep.ratio_spread_kappa = spread(rep.ratios_kappa);
    rep.pass = rep.ratio_spread_eta < 10.0 && rep.ratio_spread_kappa < 10.0 &&
               rep.fit_eta.slope >= 0.9 && rep.fit_eta.slope <= 1.1 &&
               rep.fit_kappa.slope >= 0.9 && rep.fit_kappa.slope <= 1.1;
    return rep;
}

}  // namespace fraclab
