#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fraclab/errors.hpp"

namespace fraclab {

/// Guaranteed Picard window for the fractional system:
///   T_alpha = (1/2) min[ 1/(3nC),
///                        min_{i,j} ((1 - 1/alpha_i) / (9 n^2 C ||u_{0,j}||))^{alpha_i/(alpha_i-1)} ]
/// relative to the generic constant C of the contraction estimates. A zero
/// data norm disables the corresponding branch (it is +infinity).
inline double existence_time_alpha(const std::vector<double>& alpha,
                                   const std::vector<double>& data_hs_norms, double C = 1.0) {
    const std::size_t n = alpha.size();
    if (n == 0 || data_hs_norms.size() != n)
        throw ConfigError("existence time needs matching alpha and data-norm vectors");
    if (!(C > 0.0)) throw ConfigError("the generic constant C must be positive");
    for (double a : alpha)
        if (!(a > 1.0))
            throw ConfigError("existence time requires alpha > 1 (the window degenerates at "
                              "alpha = 1); got " + std::to_string(a));
    for (double m : data_hs_norms)
        if (!(m >= 0.0)) throw ConfigError("data norms must be nonnegative");

    double best = 1.0 / (3.0 * static_cast<double>(n) * C);
    for (double a : alpha)
        for (double m : data_hs_norms) {
            if (m == 0.0) continue;  // branch is +infinity
            const double base = (1.0 - 1.0 / a) / (9.0 * static_cast<double>(n * n) * C * m);
            best = std::min(best, std::pow(base, a / (a - 1.0)));
        }
    return 0.5 * best;
}

/// Classical-diffusion window:
///   T_2 = (1/2) min[ 1/(3nC), min_j (1/(18 n^2 C ||u_{0,2,j}||))^2 ].
/// Coincides with existence_time_alpha at alpha = (2,...,2).
inline double existence_time_classical(const std::vector<double>& data_hs_norms, double C = 1.0) {
    const std::size_t n = data_hs_norms.size();
    if (n == 0) throw ConfigError("existence time needs at least one data norm");
    if (!(C > 0.0)) throw ConfigError("the generic constant C must be positive");
    double best = 1.0 / (3.0 * static_cast<double>(n) * C);
    for (double m : data_hs_norms) {
        if (!(m >= 0.0)) throw ConfigError("data norms must be nonnegative");
        if (m == 0.0) continue;
        const double base = 1.0 / (18.0 * static_cast<double>(n * n) * C * m);
        best = std::min(best, base * base);
    }
    return 0.5 * best;
}

/// Alpha-independent lower bound for the window, valid across the whole
/// band |2 - alpha_i| < delta when the data family converges with rates
/// beta_i >= beta_min:
///   Phi_j = (1 - 1/(2-delta)) / (9 n^2 C ||u_{0,2,j}|| + delta^beta_min)
///   T_0   = (1/2) min[ 1/(3nC),
///                      min_j min(Phi_j^{(2+delta)/(1-delta)}, Phi_j^{(2-delta)/(1+delta)}) ].
/// T_0 <= T_alpha is a numerical check, not an assumption, and is exercised
/// by the verification suite.
inline double existence_time_floor(double delta, double beta_min,
                                   const std::vector<double>& classical_norms, double C = 1.0) {
    if (!(delta > 0.0 && delta < 1.0 / 6.0))
        throw ConfigError("delta must lie in (0, 1/6) for the uniform window bound");
    if (!(beta_min > 0.0)) throw ConfigError("beta_min must be positive");
    if (!(C > 0.0)) throw ConfigError("the generic constant C must be positive");
    const std::size_t n = classical_norms.size();
    if (n == 0) throw ConfigError("existence time needs at least one data norm");

    double best = 1.0 / (3.0 * static_cast<double>(n) * C);
    const double numer = 1.0 - 1.0 / (2.0 - delta);
    const double e_lo = (2.0 - delta) / (1.0 + delta);
    const double e_hi = (2.0 + delta) / (1.0 - delta);
    for (double m : classical_norms) {
        if (!(m >= 0.0)) throw ConfigError("data norms must be nonnegative");
        const double phi = numer / (9.0 * static_cast<double>(n * n) * C * m + std::pow(delta, beta_min));
        best = std::min(best, std::min(std::pow(phi, e_hi), std::pow(phi, e_lo)));
    }
    return 0.5 * best;
}

}  // namespace fraclab
