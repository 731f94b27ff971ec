#pragma once

#include <cmath>
#include <vector>

#include "fraclab/fitting.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/symbols.hpp"
#include "fraclab/trajectory.hpp"

namespace fraclab {

/// Rate-saturation map F(z) = max(z, z^beta): for beta <= 1 the prescribed
/// data rate carries over to the solutions, for beta > 1 it saturates at the
/// intrinsic linear rate of the kernel gap.
inline double F_rate(double z, double beta) {
    if (!(z >= 0.0)) throw ConfigError("F_rate requires z >= 0");
    if (!(beta > 0.0)) throw ConfigError("F_rate requires beta > 0");
    if (z == 0.0) return 0.0;
    return std::max(z, std::pow(z, beta));
}

/// Prescribed-rate data family u_{0,alpha} = u_{0,2} + c |2-alpha|^beta w.
/// The perturbation is Leray-projected on the given component blocks and
/// then normalized to unit H^s, so the measured H^s distance equals
/// c |2-alpha|^beta exactly by construction.
inline SpectralField build_data_family(const SpectralField& u02, double alpha, double beta,
                                       double c, const SpectralField& w, double s,
                                       const std::vector<int>& leray_blocks = {}) {
    if (!(beta > 0.0)) throw ConfigError("data-family rate beta must be positive");
    if (!(c > 0.0)) throw ConfigError("data-family constant c must be positive");
    u02.check_compatible(w);
    SpectralField pert = w;
    for (int block : leray_blocks) leray_project_block(pert, block);
    double nrm2 = 0.0;
    const NormKind hs = NormKind::hs(s);
    for (int i = 0; i < pert.components; ++i) {
        const double ni = norm(pert, hs, i);
        nrm2 += ni * ni;
    }
    const double nrm = std::sqrt(nrm2);
    if (!(nrm > 0.0)) throw ConfigError("data-family perturbation vanishes after projection");
    pert *= 1.0 / nrm;
    if (alpha == 2.0) return u02;
    pert *= c * std::pow(std::abs(2.0 - alpha), beta);
    return u02 + pert;
}

/// Left-hand side of the weighted convergence estimate:
///   max over shared grid times of sum_i t^eta ||u_i - v_i||_{H^s}.
/// Trajectories are compared at shared nodes only (restriction, never
/// interpolation).
inline double weighted_sup_distance(const SolutionTrajectory& a, const SolutionTrajectory& b,
                                    double eta, double s) {
    const auto nodes = common_nodes(a, b);
    if (nodes.empty())
        throw ConfigError("trajectories share no time nodes; distances require a common grid");
    const NormKind hs = NormKind::hs(s);
    double worst = 0.0;
    for (const auto& [ja, jb] : nodes) {
        const double t = a.times[ja];
        const double w = t == 0.0 ? (eta == 0.0 ? 1.0 : 0.0) : std::pow(t, eta);
        if (w == 0.0) continue;
        worst = std::max(worst, w * norm_sum(a.states[ja] - b.states[jb], hs));
    }
    return worst;
}

/// Unweighted pointwise-in-time distance over the window [eps, T]:
///   max over shared grid times >= eps of sum_i ||u_i - v_i||_kind.
/// Admissible kinds follow the corollary ranges: H^s, L^p with 2 <= p <= inf,
/// and homogeneous W^{sigma,p} with 0 < sigma < s, 2 <= p < inf.
inline double epsilon_window_distance(const SolutionTrajectory& a, const SolutionTrajectory& b,
                                      double eps, const NormKind& kind, double s) {
    if (!(eps > 0.0)) throw ConfigError("window start eps must be positive");
    if (kind.tag == NormKind::Tag::HomWsp && !(kind.sigma < s))
        throw ConfigError("homogeneous norm order sigma must satisfy 0 < sigma < s, got sigma = " +
                          std::to_string(kind.sigma) + " with s = " + std::to_string(s));
    const auto nodes = common_nodes(a, b);
    if (nodes.empty())
        throw ConfigError("trajectories share no time nodes; distances require a common grid");
    bool any = false;
    double worst = 0.0;
    for (const auto& [ja, jb] : nodes) {
        if (a.times[ja] < eps) continue;
        any = true;
        worst = std::max(worst, norm_sum(a.states[ja] - b.states[jb], kind));
    }
    if (!any) throw ConfigError("no shared time nodes at or after eps = " + std::to_string(eps));
    return worst;
}

struct RateFit {
    LineFit fit;
    std::vector<std::size_t> excluded;  // indices dropped as nonpositive / below floor
    std::vector<std::string> warnings;
};

/// Least-squares line through (log|2-alpha|, log D). Nonpositive gaps and
/// gaps below the noise floor are excluded with a warning; at least three
/// usable points are required.
inline RateFit fit_rate(const std::vector<double>& alphas, const std::vector<double>& gaps,
                        double noise_floor = 0.0) {
    if (alphas.size() != gaps.size()) throw std::invalid_argument("fit_rate: size mismatch");
    RateFit out;
    std::vector<double> z, d;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (alphas[i] == 2.0) throw ConfigError("rate fit abscissae must exclude alpha = 2");
        if (!(gaps[i] > 0.0)) {
            out.excluded.push_back(i);
            out.warnings.push_back("alpha = " + std::to_string(alphas[i]) +
                                   ": nonpositive gap, below noise floor; excluded from fit");
            continue;
        }
        if (gaps[i] < noise_floor) {
            out.excluded.push_back(i);
            out.warnings.push_back("alpha = " + std::to_string(alphas[i]) + ": gap " +
                                   std::to_string(gaps[i]) + " below noise floor " +
                                   std::to_string(noise_floor) + "; excluded from fit");
            continue;
        }
        z.push_back(std::abs(2.0 - alphas[i]));
        d.push_back(gaps[i]);
    }
    if (z.size() < 3)
        throw BelowNoiseFloorError("rate fit needs at least 3 usable points, only " +
                                   std::to_string(z.size()) + " gaps survived the noise floor");
    out.fit = fit_loglog(z, d);
    return out;
}

}  // namespace fraclab
