#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "fraclab/transforms.hpp"

namespace fraclab {

/// Tagged choice of norm: H^s (spectral), L^p (physical grid), or the
/// homogeneous Sobolev norm W^{sigma,p} (|xi|^sigma multiplier, then L^p).
struct NormKind {
    enum class Tag { Hs, Lp, HomWsp } tag;
    double s = 0.0;      // Hs smoothness
    double p = 2.0;      // Lebesgue exponent; infinity() for the grid max
    double sigma = 0.0;  // homogeneous order

    static NormKind hs(double s_) {
        if (!(s_ >= 0.0)) throw ConfigError("Hs norm requires s >= 0, got " + std::to_string(s_));
        return {Tag::Hs, s_, 2.0, 0.0};
    }
    static NormKind lp(double p_) {
        if (!(p_ >= 2.0))
            throw ConfigError("Lp norm requires p in [2, inf], got " + std::to_string(p_));
        return {Tag::Lp, 0.0, p_, 0.0};
    }
    static NormKind hom_wsp(double sigma_, double p_) {
        if (!(sigma_ > 0.0))
            throw ConfigError("W^{sigma,p} norm requires sigma > 0, got " + std::to_string(sigma_));
        if (!(p_ >= 2.0) || std::isinf(p_))
            throw ConfigError("W^{sigma,p} norm requires p in [2, inf), got " + std::to_string(p_));
        return {Tag::HomWsp, 0.0, p_, sigma_};
    }

    std::string name() const {
        switch (tag) {
            case Tag::Hs: return "Hs(" + std::to_string(s) + ")";
            case Tag::Lp: return std::isinf(p) ? "Linf" : "L" + std::to_string(p);
            default: return "W(" + std::to_string(sigma) + "," + std::to_string(p) + ")";
        }
    }
};

namespace detail {

inline double lp_of_physical(const std::vector<double>& u, const FourierGrid& grid, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : u) m = std::max(m, std::abs(v));
        return m;
    }
    const double cell = std::pow(grid.dx(), grid.dimension());
    double acc = 0.0;
    for (double v : u) acc += std::pow(std::abs(v), p);
    return std::pow(acc * cell, 1.0 / p);
}

}  // namespace detail

/// Norm of one component.
///   Hs:     ( sum_xi (1+|xi|^2)^s |uhat|^2 * L^d )^{1/2}
///   Lp:     discrete L^p of the physical field ((L/N)^d cell measure)
///   HomWsp: |xi|^sigma multiplier (0 at xi=0), inverse transform, then L^p
inline double norm(const SpectralField& field, const NormKind& kind, int component = 0) {
    const auto& g = field.grid;
    switch (kind.tag) {
        case NormKind::Tag::Hs: {
            auto c = field.comp(component);
            double acc = 0.0;
            for (std::size_t f = 0; f < g.size(); ++f) {
                const Xi xi = g.xi(f);
                const double w = std::pow(1.0 + xi_norm(xi) * xi_norm(xi), kind.s);
                acc += w * std::norm(c[f]);
            }
            return std::sqrt(acc * g.lattice_measure());
        }
        case NormKind::Tag::Lp: {
            const auto phys = inverse_transform(field.component_copy(component));
            return detail::lp_of_physical(phys, g, kind.p);
        }
        default: {
            SpectralField one = field.component_copy(component);
            auto c = one.comp(0);
            for (std::size_t f = 0; f < g.size(); ++f) {
                const double r = xi_norm(g.xi(f));
                c[f] *= (r > 0.0) ? std::pow(r, kind.sigma) : 0.0;
            }
            const auto phys = inverse_transform(one);
            return detail::lp_of_physical(phys, g, kind.p);
        }
    }
}

/// Sum of the component norms (the product-space norm used by the solver).
inline double norm_sum(const SpectralField& field, const NormKind& kind) {
    double acc = 0.0;
    for (int i = 0; i < field.components; ++i) acc += norm(field, kind, i);
    return acc;
}

}  // namespace fraclab
