#pragma once

#include <array>
#include <complex>
#include <functional>

#include "fraclab/rng.hpp"
#include "fraclab/spectral_field.hpp"

namespace fraclab {

using SymbolFn = std::function<Complex(const Xi&)>;

/// A Fourier symbol with a claimed homogeneity order: order 1 for the
/// quadratic-term symbols, order 0 (scale-invariant, bounded) for the
/// linear-term symbols. Symbols are defined away from xi = 0; the value at
/// the origin is fixed to 0 by convention (the standard mean-zero choice,
/// matching how the Leray projector acts on constants).
struct Symbol {
    SymbolFn eval;
    int order = 1;

    Complex operator()(const Xi& xi) const {
        if (xi[0] == 0.0 && xi[1] == 0.0 && xi[2] == 0.0) return {0.0, 0.0};
        return eval(xi);
    }
};

struct HomogeneityReport {
    bool pass = false;
    double max_deviation = 0.0;
};

/// Samples the symbol on the unit sphere and rescales by lambda in
/// {0.5, 2, 10}; accepts when |s(lambda xi) - lambda^order s(xi)| stays
/// within tol * (1 + |s(xi)|) at every sample.
inline HomogeneityReport check_homogeneity(const Symbol& sym, int order, int dimension,
                                           int sample_count = 64, double tol = 1e-12,
                                           std::uint64_t seed = kDefaultSeed) {
    if (order != 0 && order != 1) throw ConfigError("homogeneity order must be 0 or 1");
    Rng rng(seed);
    HomogeneityReport rep;
    rep.pass = true;
    const double lambdas[] = {0.5, 2.0, 10.0};
    for (int s = 0; s < sample_count; ++s) {
        Xi xi = {0.0, 0.0, 0.0};
        double r2 = 0.0;
        do {
            r2 = 0.0;
            for (int a = 0; a < dimension; ++a) {
                xi[a] = rng.gaussian();
                r2 += xi[a] * xi[a];
            }
        } while (r2 < 1e-12);
        const double r = std::sqrt(r2);
        for (int a = 0; a < dimension; ++a) xi[a] /= r;
        const Complex base = sym(xi);
        for (double lam : lambdas) {
            Xi sxi = xi;
            for (int a = 0; a < dimension; ++a) sxi[a] *= lam;
            const double scale = order == 0 ? 1.0 : lam;
            const double dev = std::abs(sym(sxi) - scale * base);
            rep.max_deviation = std::max(rep.max_deviation, dev);
            if (dev > tol * (1.0 + std::abs(base))) rep.pass = false;
        }
    }
    return rep;
}

/// xi-wise orthogonal projection onto divergence-free fields,
/// P_lm = delta_lm - xi_l xi_m / |xi|^2; the zero matrix at xi = 0.
inline std::array<std::array<double, 3>, 3> leray_projector(const Xi& xi, int dimension) {
    std::array<std::array<double, 3>, 3> P{};
    double r2 = 0.0;
    for (int a = 0; a < dimension; ++a) r2 += xi[a] * xi[a];
    if (r2 == 0.0) return P;
    for (int l = 0; l < dimension; ++l)
        for (int m = 0; m < dimension; ++m)
            P[l][m] = (l == m ? 1.0 : 0.0) - xi[l] * xi[m] / r2;
    return P;
}

/// Project the given component block [first, first+dimension) of a field
/// onto divergence-free fields, mode by mode.
inline void leray_project_block(SpectralField& field, int first_component) {
    const auto& g = field.grid;
    const int d = g.dimension();
    if (first_component + d > field.components)
        throw std::invalid_argument("leray_project_block: block exceeds component count");
    for (std::size_t f = 0; f < g.size(); ++f) {
        const Xi xi = g.xi(f);
        const auto P = leray_projector(xi, d);
        std::array<Complex, 3> v{}, pv{};
        for (int a = 0; a < d; ++a) v[a] = field.comp(first_component + a)[f];
        for (int l = 0; l < d; ++l) {
            pv[l] = {0.0, 0.0};
            for (int m = 0; m < d; ++m) pv[l] += P[l][m] * v[m];
        }
        for (int a = 0; a < d; ++a) field.comp(first_component + a)[f] = pv[a];
    }
}

/// max over modes of |xi . uhat(xi)| / ||xi| |uhat(xi)|| for a component
/// block; the relative divergence defect of a velocity-like block.
inline double divergence_defect(const SpectralField& field, int first_component) {
    const auto& g = field.grid;
    const int d = g.dimension();
    double num = 0.0, den = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f) {
        const Xi xi = g.xi(f);
        Complex div{0.0, 0.0};
        double mag2 = 0.0;
        for (int a = 0; a < d; ++a) {
            div += xi[a] * field.comp(first_component + a)[f];
            mag2 += std::norm(field.comp(first_component + a)[f]);
        }
        num += std::norm(div);
        den += xi_norm(xi) * xi_norm(xi) * mag2;
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace fraclab
