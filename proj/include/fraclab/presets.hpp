#pragma once

#include <string>
#include <vector>

#include "fraclab/system_spec.hpp"

namespace fraclab {

enum class Preset { NavierStokes, MHD, Boussinesq, KellerSegel, Burgers1D };

inline Preset parse_preset(const std::string& name) {
    if (name == "navier-stokes" || name == "ns") return Preset::NavierStokes;
    if (name == "mhd") return Preset::MHD;
    if (name == "boussinesq") return Preset::Boussinesq;
    if (name == "keller-segel" || name == "ks") return Preset::KellerSegel;
    if (name == "burgers") return Preset::Burgers1D;
    throw ConfigError("unknown preset '" + name +
                      "' (expected navier-stokes, mhd, boussinesq, keller-segel or burgers)");
}

inline std::string preset_name(Preset p) {
    switch (p) {
        case Preset::NavierStokes: return "navier-stokes";
        case Preset::MHD: return "mhd";
        case Preset::Boussinesq: return "boussinesq";
        case Preset::KellerSegel: return "keller-segel";
        default: return "burgers";
    }
}

inline bool preset_dimension_ok(Preset p, int d) {
    switch (p) {
        case Preset::NavierStokes:
        case Preset::MHD:
        case Preset::Boussinesq: return d == 3;
        case Preset::KellerSegel: return d == 1 || d == 2;
        default: return d == 1;
    }
}

inline int preset_components(Preset p, int d) {
    switch (p) {
        case Preset::NavierStokes: return 3;
        case Preset::MHD: return 6;
        case Preset::Boussinesq: return 4;
        case Preset::KellerSegel: return d;
        default: return 1;
    }
}

/// First components of the divergence-free blocks (velocity, and the
/// magnetic block for MHD). Initial data and data-family perturbations are
/// Leray-projected on these blocks.
inline std::vector<int> preset_leray_blocks(Preset p) {
    switch (p) {
        case Preset::NavierStokes: return {0};
        case Preset::MHD: return {0, 3};
        case Preset::Boussinesq: return {0};
        default: return {};
    }
}

namespace detail {

inline Symbol projected_divergence_symbol(int l, int j, int k, int d) {
    // P_{lk}(xi) * i xi_j : the (l,j,k) entry of P div(. tensor .)
    return Symbol{[l, j, k, d](const Xi& xi) {
                      const auto P = leray_projector(xi, d);
                      return Complex(0.0, P[l][k] * xi[j]);
                  },
                  1};
}

inline Symbol scaled(const Symbol& s, double factor) {
    return Symbol{[s, factor](const Xi& xi) { return factor * s(xi); }, s.order};
}

}  // namespace detail

/// Symbol tables of the named model. Velocity-type blocks of the supplied
/// initial data are Leray-projected. Conventions:
///   navier-stokes  (d=3, n=3): q_{l,j,k} = P_{lk}(xi) i xi_j
///   mhd            (d=3, n=6): the four sign-structured blocks built from
///                              the same projected-divergence symbols
///   boussinesq     (d=3, n=4): velocity rows as navier-stokes, buoyancy
///                              realized by l_{l,3} = -P_{l,z}(xi) (unit
///                              gravity coefficient), temperature row
///                              q_{3,3,k} = i xi_k
///   keller-segel   (d in {1,2}, n=d):
///                              q_{l,j,k} = -i xi_l xi_j xi_k / |xi|^2
///                                          + (i/2) xi_l delta_{jk}
///   burgers        (d=1, n=1): q = i xi / 2
inline SystemSpec build_preset(Preset preset, const FourierGrid& grid,
                               std::vector<double> alpha_vec, SpectralField initial_data,
                               double sobolev_s) {
    const int d = grid.dimension();
    if (!preset_dimension_ok(preset, d))
        throw ConfigError("preset '" + preset_name(preset) + "' does not admit dimension " +
                          std::to_string(d));
    const int n = preset_components(preset, d);
    if (static_cast<int>(alpha_vec.size()) != n)
        throw ConfigError("preset '" + preset_name(preset) + "' needs " + std::to_string(n) +
                          " diffusion exponents, got " + std::to_string(alpha_vec.size()));
    if (initial_data.components != n)
        throw ConfigError("preset '" + preset_name(preset) + "' needs " + std::to_string(n) +
                          " data components, got " + std::to_string(initial_data.components));

    for (int block : preset_leray_blocks(preset)) leray_project_block(initial_data, block);

    SystemSpec spec(grid, std::move(alpha_vec), std::move(initial_data), sobolev_s);

    switch (preset) {
        case Preset::NavierStokes: {
            for (int l = 0; l < 3; ++l)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        spec.q_table[{l, j, k}] = detail::projected_divergence_symbol(l, j, k, 3);
            break;
        }
        case Preset::MHD: {
            for (int l = 0; l < 3; ++l)
                for (int a = 0; a < 3; ++a)
                    for (int m = 0; m < 3; ++m) {
                        const Symbol base = detail::projected_divergence_symbol(l, a, m, 3);
                        // velocity row: + P div(u@u) - P div(b@b)
                        spec.q_table[{l, a, m}] = base;
                        spec.q_table[{l, a + 3, m + 3}] = detail::scaled(base, -1.0);
                        // magnetic row: + P div(b@u) - P div(u@b)
                        spec.q_table[{l + 3, a + 3, m}] = base;
                        spec.q_table[{l + 3, a, m + 3}] = detail::scaled(base, -1.0);
                    }
            break;
        }
        case Preset::Boussinesq: {
            for (int l = 0; l < 3; ++l) {
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        spec.q_table[{l, j, k}] = detail::projected_divergence_symbol(l, j, k, 3);
                // buoyancy -P(theta e_z) enters the forcing with its sign
                spec.l_table[{l, 3}] = Symbol{[l](const Xi& xi) {
                                                  const auto P = leray_projector(xi, 3);
                                                  return Complex(-P[l][2], 0.0);
                                              },
                                              0};
            }
            for (int k = 0; k < 3; ++k)
                spec.q_table[{3, 3, k}] =
                    Symbol{[k](const Xi& xi) { return Complex(0.0, xi[k]); }, 1};
            break;
        }
        case Preset::KellerSegel: {
            for (int l = 0; l < d; ++l)
                for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k)
                        spec.q_table[{l, j, k}] = Symbol{
                            [l, j, k, d](const Xi& xi) {
                                double r2 = 0.0;
                                for (int a = 0; a < d; ++a) r2 += xi[a] * xi[a];
                                double v = -xi[l] * xi[j] * xi[k] / r2;
                                if (j == k) v += 0.5 * xi[l];
                                return Complex(0.0, v);
                            },
                            1};
            break;
        }
        case Preset::Burgers1D: {
            spec.q_table[{0, 0, 0}] =
                Symbol{[](const Xi& xi) { return Complex(0.0, 0.5 * xi[0]); }, 1};
            break;
        }
    }
    return spec;
}

}  // namespace fraclab
