#pragma once

#include <vector>

#include "fraclab/norms.hpp"
#include "fraclab/rng.hpp"

namespace fraclab {

/// One prescribed lattice mode of the initial data: amplitude * cos(k.x) or
/// amplitude * sin(k.x) added to a component.
struct DataMode {
    int component = 0;
    std::array<int, 3> wavevector = {1, 0, 0};
    double amplitude = 1.0;
    bool sine = true;
};

/// Real field from explicit cosine/sine modes (Hermitian by construction;
/// wavevectors must avoid the Nyquist index so the pair (k, -k) exists).
inline SpectralField make_mode_data(const FourierGrid& grid, int components,
                                    const std::vector<DataMode>& modes) {
    SpectralField out = SpectralField::zeros(grid, components);
    for (const auto& m : modes) {
        if (m.component < 0 || m.component >= components)
            throw ConfigError("data mode component out of range");
        std::array<int, 3> idx = {0, 0, 0}, neg = {0, 0, 0};
        bool zero = true;
        for (int a = 0; a < grid.dimension(); ++a) {
            const int k = m.wavevector[a];
            if (k <= -grid.modes_per_axis() / 2 || k >= grid.modes_per_axis() / 2)
                throw ConfigError("data mode wavenumber out of the non-Nyquist range");
            if (k != 0) zero = false;
            idx[a] = grid.axis_index(k);
            neg[a] = grid.axis_index(-k);
        }
        auto c = out.comp(m.component);
        if (zero) {
            if (m.sine) continue;  // sin of the zero mode vanishes
            c[grid.flatten(idx)] += Complex(m.amplitude, 0.0);
            continue;
        }
        // cos(k.x) = (e^{ikx} + e^{-ikx})/2 ; sin(k.x) = (e^{ikx} - e^{-ikx})/(2i)
        const Complex half = m.sine ? Complex(0.0, -0.5 * m.amplitude)
                                    : Complex(0.5 * m.amplitude, 0.0);
        c[grid.flatten(idx)] += half;
        c[grid.flatten(neg)] += std::conj(half);
    }
    return out;
}

/// Band-limited random real field: coefficients drawn on modes with
/// |k_axis| <= band (zero mode excluded), Hermitian pairs mirrored through
/// the bit-stable generator, then scaled so the root-sum-square of the
/// per-component H^s norms hits `target_norm` (skipped if <= 0).
inline SpectralField make_random_band_data(const FourierGrid& grid, int components, int band,
                                           std::uint64_t seed, double target_norm, double s) {
    if (band < 1 || band >= grid.modes_per_axis() / 2)
        throw ConfigError("random data band must lie in [1, N/2)");
    SpectralField out = SpectralField::zeros(grid, components);
    Rng rng(seed);
    const auto& g = grid;
    for (int i = 0; i < components; ++i) {
        auto c = out.comp(i);
        std::array<int, 3> idx;
        for (std::size_t f = 0; f < g.size(); ++f) {
            g.decompose(f, idx);
            bool in_band = true, zero = true;
            for (int a = 0; a < g.dimension(); ++a) {
                const int k = g.axis_wavenumber(idx[a]);
                if (std::abs(k) > band) in_band = false;
                if (k != 0) zero = false;
            }
            if (!in_band || zero) continue;
            const std::size_t fneg = g.negate_index(f);
            if (fneg < f) continue;  // fill each Hermitian pair once
            const Complex v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            c[f] = v;
            c[fneg] = std::conj(v);
            if (fneg == f) c[f] = Complex(v.real(), 0.0);  // self-paired mode stays real
        }
    }
    if (target_norm > 0.0) {
        const NormKind hs = NormKind::hs(s);
        double nrm2 = 0.0;
        for (int i = 0; i < components; ++i) {
            const double ni = norm(out, hs, i);
            nrm2 += ni * ni;
        }
        if (!(nrm2 > 0.0)) throw ConfigError("random band field vanished; cannot normalize");
        out *= target_norm / std::sqrt(nrm2);
    }
    return out;
}

}  // namespace fraclab
