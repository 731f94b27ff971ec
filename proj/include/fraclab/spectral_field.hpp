#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "fraclab/fourier_grid.hpp"

namespace fraclab {

using Complex = std::complex<double>;

/// Multi-component array of Fourier coefficients on a FourierGrid.
///
/// The `hermitian` flag records that the field represents a real physical
/// field, i.e. uhat(-xi) == conj(uhat(xi)). Operations that preserve the
/// symmetry propagate the flag; inverse transforms require it.
struct SpectralField {
    FourierGrid grid;
    int components = 1;
    std::vector<Complex> coef;  // [component][lattice], lattice row-major
    bool hermitian = false;

    SpectralField(const FourierGrid& g, int n_components, bool herm = false)
        : grid(g), components(n_components),
          coef(static_cast<std::size_t>(n_components) * g.size()), hermitian(herm) {
        if (n_components < 1) throw ConfigError("component count must be positive");
    }

    std::span<Complex> comp(int i) {
        return {coef.data() + static_cast<std::size_t>(i) * grid.size(), grid.size()};
    }
    std::span<const Complex> comp(int i) const {
        return {coef.data() + static_cast<std::size_t>(i) * grid.size(), grid.size()};
    }

    SpectralField component_copy(int i) const {
        SpectralField out(grid, 1, hermitian);
        auto src = comp(i);
        std::copy(src.begin(), src.end(), out.coef.begin());
        return out;
    }

    bool all_finite() const {
        for (const auto& c : coef)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }

    // max over components and lattice of |uhat(-xi) - conj(uhat(xi))|
    double hermitian_defect() const {
        double worst = 0.0;
        for (int i = 0; i < components; ++i) {
            auto c = comp(i);
            for (std::size_t f = 0; f < grid.size(); ++f) {
                const std::size_t g = grid.negate_index(f);
                worst = std::max(worst, std::abs(c[g] - std::conj(c[f])));
            }
        }
        return worst;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : coef) m = std::max(m, std::abs(c));
        return m;
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
        hermitian = hermitian && o.hermitian;
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < coef.size(); ++i) coef[i] -= o.coef[i];
        hermitian = hermitian && o.hermitian;
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& c : coef) c *= a;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

    void check_compatible(const SpectralField& o) const {
        if (!(grid == o.grid) || components != o.components)
            throw std::invalid_argument("spectral fields live on different grids");
    }

    static SpectralField zeros(const FourierGrid& g, int n_components) {
        return SpectralField(g, n_components, true);
    }
};

}  // namespace fraclab
