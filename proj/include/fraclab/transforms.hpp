#pragma once

#include <fftw3.h>

#include <complex>
#include <functional>
#include <mutex>
#include <vector>

#include "fraclab/spectral_field.hpp"

namespace fraclab {

namespace detail {

// FFTW plan creation/destruction is not thread-safe; execution of distinct
// plans is. Plans use FFTW_ESTIMATE so results are deterministic for a
// fixed build.
inline std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

inline void fft_c2c(const FourierGrid& grid, Complex* data, int sign) {
    int dims[3] = {grid.modes_per_axis(), grid.modes_per_axis(), grid.modes_per_axis()};
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft(grid.dimension(), dims, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace detail

/// DFT normalization, fixed once and used everywhere:
///   forward:  uhat_k = (1/N^d) * sum_j u(x_j) exp(-i xi_k . x_j)
///   inverse:  u(x_j) =           sum_k uhat_k exp(+i xi_k . x_j)
/// so a constant field c has uhat_0 = c, and the discrete Parseval identity
///   ||u||_{L^2(torus)}^2 = (L/N)^d sum_j |u(x_j)|^2 = L^d sum_k |uhat_k|^2
/// reproduces the L^2(torus) integral with lattice measure L^d.
inline SpectralField forward_transform(const std::vector<double>& physical,
                                       const FourierGrid& grid, int components = 1) {
    if (physical.size() != static_cast<std::size_t>(components) * grid.size())
        throw std::invalid_argument("physical array shape does not match grid");
    SpectralField out(grid, components, true);
    const double scale = 1.0 / static_cast<double>(grid.size());
    std::vector<Complex> buf(grid.size());
    for (int i = 0; i < components; ++i) {
        const double* src = physical.data() + static_cast<std::size_t>(i) * grid.size();
        for (std::size_t f = 0; f < grid.size(); ++f) buf[f] = Complex(src[f], 0.0);
        detail::fft_c2c(grid, buf.data(), FFTW_FORWARD);
        auto dst = out.comp(i);
        for (std::size_t f = 0; f < grid.size(); ++f) dst[f] = buf[f] * scale;
    }
    return out;
}

/// Inverse of forward_transform. Requires the Hermitian flag; the imaginary
/// residue of the back transform is checked against a tolerance scaled by
/// the field magnitude.
inline std::vector<double> inverse_transform(const SpectralField& field) {
    if (!field.hermitian)
        throw std::invalid_argument("inverse_transform requires a Hermitian field");
    std::vector<double> out(static_cast<std::size_t>(field.components) * field.grid.size());
    std::vector<Complex> buf(field.grid.size());
    for (int i = 0; i < field.components; ++i) {
        auto src = field.comp(i);
        std::copy(src.begin(), src.end(), buf.begin());
        detail::fft_c2c(field.grid, buf.data(), FFTW_BACKWARD);
        double* dst = out.data() + static_cast<std::size_t>(i) * field.grid.size();
        double scale = 0.0, resid = 0.0;
        for (std::size_t f = 0; f < field.grid.size(); ++f) {
            dst[f] = buf[f].real();
            scale = std::max(scale, std::abs(buf[f]));
            resid = std::max(resid, std::abs(buf[f].imag()));
        }
        if (resid > 1e-9 * std::max(scale, 1e-300))
            throw std::invalid_argument("inverse_transform: field is not Hermitian");
    }
    return out;
}

/// uhat(xi) -> m(xi) * uhat(xi). The multiplier must be defined on the whole
/// lattice including xi = 0 (homogeneous symbols adopt the value 0 there).
/// Hermitian symmetry survives exactly when m(-xi) == conj(m(xi)); callers
/// state this via `symmetric`.
inline SpectralField multiplier_apply(const SpectralField& field,
                                      const std::function<Complex(const Xi&)>& m,
                                      bool symmetric = true) {
    SpectralField out = field;
    std::vector<Complex> values(field.grid.size());
    for (std::size_t f = 0; f < field.grid.size(); ++f) values[f] = m(field.grid.xi(f));
    for (int i = 0; i < field.components; ++i) {
        auto dst = out.comp(i);
        for (std::size_t f = 0; f < field.grid.size(); ++f) dst[f] *= values[f];
    }
    out.hermitian = field.hermitian && symmetric;
    return out;
}

/// Largest wavenumber kept by the 2/3-rule truncation. (N-1)/3 guarantees
/// that aliases of products of retained modes land outside the retained set
/// for every even N.
inline int dealias_cutoff(const FourierGrid& grid) { return (grid.modes_per_axis() - 1) / 3; }

inline void dealias_truncate(SpectralField& field) {
    const int cut = dealias_cutoff(field.grid);
    const auto& g = field.grid;
    for (int i = 0; i < field.components; ++i) {
        auto c = field.comp(i);
        std::array<int, 3> idx;
        for (std::size_t f = 0; f < g.size(); ++f) {
            g.decompose(f, idx);
            for (int a = 0; a < g.dimension(); ++a) {
                if (std::abs(g.axis_wavenumber(idx[a])) > cut) {
                    c[f] = Complex(0.0, 0.0);
                    break;
                }
            }
        }
    }
}

/// Spectral coefficients of the pointwise physical product a*b with the
/// 2/3 rule applied to both inputs and to the result. Bilinear, symmetric,
/// Hermitian-preserving. Inputs must be single-component fields on the
/// same grid.
inline SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("dealiased_product: grid mismatch");
    if (a.components != 1 || b.components != 1)
        throw std::invalid_argument("dealiased_product operates on single components");
    SpectralField ta = a, tb = b;
    dealias_truncate(ta);
    dealias_truncate(tb);
    std::vector<double> pa = inverse_transform(ta);
    std::vector<double> pb = inverse_transform(tb);
    for (std::size_t f = 0; f < pa.size(); ++f) pa[f] *= pb[f];
    SpectralField out = forward_transform(pa, a.grid, 1);
    dealias_truncate(out);
    return out;
}

}  // namespace fraclab
