#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>

#include "fraclab/errors.hpp"

namespace fraclab {

// Frequency vector. Always 3 slots; axes beyond the grid dimension are zero.
using Xi = std::array<double, 3>;

inline double xi_norm(const Xi& xi) {
    return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

/// Periodic spectral discretization of the torus [0,L)^d.
///
/// Wavenumbers per axis run over {-N/2, ..., N/2-1} and are stored in FFT
/// order (0, 1, ..., N/2-1, -N/2, ..., -1). The frequency lattice is
/// xi_k = (2*pi/L) * k; it is symmetric about 0 except for the single
/// Nyquist index -N/2 per axis.
class FourierGrid {
public:
    FourierGrid(int dimension, int modes_per_axis, double domain_length)
        : d_(dimension), n_(modes_per_axis), length_(domain_length) {
        if (d_ < 1 || d_ > 3)
            throw ConfigError("grid dimension must be 1, 2 or 3, got " + std::to_string(d_));
        if (n_ < 4 || n_ % 2 != 0)
            throw ConfigError("modes per axis must be even and >= 4, got " + std::to_string(n_));
        if (!(length_ > 0.0))
            throw ConfigError("domain length must be positive, got " + std::to_string(length_));
        size_ = 1;
        for (int a = 0; a < d_; ++a) size_ *= static_cast<std::size_t>(n_);
    }

    int dimension() const { return d_; }
    int modes_per_axis() const { return n_; }
    double length() const { return length_; }
    std::size_t size() const { return size_; }

    // spacing of the frequency lattice (low-frequency resolution)
    double dxi() const { return 2.0 * std::numbers::pi / length_; }
    // physical grid spacing
    double dx() const { return length_ / n_; }
    // lattice measure: L^d, fixed so that sum_xi |uhat|^2 * measure equals
    // the L^2(torus) integral of |u|^2 (see transforms.hpp for the DFT
    // normalization this pairs with)
    double lattice_measure() const { return std::pow(length_, d_); }

    // signed integer wavenumber for a single-axis storage index
    int axis_wavenumber(int idx) const { return idx < n_ / 2 ? idx : idx - n_; }

    // storage index for a signed wavenumber in [-N/2, N/2-1]
    int axis_index(int k) const { return k >= 0 ? k : k + n_; }

    void decompose(std::size_t flat, std::array<int, 3>& idx) const {
        idx = {0, 0, 0};
        for (int a = d_ - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
            flat /= static_cast<std::size_t>(n_);
        }
    }

    std::size_t flatten(const std::array<int, 3>& idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < d_; ++a)
            flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[a]);
        return flat;
    }

    // flat index of the frequency-negated lattice point (-k mod N per axis)
    std::size_t negate_index(std::size_t flat) const {
        std::array<int, 3> idx;
        decompose(flat, idx);
        for (int a = 0; a < d_; ++a) idx[a] = (n_ - idx[a]) % n_;
        return flatten(idx);
    }

    Xi xi(std::size_t flat) const {
        std::array<int, 3> idx;
        decompose(flat, idx);
        Xi out = {0.0, 0.0, 0.0};
        for (int a = 0; a < d_; ++a) out[a] = dxi() * axis_wavenumber(idx[a]);
        return out;
    }

    bool operator==(const FourierGrid& o) const {
        return d_ == o.d_ && n_ == o.n_ && length_ == o.length_;
    }

private:
    int d_;
    int n_;
    double length_;
    std::size_t size_;
};

}  // namespace fraclab
