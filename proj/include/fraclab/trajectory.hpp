#pragma once

#include <cstdint>
#include <vector>

#include "fraclab/spectral_field.hpp"

namespace fraclab {

inline std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash_doubles(const std::vector<double>& v, std::uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a(v.data(), v.size() * sizeof(double), h);
}

/// Time-stamped states of one solver run. Times are strictly increasing and
/// start at 0; every state is finite and carries the Hermitian flag.
struct SolutionTrajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;
    std::vector<double> alpha;
    std::uint64_t spec_hash = 0;
    std::uint64_t config_hash = 0;

    void validate() const {
        if (times.size() != states.size())
            throw std::invalid_argument("trajectory: times/states size mismatch");
        if (times.empty() || times.front() != 0.0)
            throw std::invalid_argument("trajectory must start at t = 0");
        for (std::size_t g = 1; g < times.size(); ++g)
            if (!(times[g] > times[g - 1]))
                throw std::invalid_argument("trajectory times must be strictly increasing");
        for (const auto& s : states)
            if (!s.all_finite())
                throw std::invalid_argument("trajectory contains non-finite coefficients");
    }
};

/// Indices of the time nodes the two trajectories share (relative tolerance
/// 1e-12 on the node values). No interpolation is ever performed.
inline std::vector<std::pair<std::size_t, std::size_t>> common_nodes(
    const SolutionTrajectory& a, const SolutionTrajectory& b) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t jb = 0;
    for (std::size_t ja = 0; ja < a.times.size(); ++ja) {
        const double t = a.times[ja];
        const double tol = 1e-12 * std::max(1.0, std::abs(t));
        while (jb < b.times.size() && b.times[jb] < t - tol) ++jb;
        if (jb < b.times.size() && std::abs(b.times[jb] - t) <= tol) out.emplace_back(ja, jb);
    }
    return out;
}

}  // namespace fraclab
