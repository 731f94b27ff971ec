#include <catch2/catch_amalgamated.hpp>

#include "fraclab/norms.hpp"
#include "fraclab/rng.hpp"

using namespace fraclab;

namespace {

// brute-force direct-sum oracle for the spectral Hs norm
double hs_oracle(const SpectralField& f, double s, int comp) {
    const auto& g = f.grid;
    double acc = 0.0;
    for (std::size_t fl = 0; fl < g.size(); ++fl) {
        const Xi xi = g.xi(fl);
        double r2 = 0.0;
        for (int a = 0; a < 3; ++a) r2 += xi[a] * xi[a];
        acc += std::pow(1.0 + r2, s) * std::norm(f.comp(comp)[fl]);
    }
    return std::sqrt(acc * std::pow(g.length(), g.dimension()));
}

// brute-force Lp oracle: direct inverse DFT sum, then the p-sum
double lp_oracle(const SpectralField& f, double p, int comp) {
    const auto& g = f.grid;
    const int N = g.modes_per_axis();
    std::vector<double> phys(g.size());
    for (std::size_t jf = 0; jf < g.size(); ++jf) {
        std::array<int, 3> jidx;
        g.decompose(jf, jidx);
        Complex acc{0.0, 0.0};
        for (std::size_t kf = 0; kf < g.size(); ++kf) {
            std::array<int, 3> kidx;
            g.decompose(kf, kidx);
            double phase = 0.0;
            for (int a = 0; a < g.dimension(); ++a)
                phase += 2.0 * std::numbers::pi * g.axis_wavenumber(kidx[a]) * jidx[a] / N;
            acc += f.comp(comp)[kf] * Complex(std::cos(phase), std::sin(phase));
        }
        phys[jf] = acc.real();
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : phys) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (double v : phys) acc += std::pow(std::abs(v), p);
    return std::pow(acc * std::pow(g.dx(), g.dimension()), 1.0 / p);
}

SpectralField random_hermitian(const FourierGrid& g, std::uint64_t seed) {
    SpectralField f = SpectralField::zeros(g, 1);
    Rng rng(seed);
    auto c = f.comp(0);
    for (std::size_t fl = 0; fl < g.size(); ++fl) {
        const std::size_t fn = g.negate_index(fl);
        if (fn < fl) continue;
        const Complex v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        c[fl] = v;
        c[fn] = std::conj(v);
        if (fn == fl) c[fl] = Complex(v.real(), 0.0);
    }
    return f;
}

}  // namespace

TEST_CASE("norm kind parameter validation") {
    CHECK_THROWS_AS(NormKind::hs(-1.0), ConfigError);
    CHECK_THROWS_AS(NormKind::lp(1.5), ConfigError);
    CHECK_THROWS_AS(NormKind::hom_wsp(0.0, 2.0), ConfigError);
    CHECK_THROWS_AS(NormKind::hom_wsp(1.0, std::numeric_limits<double>::infinity()), ConfigError);
    CHECK_NOTHROW(NormKind::lp(std::numeric_limits<double>::infinity()));
}

TEST_CASE("single mode at |xi|=1 with unit L2 mass has Hs(2) norm 2") {
    const FourierGrid g(1, 8, 2.0 * std::numbers::pi);
    SpectralField f = SpectralField::zeros(g, 1);
    // unit L2 mass: L * (|c|^2 + |c|^2) = 1
    const double c = 1.0 / std::sqrt(2.0 * g.lattice_measure());
    f.comp(0)[g.axis_index(1)] = Complex(c, 0.0);
    f.comp(0)[g.axis_index(-1)] = Complex(c, 0.0);
    CHECK(std::abs(norm(f, NormKind::hs(0.0)) - 1.0) < 1e-14);
    CHECK(std::abs(norm(f, NormKind::hs(2.0)) - 2.0) < 1e-14);
}

TEST_CASE("Hs(0) equals the discrete L2 norm of the physical field (Parseval)") {
    const FourierGrid g(2, 8, 3.0);
    const auto f = random_hermitian(g, 4);
    const double spectral = norm(f, NormKind::hs(0.0));
    const auto phys = inverse_transform(f);
    double acc = 0.0;
    for (double v : phys) acc += v * v;
    const double physical = std::sqrt(acc * std::pow(g.dx(), 2));
    CHECK(std::abs(spectral - physical) < 1e-12 * physical);
}

TEST_CASE("norms match the brute-force oracles on 100 random N=8 fields") {
    const FourierGrid g1(1, 8, 2.0 * std::numbers::pi);
    const FourierGrid g2(2, 8, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        for (const auto* g : {&g1, &g2}) {
            const auto f = random_hermitian(*g, 1000 + trial * 7 + g->dimension());
            const double s = 1.5;
            CHECK(std::abs(norm(f, NormKind::hs(s)) - hs_oracle(f, s, 0)) <
                  1e-12 * std::max(1.0, hs_oracle(f, s, 0)));
            for (double p : {2.0, 4.0, std::numeric_limits<double>::infinity()}) {
                const double mine = norm(f, NormKind::lp(p));
                const double ref = lp_oracle(f, p, 0);
                CHECK(std::abs(mine - ref) < 1e-12 * std::max(1.0, ref));
            }
        }
    }
}

TEST_CASE("Hs norm is monotone nondecreasing in s") {
    const FourierGrid g(1, 16, 2.0 * std::numbers::pi);
    const auto f = random_hermitian(g, 9);
    double prev = 0.0;
    for (double s : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const double v = norm(f, NormKind::hs(s));
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("homogeneous W^{sigma,p} norm: multiplier kills the mean and matches hand value") {
    const FourierGrid g(1, 8, 2.0 * std::numbers::pi);
    SpectralField f = SpectralField::zeros(g, 1);
    f.comp(0)[0] = Complex(5.0, 0.0);  // pure constant
    CHECK(norm(f, NormKind::hom_wsp(1.0, 2.0)) == 0.0);
    // single cosine at |xi| = 2: W^{1,2} norm = 2 * L2 norm
    SpectralField h = SpectralField::zeros(g, 1);
    h.comp(0)[g.axis_index(2)] = Complex(0.5, 0.0);
    h.comp(0)[g.axis_index(-2)] = Complex(0.5, 0.0);
    const double l2 = norm(h, NormKind::hs(0.0));
    CHECK(std::abs(norm(h, NormKind::hom_wsp(1.0, 2.0)) - 2.0 * l2) < 1e-13);
}

TEST_CASE("Linf is the physical grid maximum") {
    const FourierGrid g(1, 16, 2.0 * std::numbers::pi);
    const auto f = random_hermitian(g, 31);
    const auto phys = inverse_transform(f);
    double m = 0.0;
    for (double v : phys) m = std::max(m, std::abs(v));
    CHECK(std::abs(norm(f, NormKind::lp(std::numeric_limits<double>::infinity())) - m) < 1e-13);
}
