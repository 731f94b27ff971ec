#include <catch2/catch_amalgamated.hpp>

#include "fraclab/existence.hpp"
#include "fraclab/rng.hpp"

using namespace fraclab;

namespace {

// independent enumeration oracle for the fractional window
double t_alpha_oracle(const std::vector<double>& alpha, const std::vector<double>& norms,
                      double C) {
    const double n = static_cast<double>(alpha.size());
    std::vector<double> branches = {1.0 / (3.0 * n * C)};
    for (double a : alpha)
        for (double m : norms)
            if (m > 0.0)
                branches.push_back(std::pow((1.0 - 1.0 / a) / (9.0 * n * n * C * m), a / (a - 1.0)));
    double best = branches.front();
    for (double b : branches) best = std::min(best, b);
    return 0.5 * best;
}

}  // namespace

TEST_CASE("fractional window arithmetic examples") {
    // n=1, C=1, ||u0||=1, alpha=1.5: (1/2) min(1/3, (1/27)^3) = 1/39366
    const double t = existence_time_alpha({1.5}, {1.0}, 1.0);
    CHECK(std::abs(t - 1.0 / 39366.0) < 1e-18);
    CHECK(std::abs(t - 2.5403e-5) < 1e-8);
    // zero data norm: only the first branch remains
    CHECK(existence_time_alpha({1.5}, {0.0}, 1.0) == 0.5 / 3.0);
    CHECK(existence_time_alpha({1.5, 2.2}, {0.0, 0.0}, 1.0) == 0.5 / 6.0);
}

TEST_CASE("fractional window matches the 4-pair enumeration oracle, n=2") {
    const std::vector<double> alpha = {1.8, 2.2};
    const std::vector<double> norms = {1.0, 2.0};
    CHECK(std::abs(existence_time_alpha(alpha, norms, 1.0) - t_alpha_oracle(alpha, norms, 1.0)) <
          1e-18);
    Rng rng(123);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> a = {rng.uniform(1.1, 3.0), rng.uniform(1.1, 3.0)};
        const std::vector<double> m = {rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)};
        const double C = rng.uniform(0.2, 3.0);
        CHECK(std::abs(existence_time_alpha(a, m, C) - t_alpha_oracle(a, m, C)) <
              1e-15 * t_alpha_oracle(a, m, C) + 1e-18);
    }
}

TEST_CASE("classical window arithmetic examples") {
    // n=1, C=1, ||u0||=1: (1/2) min(1/3, 1/324) = 1/648
    const double t = existence_time_classical({1.0}, 1.0);
    CHECK(std::abs(t - 1.0 / 648.0) < 1e-18);
    CHECK(std::abs(t - 1.54321e-3) < 1e-8);
    CHECK(existence_time_classical({0.0}, 1.0) == 0.5 / 3.0);
}

TEST_CASE("fractional window at alpha = 2 coincides with the classical one") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        std::vector<double> norms;
        for (int j = 0; j < n; ++j) norms.push_back(rng.uniform(0.0, 3.0));
        const double C = rng.uniform(0.3, 2.0);
        const std::vector<double> alpha(n, 2.0);
        const double ta = existence_time_alpha(alpha, norms, C);
        const double t2 = existence_time_classical(norms, C);
        CHECK(std::abs(ta - t2) < 1e-15 * t2);
    }
}

TEST_CASE("fractional window is continuous in alpha") {
    const std::vector<double> norms = {0.8};
    double prev = existence_time_alpha({1.9}, norms, 1.0);
    for (double a = 1.901; a < 2.1; a += 0.001) {
        const double cur = existence_time_alpha({a}, norms, 1.0);
        CHECK(std::abs(cur - prev) < 5e-3 * prev);  // no jumps along a fine sweep
        prev = cur;
    }
}

TEST_CASE("window formulas reject degenerate exponents") {
    CHECK_THROWS_AS(existence_time_alpha({1.0}, {1.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(existence_time_alpha({0.9}, {1.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(existence_time_alpha({1.5}, {-1.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(existence_time_alpha({1.5}, {1.0}, 0.0), ConfigError);
    CHECK_THROWS_AS(existence_time_alpha({1.5}, {1.0, 2.0}, 1.0), ConfigError);
}

TEST_CASE("uniform floor: direct arithmetic oracle at delta = 0.1") {
    // Phi = (1 - 1/1.9) / (9 + 0.1); floor = (1/2) min(1/3, Phi^{2.1/0.9})
    const double phi = (1.0 - 1.0 / 1.9) / (9.0 + 0.1);
    CHECK(std::abs(phi - 0.0520532099) < 1e-9);
    const double expected = 0.5 * std::min(1.0 / 3.0, std::min(std::pow(phi, 2.1 / 0.9),
                                                               std::pow(phi, 1.9 / 1.1)));
    const double t0 = existence_time_floor(0.1, 1.0, {1.0}, 1.0);
    CHECK(std::abs(t0 - expected) < 1e-18);
    CHECK(std::abs(t0 - 5.0584121123e-4) < 1e-12);
}

TEST_CASE("uniform floor: Phi >= 1 branch is selected for tiny norms") {
    // norms -> 0: Phi = (1 - 1/1.9)/0.1 = 4.7368... >= 1, so the smaller
    // exponent (2-delta)/(1+delta) wins the inner min
    const double phi = (1.0 - 1.0 / 1.9) / 0.1;
    CHECK(phi >= 1.0);
    const double t0 = existence_time_floor(0.1, 1.0, {0.0}, 1.0);
    const double selected = std::pow(phi, 1.9 / 1.1);
    CHECK(std::pow(phi, 2.1 / 0.9) > selected);
    CHECK(std::abs(t0 - 0.5 * std::min(1.0 / 3.0, selected)) < 1e-17);
}

TEST_CASE("uniform floor converges to the classical window as delta -> 0") {
    const std::vector<double> norms = {1.0};
    const double t2 = existence_time_classical(norms, 1.0);
    double prev_gap = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double delta = std::pow(10.0, -k);
        const double gap = std::abs(existence_time_floor(delta, 1.0, norms, 1.0) - t2);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-8 * t2);
}

TEST_CASE("uniform floor stays below the fractional window across the band") {
    const std::vector<double> norms = {1.0};
    const double delta = 0.1;
    const double t0 = existence_time_floor(delta, 1.0, norms, 1.0);
    for (double a = 1.9; a <= 2.1 + 1e-12; a += 0.005) {
        const double ta = existence_time_alpha({a}, norms, 1.0);
        CHECK(t0 <= ta * (1.0 + 1e-14));
    }
}

TEST_CASE("uniform floor parameter validation") {
    CHECK_THROWS_AS(existence_time_floor(0.2, 1.0, {1.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(existence_time_floor(0.0, 1.0, {1.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(existence_time_floor(0.1, 0.0, {1.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(existence_time_floor(0.1, 1.0, {}, 1.0), ConfigError);
}
