#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fraclab/errors.hpp"

namespace fraclab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double ci95_halfwidth = 0.0;  // 95% confidence half-width on the slope
    std::size_t n = 0;
};

namespace detail {

// two-sided 97.5% Student-t quantiles by degrees of freedom
inline double t975(std::size_t df) {
    static const double table[] = {0,     12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365,
                                   2.306, 2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
                                   2.120, 2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069,
                                   2.064, 2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (df == 0) return std::numeric_limits<double>::infinity();
    if (df <= 30) return table[df];
    return 1.960;
}

}  // namespace detail

/// Ordinary least-squares line y = slope*x + intercept with the standard
/// regression confidence interval for the slope.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw ConfigError("line fit needs at least 2 points, got " + std::to_string(n));
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ConfigError("line fit is degenerate: all abscissae equal");
    LineFit out;
    out.n = n;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    if (n > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (out.slope * x[i] + out.intercept);
            ss += r * r;
        }
        out.slope_stderr = std::sqrt(ss / (static_cast<double>(n) - 2.0) / sxx);
        out.ci95_halfwidth = detail::t975(n - 2) * out.slope_stderr;
    }
    return out;
}

/// Least-squares slope of log(y) against log(x). Inputs must be positive.
inline LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw ConfigError("log-log fit requires positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

}  // namespace fraclab
