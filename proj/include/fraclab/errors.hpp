#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

// User-facing input/range violation. Maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Picard iteration failed to reach tolerance. Exit code 3.
struct NonConvergenceError : std::runtime_error {
    double last_ratio;
    int iterations;
    NonConvergenceError(const std::string& msg, double ratio, int iters)
        : std::runtime_error(msg), last_ratio(ratio), iterations(iters) {}
};

// A non-finite coefficient appeared during time stepping. Exit code 4.
struct BlowUpError : std::runtime_error {
    int step_index;
    double time;
    BlowUpError(const std::string& msg, int step, double t)
        : std::runtime_error(msg), step_index(step), time(t) {}
};

// Every rate-fit point fell below the noise floor. Exit code 5.
struct BelowNoiseFloorError : std::runtime_error {
    explicit BelowNoiseFloorError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fraclab
