#pragma once

#include <stdexcept>
#include <string>

namespace flockopt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the state goes non-finite; carries the offending step.
struct SimulationDiverged : std::runtime_error {
    int step;
    explicit SimulationDiverged(int step_)
        : std::runtime_error("simulation diverged at step " + std::to_string(step_)),
          step(step_) {}
};

struct DegenerateColumn : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguousPartition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroAmplitude : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitFailed : std::runtime_error {
    double residual;
    FitFailed(const std::string& msg, double residual_)
        : std::runtime_error(msg), residual(residual_) {}
};

struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace flockopt
