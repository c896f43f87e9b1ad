#pragma once

#include <vector>

#include "flockopt/sim.hpp"
#include "flockopt/vec2.hpp"

namespace flockopt {

struct TargetSeries {
    std::vector<double> times;
    std::vector<double> d_bar;  // swarm-COM distance to target [m]
    Vec2 target;
};

struct SinusoidFit {
    double amplitude = 0.0;          // a >= 0
    double angular_frequency = 0.0;  // omega [rad/s]
    double phase = 0.0;              // psi in (-pi, pi]
    double offset = 0.0;             // c
    double residual = 0.0;           // RMS
    int iterations = 0;
};

struct SinusoidGuess {
    double amplitude = 0.0;
    double frequency = 0.0;  // f0 [Hz]
    double phase = 0.0;
    double offset = 0.0;
};

TargetSeries com_distance_series(const SimLog& log, const Vec2& target);

// DFT-seeded initial estimate: offset = mean, amplitude = sqrt(2)*RMS
// deviation, frequency from the dominant non-DC bin, phase = 0.
SinusoidGuess initial_guess(const TargetSeries& series);

// Levenberg-Marquardt refinement of a*sin(omega*t + psi) + c over the
// time axis, analytic Jacobian.
SinusoidFit sinusoid_fit(const TargetSeries& series, const SinusoidGuess& guess);

// F_target = omega / a.
double target_fitness(const SinusoidFit& fit);

}  // namespace flockopt
