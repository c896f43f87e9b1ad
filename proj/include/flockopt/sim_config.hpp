#pragma once

#include <cmath>
#include <cstdint>

#include "flockopt/errors.hpp"

namespace flockopt {

struct SimConfig {
    int n_agents = 30;
    double arena_side = 500.0;   // L_c [m]
    double v_flock = 6.0;        // [m/s]
    double v_max = 6.0;          // [m/s]
    double t_del = 0.2;          // communication delay [s]
    double sigma_inner = 0.005;  // noise intensity [m^2/s^2]
    double tau_gps = 1.0;        // noise relaxation time [s]
    double r_coll = 3.0;         // collision radius [m]
    double r_comm = 80.0;        // neighborhood radius [m]
    double a_max = 1.5;          // acceleration cap [m/s^2]
    double dt = 0.05;            // [s]
    double duration = 300.0;     // [s]
    std::uint64_t seed = 0;

    void validate() const {
        if (n_agents < 2) throw ConfigError("n_agents must be >= 2");
        if (arena_side <= 0.0) throw ConfigError("arena_side must be > 0");
        if (dt <= 0.0 || dt > t_del) throw ConfigError("require 0 < dt <= t_del");
        if (!(v_max >= v_flock && v_flock > 0.0))
            throw ConfigError("require v_max >= v_flock > 0");
        if (duration < 10.0 * t_del) throw ConfigError("duration must be >= 10*t_del");
        if (sigma_inner < 0.0) throw ConfigError("sigma_inner must be >= 0");
        if (r_coll < 0.0 || r_comm <= 0.0) throw ConfigError("bad radius");
    }

    int num_steps() const { return static_cast<int>(duration / dt); }
    int delay_steps() const { return static_cast<int>(std::ceil(t_del / dt - 1e-12)); }
};

// Tolerances for the order-parameter transfer functions.
struct TransferParams {
    double v_tol = 3.75;   // [m/s]
    double a_tol = 0.0003; // collision rate tolerance
    double r_tol = 5.0;    // [m]
};

}  // namespace flockopt
