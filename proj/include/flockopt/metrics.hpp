#pragma once

#include <vector>

#include "flockopt/flock_params.hpp"
#include "flockopt/sim.hpp"
#include "flockopt/sim_config.hpp"

namespace flockopt {

struct OrderParams {
    double phi_vel = 0.0;      // mean speed [m/s]
    double phi_corr = 0.0;     // mean pairwise velocity correlation, [-1,1]
    double phi_coll = 0.0;     // fraction of colliding pairs per step, [0,1]
    double phi_wall = 0.0;     // mean distance outside the fence [m]
    double phi_disc = 0.0;     // mean count of cluster-disconnected agents
    double phi_cluster = 0.0;  // mean of min_i n_i^cluster
};

struct FitnessVector {
    double f_speed = 0.0;
    double f_coll = 0.0;
    double f_wall = 0.0;
    double f_corr = 0.0;
    double f_disc = 0.0;
    double f_cluster = 0.0;
};

struct ReducedObjectives {
    double f1 = 0.0;  // f_wall * f_speed
    double f2 = 0.0;  // f_corr * f_coll * f_disc * f_cluster
};

// Connectivity radius for the cluster metrics:
// r0_rep + r0_frict + braking_distance(v_flock, a_frict, p_frict).
double cluster_radius(const FlockParams& params, const SimConfig& config);

// Euclidean distance from p to the fence rectangle; 0 inside.
double dist_outside(const Vec2& p, const Vec2& center, double side);

OrderParams order_params(const SimLog& log, const SimConfig& config,
                         const FlockParams& params);

// Linear ramp: 1 at x >= x_ref, 0 at x <= x_ref - tol.
double transfer_F1(double x, double x_ref, double tol);
// Linear decay: 1 at 0, 0 at x >= tol.
double transfer_F2(double x, double tol);
// Hyperbolic decay: tol / (tol + x).
double transfer_F3(double x, double tol);

FitnessVector fitness_vector(const OrderParams& op, const TransferParams& tp,
                             const SimConfig& config);

ReducedObjectives reduce_objectives(const FitnessVector& fv);

}  // namespace flockopt
