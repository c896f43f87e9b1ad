#pragma once

#include <vector>

#include "flockopt/flock_params.hpp"
#include "flockopt/sim_config.hpp"
#include "flockopt/vec2.hpp"

namespace flockopt {

struct ArenaSpec {
    Vec2 center{0.0, 0.0};
    double side = 500.0;
};

// Velocity decay curve: linear close in, braking-limited farther out.
// 0 for r <= 0; r*p while r*p <= a/p; sqrt(2*a*r - a^2/p^2) beyond.
double decay(double r, double a, double p);

// Inverse of decay in r: the distance at which the allowed velocity
// difference equals v.
double braking_distance(double v, double a, double p);

// Rows of r_rel are delayed/noisy neighbor relative positions.
// neighbor_ids break the direction singularity for coincident agents.
Vec2 repulsion_velocity(const std::vector<Vec2>& r_rel, const FlockParams& params,
                        int self_id = 0, const std::vector<int>* neighbor_ids = nullptr);

Vec2 friction_velocity(const std::vector<Vec2>& r_rel, const std::vector<Vec2>& v_rel,
                       const FlockParams& params);

Vec2 shill_velocity(const Vec2& position, const Vec2& velocity, const ArenaSpec& arena,
                    const FlockParams& params);

// Composes self-propulsion, repulsion, friction and shill terms and
// clamps the result to v_max. propulsion_dir overrides the current
// heading (target-following mode); pass nullptr for normal flocking.
Vec2 desired_velocity(const Vec2& position, const Vec2& velocity,
                      const std::vector<Vec2>& r_rel, const std::vector<Vec2>& v_rel,
                      const ArenaSpec& arena, const FlockParams& params,
                      const SimConfig& config, int self_id = 0,
                      const std::vector<int>* neighbor_ids = nullptr,
                      const Vec2* propulsion_dir = nullptr);

}  // namespace flockopt
