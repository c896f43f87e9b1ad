#include "flockopt/controller.hpp"

#include <algorithm>
#include <cmath>

#include "flockopt/rng.hpp"

namespace flockopt {

double decay(double r, double a, double p) {
    if (r <= 0.0) return 0.0;
    double rp = r * p;
    if (rp <= a / p) return rp;
    return std::sqrt(2.0 * a * r - a * a / (p * p));
}

double braking_distance(double v, double a, double p) {
    if (v <= 0.0) return 0.0;
    if (v <= a / p) return v / p;
    return (v * v + a * a / (p * p)) / (2.0 * a);
}

namespace {

// Deterministic unit direction for coincident agents, keyed by the pair.
Vec2 coincident_direction(int self_id, int neighbor_id) {
    std::uint64_t h = splitmix64((static_cast<std::uint64_t>(self_id) << 32) ^
                                 static_cast<std::uint64_t>(neighbor_id));
    double theta = 2.0 * M_PI * (static_cast<double>(h >> 11) * 0x1.0p-53);
    return {std::cos(theta), std::sin(theta)};
}

}  // namespace

Vec2 repulsion_velocity(const std::vector<Vec2>& r_rel, const FlockParams& params,
                        int self_id, const std::vector<int>* neighbor_ids) {
    Vec2 sum;
    for (std::size_t j = 0; j < r_rel.size(); ++j) {
        double dist = r_rel[j].norm();
        Vec2 dir;
        if (dist < 1e-6) {
            int nid = neighbor_ids ? (*neighbor_ids)[j] : static_cast<int>(j);
            dir = coincident_direction(self_id, nid);
            dist = 1e-6;
        } else {
            dir = r_rel[j] / dist;
        }
        double r_mag = std::min(dist, params.r0_rep);
        // zero beyond the cutoff since r_mag - r0_rep saturates at 0
        sum += params.p_rep * (r_mag - params.r0_rep) * dir;
    }
    return sum;
}

Vec2 friction_velocity(const std::vector<Vec2>& r_rel, const std::vector<Vec2>& v_rel,
                       const FlockParams& params) {
    Vec2 sum;
    for (std::size_t j = 0; j < r_rel.size(); ++j) {
        double v_frictmax =
            std::max(params.v_frict, decay(r_rel[j].norm() - params.r0_frict - params.r0_rep,
                                           params.a_frict, params.p_frict));
        double v_mag = std::max(v_rel[j].norm(), v_frictmax);
        sum += params.c_frict * (v_mag - v_frictmax) * (v_rel[j] / v_mag);
    }
    return sum;
}

Vec2 shill_velocity(const Vec2& position, const Vec2& velocity, const ArenaSpec& arena,
                    const FlockParams& params) {
    Vec2 r_ci = arena.center - position;
    const double half = arena.side / 2.0;
    Vec2 sum;
    const double rc[2] = {r_ci.x, r_ci.y};
    for (int k = 0; k < 2; ++k) {
        double r_s_mag = half - std::abs(rc[k]);
        double sign = rc[k] >= 0.0 ? 1.0 : -1.0;
        Vec2 shill_vel = (k == 0) ? Vec2{params.v_shill * sign, 0.0}
                                  : Vec2{0.0, params.v_shill * sign};
        double v_shillmax =
            decay(r_s_mag - params.r0_shill, params.a_shill, params.p_shill);
        Vec2 diff = shill_vel - velocity;
        double v_s_mag = std::max(diff.norm(), v_shillmax);
        if (v_s_mag < 1e-12) continue;
        sum += params.c_shill * (v_s_mag - v_shillmax) * (diff / v_s_mag);
    }
    return sum;
}

Vec2 desired_velocity(const Vec2& position, const Vec2& velocity,
                      const std::vector<Vec2>& r_rel, const std::vector<Vec2>& v_rel,
                      const ArenaSpec& arena, const FlockParams& params,
                      const SimConfig& config, int self_id,
                      const std::vector<int>* neighbor_ids, const Vec2* propulsion_dir) {
    Vec2 heading = propulsion_dir ? normalized(*propulsion_dir) : normalized(velocity);
    Vec2 v_des = heading * config.v_flock +
                 repulsion_velocity(r_rel, params, self_id, neighbor_ids) +
                 friction_velocity(r_rel, v_rel, params) +
                 shill_velocity(position, velocity, arena, params);
    double mag = v_des.norm();
    if (mag < 1e-12) return heading * config.v_flock;
    if (mag > config.v_max) v_des = v_des * (config.v_max / mag);
    return v_des;
}

}  // namespace flockopt
