#include "flockopt/sim.hpp"

#include <cmath>

#include "flockopt/errors.hpp"

namespace flockopt {

SwarmState init_swarm(const SimConfig& config, Rng& rng) {
    config.validate();
    const int n = config.n_agents;
    const double half = config.arena_side / 4.0;  // central half-side square
    SwarmState swarm(n, config.delay_steps() + 1);

    long attempts = 0;
    std::vector<Vec2> placed;
    while (static_cast<int>(placed.size()) < n) {
        if (++attempts > 100000)
            throw ConfigError("configuration infeasible: could not place agents with "
                              "pairwise separation >= r_coll");
        Vec2 cand{rng.uniform(-half, half), rng.uniform(-half, half)};
        bool ok = true;
        for (const Vec2& p : placed) {
            if ((cand - p).norm() < config.r_coll) {
                ok = false;
                break;
            }
        }
        if (ok) placed.push_back(cand);
    }

    Snapshot snap;
    snap.positions.resize(n);
    snap.velocities.resize(n);
    for (int i = 0; i < n; ++i) {
        swarm.agents[i].position = placed[i];
        double theta = rng.uniform(0.0, 2.0 * M_PI);
        swarm.agents[i].velocity = Vec2{std::cos(theta), std::sin(theta)} * config.v_flock;
        snap.positions[i] = swarm.agents[i].position;
        snap.velocities[i] = swarm.agents[i].velocity;
    }
    swarm.history.push(std::move(snap));
    return swarm;
}

void advance_noise(AgentState& agent, double sigma_inner, double tau_gps, double dt,
                   Rng& rng) {
    // Exact OU discretization: stationary per-component variance sigma_inner.
    double alpha = std::exp(-dt / tau_gps);
    double s = std::sqrt(sigma_inner * (1.0 - alpha * alpha));
    agent.gps_vel_noise.x = alpha * agent.gps_vel_noise.x + s * rng.gaussian();
    agent.gps_vel_noise.y = alpha * agent.gps_vel_noise.y + s * rng.gaussian();
    agent.gps_pos_noise += agent.gps_vel_noise * dt;
}

void sense_neighbors(const SwarmState& swarm, int i, const SimConfig& config,
                     std::vector<Vec2>& r_rel, std::vector<Vec2>& v_rel,
                     std::vector<int>& ids) {
    r_rel.clear();
    v_rel.clear();
    ids.clear();
    const Snapshot& delayed = swarm.history.back(config.delay_steps());
    const AgentState& self = swarm.agents[i];
    const double r_comm_sq = config.r_comm * config.r_comm;
    for (int j = 0; j < static_cast<int>(swarm.agents.size()); ++j) {
        if (j == i) continue;
        const AgentState& other = swarm.agents[j];
        if ((other.position - self.position).norm_sq() > r_comm_sq) continue;
        r_rel.push_back(delayed.positions[j] + other.gps_pos_noise - self.position -
                        self.gps_pos_noise);
        v_rel.push_back(delayed.velocities[j] + other.gps_vel_noise - self.velocity -
                        self.gps_vel_noise);
        ids.push_back(j);
    }
}

void step(SwarmState& swarm, const FlockParams& params, const SimConfig& config,
          const ArenaSpec& arena, std::vector<Rng>& agent_rngs, int step_index,
          StepRecord* record, const Vec2* target) {
    const int n = static_cast<int>(swarm.agents.size());

    for (int i = 0; i < n; ++i)
        advance_noise(swarm.agents[i], config.sigma_inner, config.tau_gps, config.dt,
                      agent_rngs[i]);

    std::vector<Vec2> desired(n);
    std::vector<Vec2> r_rel, v_rel;
    std::vector<int> ids;
    for (int i = 0; i < n; ++i) {
        sense_neighbors(swarm, i, config, r_rel, v_rel, ids);
        const AgentState& a = swarm.agents[i];
        Vec2 prop_dir;
        const Vec2* prop = nullptr;
        if (target) {
            prop_dir = *target - a.position;
            prop = &prop_dir;
        }
        desired[i] = desired_velocity(a.position, a.velocity, r_rel, v_rel, arena, params,
                                      config, i, &ids, prop);
    }

    Snapshot snap;
    snap.positions.resize(n);
    snap.velocities.resize(n);
    const double dv_max = config.a_max * config.dt;
    for (int i = 0; i < n; ++i) {
        AgentState& a = swarm.agents[i];
        Vec2 dv = desired[i] - a.velocity;
        double dv_mag = dv.norm();
        if (dv_mag <= dv_max)
            a.velocity = desired[i];
        else
            a.velocity += dv * (dv_max / dv_mag);
        a.position += a.velocity * config.dt;
        if (!std::isfinite(a.position.x) || !std::isfinite(a.position.y) ||
            !std::isfinite(a.velocity.x) || !std::isfinite(a.velocity.y))
            throw SimulationDiverged(step_index);
        snap.positions[i] = a.position;
        snap.velocities[i] = a.velocity;
    }

    if (record) {
        record->positions = snap.positions;
        record->velocities = snap.velocities;
        record->desired = std::move(desired);
        record->collision_pairs = 0;
        record->wall_breaches = 0;
        const double half = arena.side / 2.0;
        const double r_coll_sq = config.r_coll * config.r_coll;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j)
                if ((snap.positions[i] - snap.positions[j]).norm_sq() < r_coll_sq)
                    ++record->collision_pairs;
            Vec2 rel = snap.positions[i] - arena.center;
            if (std::abs(rel.x) > half || std::abs(rel.y) > half) ++record->wall_breaches;
        }
    }

    swarm.history.push(std::move(snap));
    swarm.time += config.dt;
}

SimLog run_simulation(const FlockParams& params, const SimConfig& config,
                      std::optional<Vec2> target) {
    config.validate();
    Rng init_rng(substream_seed(config.seed, 0));
    SwarmState swarm = init_swarm(config, init_rng);

    std::vector<Rng> agent_rngs;
    agent_rngs.reserve(config.n_agents);
    for (int i = 0; i < config.n_agents; ++i)
        agent_rngs.emplace_back(substream_seed(config.seed, 1 + i));

    ArenaSpec arena{{0.0, 0.0}, config.arena_side};

    SimLog log;
    log.config = config;
    log.params = params;
    log.seed = config.seed;
    const int steps = config.num_steps();
    log.steps.resize(steps);
    for (int k = 0; k < steps; ++k) {
        step(swarm, params, config, arena, agent_rngs, k, &log.steps[k],
             target ? &*target : nullptr);
        log.total_collision_pairs += log.steps[k].collision_pairs;
        log.total_wall_breaches += log.steps[k].wall_breaches;
    }
    return log;
}

}  // namespace flockopt
