#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flockopt/controller.hpp"
#include "flockopt/flock_params.hpp"
#include "flockopt/rng.hpp"
#include "flockopt/sim_config.hpp"
#include "flockopt/vec2.hpp"

namespace flockopt {

struct AgentState {
    Vec2 position;
    Vec2 velocity;
    Vec2 gps_pos_noise;
    Vec2 gps_vel_noise;
};

struct Snapshot {
    std::vector<Vec2> positions;
    std::vector<Vec2> velocities;
};

// Ring buffer of past snapshots spanning at least the communication delay.
class StateHistory {
  public:
    explicit StateHistory(int capacity) : capacity_(capacity), buffer_(capacity) {}

    void push(Snapshot snap) {
        buffer_[head_] = std::move(snap);
        head_ = (head_ + 1) % capacity_;
        if (size_ < capacity_) ++size_;
    }

    // Snapshot from `steps_back` pushes ago (0 = most recent). Clamps to
    // the oldest entry while the buffer warms up.
    const Snapshot& back(int steps_back) const {
        if (steps_back >= size_) steps_back = size_ - 1;
        int idx = (head_ - 1 - steps_back + 2 * capacity_) % capacity_;
        return buffer_[idx];
    }

    int size() const { return size_; }

  private:
    int capacity_;
    int head_ = 0;
    int size_ = 0;
    std::vector<Snapshot> buffer_;
};

struct SwarmState {
    std::vector<AgentState> agents;
    StateHistory history;
    double time = 0.0;

    SwarmState(int n, int history_depth) : agents(n), history(history_depth) {}
};

struct StepRecord {
    std::vector<Vec2> positions;
    std::vector<Vec2> velocities;
    std::vector<Vec2> desired;
    int collision_pairs = 0;  // pairs closer than r_coll
    int wall_breaches = 0;    // agents outside the fence
};

struct SimLog {
    std::vector<StepRecord> steps;
    SimConfig config;
    FlockParams params;
    std::uint64_t seed = 0;
    long long total_collision_pairs = 0;
    long long total_wall_breaches = 0;
};

SwarmState init_swarm(const SimConfig& config, Rng& rng);

// One OU step on the velocity noise; position noise integrates it.
void advance_noise(AgentState& agent, double sigma_inner, double tau_gps, double dt,
                   Rng& rng);

// Delayed/noisy relative positions and velocities of all neighbors within
// r_comm of agent i's true position.
void sense_neighbors(const SwarmState& swarm, int i, const SimConfig& config,
                     std::vector<Vec2>& r_rel, std::vector<Vec2>& v_rel,
                     std::vector<int>& ids);

void step(SwarmState& swarm, const FlockParams& params, const SimConfig& config,
          const ArenaSpec& arena, std::vector<Rng>& agent_rngs, int step_index,
          StepRecord* record = nullptr, const Vec2* target = nullptr);

// Full episode; deterministic for a fixed config.seed. When target is
// set, self-propulsion points at it instead of the current heading.
SimLog run_simulation(const FlockParams& params, const SimConfig& config,
                      std::optional<Vec2> target = std::nullopt);

}  // namespace flockopt
