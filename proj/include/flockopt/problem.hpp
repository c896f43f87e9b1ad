#pragma once

#include <algorithm>

#include "flockopt/metrics.hpp"
#include "flockopt/moea.hpp"
#include "flockopt/pca.hpp"
#include "flockopt/sim.hpp"

namespace flockopt {

// Wraps one seeded flocking simulation as a bi-objective evaluation
// (f1, f2), both maximized.
inline Problem make_flocking_problem(const SimConfig& config, const TransferParams& tp,
                                     const ParamBounds& bounds) {
    Problem p;
    p.lower.assign(bounds.lower.begin(), bounds.lower.end());
    p.upper.assign(bounds.upper.begin(), bounds.upper.end());
    p.evaluate = [config, tp](const std::vector<double>& genome,
                              std::uint64_t seed) -> Objectives {
        std::array<double, FlockParams::kDim> a{};
        std::copy_n(genome.begin(), FlockParams::kDim, a.begin());
        FlockParams params = FlockParams::from_array(a);
        SimConfig cfg = config;
        cfg.seed = seed;
        SimLog log = run_simulation(params, cfg);
        ReducedObjectives ro =
            reduce_objectives(fitness_vector(order_params(log, cfg, params), tp, cfg));
        return {ro.f1, ro.f2};
    };
    return p;
}

}  // namespace flockopt
