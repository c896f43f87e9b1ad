#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "flockopt/flock_params.hpp"
#include "flockopt/metrics.hpp"
#include "flockopt/moea.hpp"
#include "flockopt/pca.hpp"
#include "flockopt/sim.hpp"
#include "flockopt/sim_config.hpp"
#include "flockopt/target.hpp"

namespace flockopt::io {

// Floats rendered with 9 significant digits everywhere.
std::string fmt(double v);

nlohmann::json params_to_json(const FlockParams& p);
FlockParams params_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SimConfig& c);
SimConfig config_from_json(const nlohmann::json& j);

nlohmann::json transfer_to_json(const TransferParams& tp);
TransferParams transfer_from_json(const nlohmann::json& j);

nlohmann::json evolution_to_json(const EvolutionConfig& c);
EvolutionConfig evolution_from_json(const nlohmann::json& j);

// One row per step per agent: step,id,x,y,vx,vy,vdx,vdy.
void write_sim_log_csv(const SimLog& log, const std::filesystem::path& path);

nlohmann::json sim_sidecar(const SimLog& log, const OrderParams& op,
                           const FitnessVector& fv, const ReducedObjectives& ro);

void write_design_matrix_csv(const DesignMatrix& dm, const std::filesystem::path& path);
DesignMatrix read_design_matrix_csv(const std::filesystem::path& path);

nlohmann::json pca_to_json(const PcaResult& res);

void write_front_csv(const std::vector<Individual>& front,
                     const std::filesystem::path& path);

nlohmann::json generation_to_json(const GenerationRecord& rec,
                                  const std::vector<Individual>& population);
std::vector<Individual> population_from_json(const nlohmann::json& j);

void write_target_csv(const TargetSeries& series, const SinusoidFit& fit,
                      const std::filesystem::path& path);
nlohmann::json fit_to_json(const SinusoidFit& fit, double f_target);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace flockopt::io
