#include "flockopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace flockopt::io {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

json params_to_json(const FlockParams& p) {
    json j;
    auto a = p.to_array();
    for (std::size_t i = 0; i < FlockParams::kDim; ++i) j[kParamNames[i]] = a[i];
    return j;
}

FlockParams params_from_json(const json& j) {
    std::array<double, FlockParams::kDim> a{};
    for (std::size_t i = 0; i < FlockParams::kDim; ++i)
        a[i] = j.at(kParamNames[i]).get<double>();
    return FlockParams::from_array(a);
}

json config_to_json(const SimConfig& c) {
    return json{{"n_agents", c.n_agents},       {"arena_side", c.arena_side},
                {"v_flock", c.v_flock},         {"v_max", c.v_max},
                {"t_del", c.t_del},             {"sigma_inner", c.sigma_inner},
                {"tau_gps", c.tau_gps},         {"r_coll", c.r_coll},
                {"r_comm", c.r_comm},           {"a_max", c.a_max},
                {"dt", c.dt},                   {"duration", c.duration},
                {"seed", c.seed}};
}

SimConfig config_from_json(const json& j) {
    SimConfig c;
    c.n_agents = j.value("n_agents", c.n_agents);
    c.arena_side = j.value("arena_side", c.arena_side);
    c.v_flock = j.value("v_flock", c.v_flock);
    c.v_max = j.value("v_max", c.v_max);
    c.t_del = j.value("t_del", c.t_del);
    c.sigma_inner = j.value("sigma_inner", c.sigma_inner);
    c.tau_gps = j.value("tau_gps", c.tau_gps);
    c.r_coll = j.value("r_coll", c.r_coll);
    c.r_comm = j.value("r_comm", c.r_comm);
    c.a_max = j.value("a_max", c.a_max);
    c.dt = j.value("dt", c.dt);
    c.duration = j.value("duration", c.duration);
    c.seed = j.value("seed", c.seed);
    return c;
}

json transfer_to_json(const TransferParams& tp) {
    return json{{"v_tol", tp.v_tol}, {"a_tol", tp.a_tol}, {"r_tol", tp.r_tol}};
}

TransferParams transfer_from_json(const json& j) {
    TransferParams tp;
    tp.v_tol = j.value("v_tol", tp.v_tol);
    tp.a_tol = j.value("a_tol", tp.a_tol);
    tp.r_tol = j.value("r_tol", tp.r_tol);
    return tp;
}

json evolution_to_json(const EvolutionConfig& c) {
    return json{{"pop_size", c.pop_size},
                {"generations", c.generations},
                {"crossover_prob", c.crossover_prob},
                {"crossover_eta", c.crossover_eta},
                {"mutation_prob", c.mutation_prob},
                {"mutation_eta", c.mutation_eta},
                {"tournament_size", c.tournament_size},
                {"evals_per_individual", c.evals_per_individual},
                {"master_seed", c.master_seed}};
}

EvolutionConfig evolution_from_json(const json& j) {
    EvolutionConfig c;
    c.pop_size = j.value("pop_size", c.pop_size);
    c.generations = j.value("generations", c.generations);
    c.crossover_prob = j.value("crossover_prob", c.crossover_prob);
    c.crossover_eta = j.value("crossover_eta", c.crossover_eta);
    c.mutation_prob = j.value("mutation_prob", c.mutation_prob);
    c.mutation_eta = j.value("mutation_eta", c.mutation_eta);
    c.tournament_size = j.value("tournament_size", c.tournament_size);
    c.evals_per_individual = j.value("evals_per_individual", c.evals_per_individual);
    c.master_seed = j.value("master_seed", c.master_seed);
    return c;
}

void write_sim_log_csv(const SimLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "step,id,x,y,vx,vy,vdx,vdy\n";
    for (std::size_t k = 0; k < log.steps.size(); ++k) {
        const StepRecord& s = log.steps[k];
        for (std::size_t i = 0; i < s.positions.size(); ++i) {
            out << k << ',' << i << ',' << fmt(s.positions[i].x) << ','
                << fmt(s.positions[i].y) << ',' << fmt(s.velocities[i].x) << ','
                << fmt(s.velocities[i].y) << ',' << fmt(s.desired[i].x) << ','
                << fmt(s.desired[i].y) << '\n';
        }
    }
}

json sim_sidecar(const SimLog& log, const OrderParams& op, const FitnessVector& fv,
                 const ReducedObjectives& ro) {
    json j;
    j["seed"] = log.seed;
    j["config"] = config_to_json(log.config);
    j["params"] = params_to_json(log.params);
    j["events"] = {{"collision_pairs", log.total_collision_pairs},
                   {"wall_breaches", log.total_wall_breaches}};
    j["order_params"] = {{"phi_vel", op.phi_vel},   {"phi_corr", op.phi_corr},
                         {"phi_coll", op.phi_coll}, {"phi_wall", op.phi_wall},
                         {"phi_disc", op.phi_disc}, {"phi_cluster", op.phi_cluster}};
    j["fitness"] = {{"f_speed", fv.f_speed}, {"f_coll", fv.f_coll},
                    {"f_wall", fv.f_wall},   {"f_corr", fv.f_corr},
                    {"f_disc", fv.f_disc},   {"f_cluster", fv.f_cluster}};
    j["reduced"] = {{"f1", ro.f1}, {"f2", ro.f2}};
    return j;
}

void write_design_matrix_csv(const DesignMatrix& dm, const std::filesystem::path& path) {
    std::ofstream out(path);
    for (int j = 0; j < 6; ++j) out << kObjectiveNames[j] << (j < 5 ? ',' : '\n');
    for (const auto& row : dm.rows) {
        for (int j = 0; j < 6; ++j) out << fmt(row[j]) << (j < 5 ? ',' : '\n');
    }
}

DesignMatrix read_design_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open design matrix: " + path.string());
    DesignMatrix dm;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty design matrix file");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::array<double, 6> row{};
        std::string cell;
        for (int j = 0; j < 6; ++j) {
            if (!std::getline(ss, cell, ','))
                throw ConfigError("short row at line " + std::to_string(lineno));
            row[j] = std::stod(cell);
        }
        dm.rows.push_back(row);
    }
    return dm;
}

json pca_to_json(const PcaResult& res) {
    json j;
    json cov = json::array();
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) cov.push_back(res.covariance[r][c]);
    j["covariance_row_major"] = cov;
    j["eigenvalues"] = res.eigenvalues;
    json vecs = json::array();
    for (int c = 0; c < 6; ++c)
        for (int r = 0; r < 6; ++r) vecs.push_back(res.eigenvectors[r][c]);
    j["eigenvectors_column_major"] = vecs;
    j["first_component"] = res.first_component;
    json ga = json::array(), gb = json::array();
    for (int i : res.group_a) ga.push_back(kObjectiveNames[i]);
    for (int i : res.group_b) gb.push_back(kObjectiveNames[i]);
    j["partition"] = {{"group_f1", ga}, {"group_f2", gb}};
    return j;
}

void write_front_csv(const std::vector<Individual>& front,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "f1,f2";
    for (std::size_t i = 0; i < FlockParams::kDim; ++i) out << ',' << kParamNames[i];
    out << '\n';
    for (const Individual& ind : front) {
        out << fmt(ind.objectives[0]) << ',' << fmt(ind.objectives[1]);
        for (double g : ind.genome) out << ',' << fmt(g);
        out << '\n';
    }
}

namespace {

json individual_to_json(const Individual& ind) {
    return json{{"genome", ind.genome},
                {"objectives", ind.objectives},
                {"front_rank", ind.front_rank},
                {"crowding", std::isinf(ind.crowding) ? json("inf") : json(ind.crowding)},
                {"eval_seed", ind.eval_seed},
                {"diverged", ind.diverged}};
}

Individual individual_from_json(const json& j) {
    Individual ind;
    ind.genome = j.at("genome").get<std::vector<double>>();
    auto o = j.at("objectives").get<std::vector<double>>();
    ind.objectives = {o.at(0), o.at(1)};
    ind.front_rank = j.value("front_rank", -1);
    if (j.contains("crowding") && j["crowding"].is_number())
        ind.crowding = j["crowding"].get<double>();
    else
        ind.crowding = std::numeric_limits<double>::infinity();
    ind.eval_seed = j.value("eval_seed", std::uint64_t{0});
    ind.diverged = j.value("diverged", false);
    return ind;
}

}  // namespace

json generation_to_json(const GenerationRecord& rec,
                        const std::vector<Individual>& population) {
    json j;
    j["generation"] = rec.generation;
    json front = json::array();
    for (const Individual& ind : rec.front) front.push_back(individual_to_json(ind));
    j["front"] = front;
    json pop = json::array();
    for (const Individual& ind : population) pop.push_back(individual_to_json(ind));
    j["population"] = pop;
    return j;
}

std::vector<Individual> population_from_json(const json& j) {
    std::vector<Individual> pop;
    for (const auto& e : j.at("population")) pop.push_back(individual_from_json(e));
    return pop;
}

void write_target_csv(const TargetSeries& series, const SinusoidFit& fit,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "t,d_bar,model\n";
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        double model = fit.amplitude *
                           std::sin(fit.angular_frequency * series.times[k] + fit.phase) +
                       fit.offset;
        out << fmt(series.times[k]) << ',' << fmt(series.d_bar[k]) << ',' << fmt(model)
            << '\n';
    }
}

json fit_to_json(const SinusoidFit& fit, double f_target) {
    return json{{"amplitude", fit.amplitude},
                {"angular_frequency", fit.angular_frequency},
                {"phase", fit.phase},
                {"offset", fit.offset},
                {"residual_rms", fit.residual},
                {"iterations", fit.iterations},
                {"f_target", f_target}};
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path.string());
    return json::parse(in);
}

}  // namespace flockopt::io
