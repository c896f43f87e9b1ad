#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "flockopt/errors.hpp"
#include "flockopt/io.hpp"
#include "flockopt/metrics.hpp"
#include "flockopt/moea.hpp"
#include "flockopt/parallel.hpp"
#include "flockopt/pca.hpp"
#include "flockopt/problem.hpp"
#include "flockopt/sim.hpp"
#include "flockopt/target.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace flockopt;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitDegenerate = 4;

struct CommonOpts {
    std::string config_path;
    std::string params_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_params) {
    cmd->add_option("--config", opts.config_path, "simulation config JSON");
    if (needs_params)
        cmd->add_option("--params", opts.params_path, "flocking parameters JSON");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "master seed")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--jobs", opts.jobs, "worker threads (default: cores)");
}

std::uint64_t resolve_seed(const CommonOpts& opts) {
    if (opts.seed_set) return opts.seed;
    if (const char* env = std::getenv("FLOCKOPT_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

int resolve_jobs(const CommonOpts& opts) {
    return opts.jobs > 0 ? opts.jobs : default_jobs();
}

fs::path resolve_out(const CommonOpts& opts, const std::string& command) {
    fs::path out;
    if (!opts.out_dir.empty()) {
        out = opts.out_dir;
    } else {
        char stamp[32];
        std::time_t now = std::time(nullptr);
        std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", std::localtime(&now));
        out = fs::path("runs") / (command + "-" + stamp);
    }
    fs::create_directories(out);
    return out;
}

SimConfig load_config(const CommonOpts& opts) {
    SimConfig cfg;
    TransferParams tp;
    if (!opts.config_path.empty()) {
        json j = io::read_json(opts.config_path);
        cfg = io::config_from_json(j);
    }
    return cfg;
}

TransferParams load_transfer(const CommonOpts& opts) {
    if (!opts.config_path.empty()) {
        json j = io::read_json(opts.config_path);
        if (j.contains("transfer")) return io::transfer_from_json(j["transfer"]);
    }
    return TransferParams{};
}

FlockParams load_params(const CommonOpts& opts) {
    if (opts.params_path.empty()) return FlockParams{};
    return io::params_from_json(io::read_json(opts.params_path));
}

void write_manifest(const fs::path& out, const std::string& command,
                    const CommonOpts& opts, const json& resolved) {
    json m;
    m["command"] = command;
    m["tool_version"] = kVersion;
    m["config_path"] = opts.config_path;
    m["params_path"] = opts.params_path;
    m["seed"] = resolve_seed(opts);
    m["out_dir"] = out.string();
    m["resolved"] = resolved;
    io::write_json(m, out / "manifest.json");
}

int cmd_simulate(const CommonOpts& opts) {
    SimConfig cfg = load_config(opts);
    cfg.seed = resolve_seed(opts);
    TransferParams tp = load_transfer(opts);
    FlockParams params = load_params(opts);
    fs::path out = resolve_out(opts, "simulate");
    json resolved;
    resolved["config"] = io::config_to_json(cfg);
    resolved["params"] = io::params_to_json(params);
    resolved["transfer"] = io::transfer_to_json(tp);
    write_manifest(out, "simulate", opts, resolved);

    SimLog log = run_simulation(params, cfg);
    OrderParams op = order_params(log, cfg, params);
    FitnessVector fv = fitness_vector(op, tp, cfg);
    ReducedObjectives ro = reduce_objectives(fv);
    io::write_sim_log_csv(log, out / "log.csv");
    io::write_json(io::sim_sidecar(log, op, fv, ro), out / "summary.json");
    std::cout << "simulate: f1=" << io::fmt(ro.f1) << " f2=" << io::fmt(ro.f2) << " -> "
              << out.string() << "\n";
    return kExitOk;
}

int cmd_sample(const CommonOpts& opts, int n) {
    SimConfig cfg = load_config(opts);
    TransferParams tp = load_transfer(opts);
    ParamBounds bounds;
    fs::path out = resolve_out(opts, "sample");
    json resolved;
    resolved["config"] = io::config_to_json(cfg);
    resolved["transfer"] = io::transfer_to_json(tp);
    resolved["n"] = n;
    write_manifest(out, "sample", opts, resolved);

    DesignMatrix dm =
        sample_random_runs(n, bounds, cfg, tp, resolve_seed(opts), resolve_jobs(opts));
    io::write_design_matrix_csv(dm, out / "design_matrix.csv");
    std::cout << "sample: " << n << " rows -> " << out.string() << "\n";
    return kExitOk;
}

int cmd_pca(const CommonOpts& opts, const std::string& design_path) {
    fs::path out = resolve_out(opts, "pca");
    write_manifest(out, "pca", opts, json{{"design_matrix", design_path}});
    DesignMatrix dm = io::read_design_matrix_csv(design_path);
    PcaResult res = run_pca(dm);
    io::write_json(io::pca_to_json(res), out / "pca.json");

    std::printf("%-8s  %10s    covariance matrix\n", "", "w");
    for (int i = 0; i < 6; ++i) {
        std::printf("%-8s  %10.4f   ", kObjectiveNames[i].c_str(), res.first_component[i]);
        for (int j = 0; j < 6; ++j) std::printf(" %8.4f", res.covariance[i][j]);
        std::printf("\n");
    }
    std::printf("partition F1 group:");
    for (int i : res.group_a) std::printf(" %s", kObjectiveNames[i].c_str());
    std::printf("\npartition F2 group:");
    for (int i : res.group_b) std::printf(" %s", kObjectiveNames[i].c_str());
    std::printf("\n");
    return kExitOk;
}

int cmd_optimize(const CommonOpts& opts, const std::string& evo_path) {
    SimConfig cfg = load_config(opts);
    TransferParams tp = load_transfer(opts);
    EvolutionConfig evo;
    if (!evo_path.empty()) evo = io::evolution_from_json(io::read_json(evo_path));
    evo.master_seed = resolve_seed(opts);
    evo.jobs = resolve_jobs(opts);
    fs::path out = resolve_out(opts, "optimize");
    json resolved;
    resolved["config"] = io::config_to_json(cfg);
    resolved["transfer"] = io::transfer_to_json(tp);
    resolved["evolution"] = io::evolution_to_json(evo);
    write_manifest(out, "optimize", opts, resolved);

    ParamBounds bounds;
    Problem problem = make_flocking_problem(cfg, tp, bounds);

    // resume from the last completed generation if present
    std::vector<Individual> resume;
    int start_gen = -1;
    for (int g = 0; g <= evo.generations; ++g) {
        char name[32];
        std::snprintf(name, sizeof(name), "gen_%04d.json", g);
        if (fs::exists(out / name)) start_gen = g;
    }
    if (start_gen >= 0) {
        char name[32];
        std::snprintf(name, sizeof(name), "gen_%04d.json", start_gen);
        resume = io::population_from_json(io::read_json(out / name));
        std::cout << "resuming from generation " << start_gen << "\n";
    }

    auto checkpoint = [&](const GenerationRecord& rec, const std::vector<Individual>& pop) {
        char name[32];
        std::snprintf(name, sizeof(name), "gen_%04d.json", rec.generation);
        io::write_json(io::generation_to_json(rec, pop), out / name);
        std::cout << "generation " << rec.generation << ": front size " << rec.front.size()
                  << "\n";
    };

    ParetoArchive archive = evolve(problem, evo, checkpoint,
                                   start_gen >= 0 ? &resume : nullptr,
                                   start_gen >= 0 ? start_gen : 0);
    std::vector<Individual> final_front;
    for (const Individual& ind : archive.final_population)
        if (ind.front_rank == 0) final_front.push_back(ind);
    io::write_front_csv(final_front, out / "front.csv");
    std::cout << "optimize: final front " << final_front.size() << " -> " << out.string()
              << "\n";
    return kExitOk;
}

int cmd_evaluate(const CommonOpts& opts, int n_runs) {
    SimConfig cfg = load_config(opts);
    TransferParams tp = load_transfer(opts);
    FlockParams params = load_params(opts);
    fs::path out = resolve_out(opts, "evaluate");
    json resolved;
    resolved["config"] = io::config_to_json(cfg);
    resolved["params"] = io::params_to_json(params);
    resolved["transfer"] = io::transfer_to_json(tp);
    resolved["n_runs"] = n_runs;
    write_manifest(out, "evaluate", opts, resolved);

    std::uint64_t seed = resolve_seed(opts);
    std::vector<std::array<double, 8>> rows(n_runs);  // six fitnesses + f1 + f2
    parallel_for(n_runs, resolve_jobs(opts), [&](int i) {
        SimConfig c = cfg;
        c.seed = substream_seed(seed, i);
        SimLog log = run_simulation(params, c);
        FitnessVector fv = fitness_vector(order_params(log, c, params), tp, c);
        ReducedObjectives ro = reduce_objectives(fv);
        rows[i] = {fv.f_speed, fv.f_coll, fv.f_wall, fv.f_corr,
                   fv.f_disc,  fv.f_cluster, ro.f1, ro.f2};
    });

    const char* names[8] = {"f_speed", "f_coll", "f_wall",  "f_corr",
                            "f_disc",  "f_cluster", "f1", "f2"};
    json stats;
    for (int k = 0; k < 8; ++k) {
        double mean = 0.0;
        for (const auto& r : rows) mean += r[k];
        mean /= n_runs;
        double var = 0.0;
        for (const auto& r : rows) var += (r[k] - mean) * (r[k] - mean);
        var = n_runs > 1 ? var / (n_runs - 1) : 0.0;
        stats[names[k]] = {{"mean", mean}, {"std", std::sqrt(var)}};
    }
    io::write_json(stats, out / "evaluation.json");
    std::cout << "evaluate: f1 " << stats["f1"]["mean"].get<double>() << " +- "
              << stats["f1"]["std"].get<double>() << ", f2 "
              << stats["f2"]["mean"].get<double>() << " +- "
              << stats["f2"]["std"].get<double>() << "\n";
    return kExitOk;
}

int cmd_target(const CommonOpts& opts, double tx, double ty) {
    SimConfig cfg = load_config(opts);
    cfg.seed = resolve_seed(opts);
    FlockParams params = load_params(opts);
    fs::path out = resolve_out(opts, "target");
    json resolved;
    resolved["config"] = io::config_to_json(cfg);
    resolved["params"] = io::params_to_json(params);
    resolved["target"] = {tx, ty};
    write_manifest(out, "target", opts, resolved);

    Vec2 target{tx, ty};
    SimLog log = run_simulation(params, cfg, target);
    TargetSeries series = com_distance_series(log, target);
    SinusoidFit fit = sinusoid_fit(series, initial_guess(series));
    double f_target = target_fitness(fit);
    io::write_target_csv(series, fit, out / "target_series.csv");
    io::write_json(io::fit_to_json(fit, f_target), out / "fit.json");
    std::cout << "target: omega=" << io::fmt(fit.angular_frequency)
              << " a=" << io::fmt(fit.amplitude) << " F_target=" << io::fmt(f_target)
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flocking-optimization toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    int sample_n = 500;
    int eval_runs = 100;
    std::string design_path;
    std::string evo_path;
    double target_x = 0.0, target_y = 0.0;

    CLI::App* simulate = app.add_subcommand("simulate", "run one simulation");
    add_common(simulate, opts, true);

    CLI::App* sample = app.add_subcommand("sample", "random-parameter design matrix");
    add_common(sample, opts, false);
    sample->add_option("--n", sample_n, "number of samples");

    CLI::App* pca = app.add_subcommand("pca", "principal component analysis");
    add_common(pca, opts, false);
    pca->add_option("--design", design_path, "design matrix CSV")->required();

    CLI::App* optimize = app.add_subcommand("optimize", "NSGA-II search");
    add_common(optimize, opts, false);
    optimize->add_option("--evo", evo_path, "evolution config JSON");

    CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "statistics over seeded runs");
    add_common(evaluate_cmd, opts, true);
    evaluate_cmd->add_option("--n", eval_runs, "number of runs");

    CLI::App* target = app.add_subcommand("target", "target-loiter analysis");
    add_common(target, opts, true);
    target->add_option("--x", target_x, "target x [m]");
    target->add_option("--y", target_y, "target y [m]");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return cmd_simulate(opts);
        if (sample->parsed()) return cmd_sample(opts, sample_n);
        if (pca->parsed()) return cmd_pca(opts, design_path);
        if (optimize->parsed()) return cmd_optimize(opts, evo_path);
        if (evaluate_cmd->parsed()) return cmd_evaluate(opts, eval_runs);
        if (target->parsed()) return cmd_target(opts, target_x, target_y);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const SimulationDiverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const ZeroAmplitude& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const FitFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const NumericalFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DegenerateFit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DegenerateColumn& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const AmbiguousPartition& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
