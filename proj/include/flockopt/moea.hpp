#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace flockopt {

// Maximization throughout: higher objective values are better.
using Objectives = std::array<double, 2>;

struct Individual {
    std::vector<double> genome;
    Objectives objectives{0.0, 0.0};
    int front_rank = -1;
    double crowding = 0.0;
    std::uint64_t eval_seed = 0;
    bool diverged = false;
};

struct EvolutionConfig {
    int pop_size = 100;
    int generations = 100;
    double crossover_prob = 0.9;
    double crossover_eta = 15.0;
    double mutation_prob = -1.0;  // <0 means 1/genome_dim per gene
    double mutation_eta = 20.0;
    int tournament_size = 2;
    int evals_per_individual = 1;
    std::uint64_t master_seed = 0;
    int jobs = 1;
};

// Pure evaluation given (genome, seed); exceptions mark divergence.
struct Problem {
    std::vector<double> lower;
    std::vector<double> upper;
    std::function<Objectives(const std::vector<double>&, std::uint64_t)> evaluate;
};

struct GenerationRecord {
    int generation = 0;
    std::vector<Individual> front;  // rank-0 members
};

struct ParetoArchive {
    std::vector<GenerationRecord> generations;
    std::vector<Individual> final_population;
};

bool dominates(const Objectives& a, const Objectives& b);

std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Individual>& pop);

std::vector<double> crowding_distance(const std::vector<Objectives>& front);

class Rng;
int tournament_select(const std::vector<Individual>& pop, int tournament_size, Rng& rng);

void sbx_crossover(const std::vector<double>& p1, const std::vector<double>& p2,
                   const std::vector<double>& lower, const std::vector<double>& upper,
                   double prob, double eta, Rng& rng, std::vector<double>& c1,
                   std::vector<double>& c2);

void polynomial_mutation(std::vector<double>& genome, const std::vector<double>& lower,
                         const std::vector<double>& upper, double prob, double eta,
                         Rng& rng);

// Averages evals_per_individual seeded problem evaluations. Diverged
// evaluations score (0,0).
Objectives evaluate(const Problem& problem, const std::vector<double>& genome,
                    int evals_per_individual, std::uint64_t seed, bool* diverged = nullptr);

// Optional per-generation callback, e.g. for checkpointing. Returning the
// archive includes rank-0 members of every generation.
ParetoArchive evolve(const Problem& problem, const EvolutionConfig& cfg,
                     const std::function<void(const GenerationRecord&,
                                              const std::vector<Individual>&)>& on_generation =
                         nullptr,
                     const std::vector<Individual>* resume_population = nullptr,
                     int start_generation = 0);

}  // namespace flockopt
