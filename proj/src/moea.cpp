#include "flockopt/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "flockopt/parallel.hpp"
#include "flockopt/rng.hpp"

namespace flockopt {

bool dominates(const Objectives& a, const Objectives& b) {
    bool strictly = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] < b[k]) return false;
        if (a[k] > b[k]) strictly = true;
    }
    return strictly;
}

std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Individual>& pop) {
    const int n = static_cast<int>(pop.size());
    std::vector<std::vector<int>> dominated_by(n);
    std::vector<int> domination_count(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (dominates(pop[i].objectives, pop[j].objectives)) {
                dominated_by[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(pop[j].objectives, pop[i].objectives)) {
                dominated_by[j].push_back(i);
                ++domination_count[i];
            }
        }
    }
    std::vector<std::vector<int>> fronts;
    std::vector<int> current;
    for (int i = 0; i < n; ++i)
        if (domination_count[i] == 0) current.push_back(i);
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (int i : current)
            for (int j : dominated_by[i])
                if (--domination_count[j] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<Objectives>& front) {
    const int n = static_cast<int>(front.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    for (std::size_t m = 0; m < std::tuple_size<Objectives>::value; ++m) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return front[a][m] < front[b][m]; });
        dist[order[0]] = inf;
        dist[order[n - 1]] = inf;
        double span = front[order[n - 1]][m] - front[order[0]][m];
        if (span <= 0.0) continue;
        for (int i = 1; i < n - 1; ++i) {
            if (dist[order[i]] == inf) continue;
            dist[order[i]] += (front[order[i + 1]][m] - front[order[i - 1]][m]) / span;
        }
    }
    return dist;
}

namespace {

// rank first, then crowding, then index
bool better(const Individual& a, int ia, const Individual& b, int ib) {
    if (a.front_rank != b.front_rank) return a.front_rank < b.front_rank;
    if (a.crowding != b.crowding) return a.crowding > b.crowding;
    return ia < ib;
}

}  // namespace

int tournament_select(const std::vector<Individual>& pop, int tournament_size, Rng& rng) {
    const int n = static_cast<int>(pop.size());
    int best = static_cast<int>(rng.uniform() * n);
    if (best >= n) best = n - 1;
    for (int t = 1; t < tournament_size; ++t) {
        int cand = static_cast<int>(rng.uniform() * n);
        if (cand >= n) cand = n - 1;
        if (better(pop[cand], cand, pop[best], best)) best = cand;
    }
    return best;
}

void sbx_crossover(const std::vector<double>& p1, const std::vector<double>& p2,
                   const std::vector<double>& lower, const std::vector<double>& upper,
                   double prob, double eta, Rng& rng, std::vector<double>& c1,
                   std::vector<double>& c2) {
    c1 = p1;
    c2 = p2;
    if (rng.uniform() >= prob) return;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (rng.uniform() > 0.5) continue;
        if (std::abs(p1[i] - p2[i]) < 1e-14) continue;
        double y1 = std::min(p1[i], p2[i]);
        double y2 = std::max(p1[i], p2[i]);
        double u = rng.uniform();

        auto child = [&](double beta_bound) {
            double alpha = 2.0 - std::pow(beta_bound, -(eta + 1.0));
            double betaq;
            if (u <= 1.0 / alpha)
                betaq = std::pow(u * alpha, 1.0 / (eta + 1.0));
            else
                betaq = std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
            return betaq;
        };

        double beta1 = 1.0 + 2.0 * (y1 - lower[i]) / (y2 - y1);
        double betaq1 = child(beta1);
        double ch1 = 0.5 * ((y1 + y2) - betaq1 * (y2 - y1));

        double beta2 = 1.0 + 2.0 * (upper[i] - y2) / (y2 - y1);
        double betaq2 = child(beta2);
        double ch2 = 0.5 * ((y1 + y2) + betaq2 * (y2 - y1));

        ch1 = std::clamp(ch1, lower[i], upper[i]);
        ch2 = std::clamp(ch2, lower[i], upper[i]);
        if (rng.uniform() > 0.5) std::swap(ch1, ch2);
        c1[i] = ch1;
        c2[i] = ch2;
    }
}

void polynomial_mutation(std::vector<double>& genome, const std::vector<double>& lower,
                         const std::vector<double>& upper, double prob, double eta,
                         Rng& rng) {
    for (std::size_t i = 0; i < genome.size(); ++i) {
        if (rng.uniform() >= prob) continue;
        double y = genome[i];
        double yl = lower[i], yu = upper[i];
        double span = yu - yl;
        if (span <= 0.0) continue;
        double delta1 = (y - yl) / span;
        double delta2 = (yu - y) / span;
        double u = rng.uniform();
        double mut_pow = 1.0 / (eta + 1.0);
        double deltaq;
        if (u < 0.5) {
            double xy = 1.0 - delta1;
            double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
            deltaq = std::pow(val, mut_pow) - 1.0;
        } else {
            double xy = 1.0 - delta2;
            double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
            deltaq = 1.0 - std::pow(val, mut_pow);
        }
        genome[i] = std::clamp(y + deltaq * span, yl, yu);
    }
}

Objectives evaluate(const Problem& problem, const std::vector<double>& genome,
                    int evals_per_individual, std::uint64_t seed, bool* diverged) {
    Objectives mean{0.0, 0.0};
    bool any_diverged = false;
    for (int e = 0; e < evals_per_individual; ++e) {
        std::uint64_t s = substream_seed(seed, e);
        try {
            Objectives o = problem.evaluate(genome, s);
            mean[0] += o[0];
            mean[1] += o[1];
        } catch (...) {
            any_diverged = true;  // scores (0,0) for this run
        }
    }
    mean[0] /= evals_per_individual;
    mean[1] /= evals_per_individual;
    if (diverged) *diverged = any_diverged;
    return mean;
}

namespace {

void rank_and_crowd(std::vector<Individual>& pop) {
    auto fronts = fast_nondominated_sort(pop);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        std::vector<Objectives> objs;
        objs.reserve(fronts[f].size());
        for (int i : fronts[f]) objs.push_back(pop[i].objectives);
        auto dist = crowding_distance(objs);
        for (std::size_t k = 0; k < fronts[f].size(); ++k) {
            pop[fronts[f][k]].front_rank = static_cast<int>(f);
            pop[fronts[f][k]].crowding = dist[k];
        }
    }
}

void evaluate_population(const Problem& problem, const EvolutionConfig& cfg,
                         std::vector<Individual>& pop) {
    parallel_for(static_cast<int>(pop.size()), cfg.jobs, [&](int i) {
        pop[i].objectives = evaluate(problem, pop[i].genome, cfg.evals_per_individual,
                                     pop[i].eval_seed, &pop[i].diverged);
    });
}

GenerationRecord make_record(int gen, const std::vector<Individual>& pop) {
    GenerationRecord rec;
    rec.generation = gen;
    for (const Individual& ind : pop)
        if (ind.front_rank == 0) rec.front.push_back(ind);
    return rec;
}

}  // namespace

ParetoArchive evolve(const Problem& problem, const EvolutionConfig& cfg,
                     const std::function<void(const GenerationRecord&,
                                              const std::vector<Individual>&)>& on_generation,
                     const std::vector<Individual>* resume_population,
                     int start_generation) {
    const std::size_t dim = problem.lower.size();
    const double mut_prob =
        cfg.mutation_prob >= 0.0 ? cfg.mutation_prob : 1.0 / static_cast<double>(dim);

    std::vector<Individual> pop;
    ParetoArchive archive;

    if (resume_population) {
        pop = *resume_population;
        rank_and_crowd(pop);
    } else {
        Rng init_rng(substream_seed(cfg.master_seed, 0xFFFF));
        pop.resize(cfg.pop_size);
        for (int i = 0; i < cfg.pop_size; ++i) {
            pop[i].genome.resize(dim);
            for (std::size_t d = 0; d < dim; ++d)
                pop[i].genome[d] = init_rng.uniform(problem.lower[d], problem.upper[d]);
            pop[i].eval_seed = substream_seed(cfg.master_seed, 1000000ULL + i);
        }
        evaluate_population(problem, cfg, pop);
        rank_and_crowd(pop);
        archive.generations.push_back(make_record(0, pop));
        if (on_generation) on_generation(archive.generations.back(), pop);
        start_generation = 0;
    }

    for (int gen = start_generation + 1; gen <= cfg.generations; ++gen) {
        // per-generation operator stream keeps resumed runs identical
        Rng op_rng(substream_seed(cfg.master_seed, 2000000ULL + gen));

        std::vector<Individual> offspring;
        offspring.reserve(cfg.pop_size);
        while (static_cast<int>(offspring.size()) < cfg.pop_size) {
            int pa = tournament_select(pop, cfg.tournament_size, op_rng);
            int pb = tournament_select(pop, cfg.tournament_size, op_rng);
            std::vector<double> c1, c2;
            sbx_crossover(pop[pa].genome, pop[pb].genome, problem.lower, problem.upper,
                          cfg.crossover_prob, cfg.crossover_eta, op_rng, c1, c2);
            polynomial_mutation(c1, problem.lower, problem.upper, mut_prob,
                                cfg.mutation_eta, op_rng);
            polynomial_mutation(c2, problem.lower, problem.upper, mut_prob,
                                cfg.mutation_eta, op_rng);
            Individual ind1, ind2;
            ind1.genome = std::move(c1);
            ind2.genome = std::move(c2);
            std::uint64_t gen_base = static_cast<std::uint64_t>(gen) * 1000000ULL;
            ind1.eval_seed =
                substream_seed(cfg.master_seed, 3000000000ULL + gen_base + offspring.size());
            ind2.eval_seed = substream_seed(cfg.master_seed,
                                            3000000000ULL + gen_base + offspring.size() + 1);
            offspring.push_back(std::move(ind1));
            if (static_cast<int>(offspring.size()) < cfg.pop_size)
                offspring.push_back(std::move(ind2));
        }

        evaluate_population(problem, cfg, offspring);

        // elitist survivor selection over P union Q
        std::vector<Individual> merged = pop;
        merged.insert(merged.end(), offspring.begin(), offspring.end());
        auto fronts = fast_nondominated_sort(merged);
        std::vector<Individual> next;
        next.reserve(cfg.pop_size);
        for (const auto& front : fronts) {
            std::vector<Objectives> objs;
            objs.reserve(front.size());
            for (int i : front) objs.push_back(merged[i].objectives);
            auto dist = crowding_distance(objs);
            for (std::size_t k = 0; k < front.size(); ++k)
                merged[front[k]].crowding = dist[k];

            if (next.size() + front.size() <= static_cast<std::size_t>(cfg.pop_size)) {
                for (int i : front) next.push_back(merged[i]);
            } else {
                std::vector<int> order = front;
                std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                    return merged[a].crowding > merged[b].crowding;
                });
                for (int i : order) {
                    if (next.size() == static_cast<std::size_t>(cfg.pop_size)) break;
                    next.push_back(merged[i]);
                }
            }
            if (next.size() == static_cast<std::size_t>(cfg.pop_size)) break;
        }
        pop = std::move(next);
        rank_and_crowd(pop);
        archive.generations.push_back(make_record(gen, pop));
        if (on_generation) on_generation(archive.generations.back(), pop);
    }

    archive.final_population = pop;
    return archive;
}

}  // namespace flockopt
