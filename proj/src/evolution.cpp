#include "ocd/evolution.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "ocd/fitness.hpp"

namespace ocd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool chromosome_less(const Chromosome& a, const Chromosome& b) {
    return std::tie(a.adhesion, a.overlap) < std::tie(b.adhesion, b.overlap);
}

// Runs body(slot) for every slot in [begin, end), striped over `workers` threads.
template <typename Body>
void for_each_slot(std::size_t begin, std::size_t end, std::size_t workers, Body&& body) {
    if (workers <= 1 || end - begin <= 1) {
        for (std::size_t s = begin; s < end; ++s) body(s);
        return;
    }
    std::vector<std::jthread> pool;
    workers = std::min(workers, end - begin);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t s = begin + w; s < end; s += workers) body(s);
        });
}

}  // namespace

void GAConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("population size must be at least 2");
    if (tournament_size < 1) throw std::invalid_argument("tournament size must be at least 1");
    if (elitism_count >= population_size) throw std::invalid_argument("elitism count must be below population size");
    if (max_memberships < 1) throw std::invalid_argument("maximum memberships must be at least 1");
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(p_min) || !unit(p_max) || p_min > p_max)
        throw std::invalid_argument("mutation bounds must satisfy 0 <= p_min <= p_max <= 1");
    if (!unit(crossover_rate)) throw std::invalid_argument("crossover rate must lie in [0, 1]");
    if (!unit(p_overlap_init)) throw std::invalid_argument("initial overlap probability must lie in [0, 1]");
    if (!unit(lambda)) throw std::invalid_argument("lambda must lie in [0, 1]");
    if (!unit(reassignment_rate)) throw std::invalid_argument("reassignment rate must lie in [0, 1]");
    if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
}

Rng slot_rng(std::uint64_t seed, std::uint64_t generation, std::uint64_t slot) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ generation);
    h = splitmix64(h ^ slot);
    return Rng(h);
}

FitnessEvaluator::FitnessEvaluator(const Graph& g, std::size_t max_memberships, std::size_t cache_limit)
    : graph_(&g), max_memberships_(max_memberships), cache_limit_(cache_limit) {}

double FitnessEvaluator::operator()(const Chromosome& chrom) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(chrom); it != cache_.end()) return it->second;
    }
    double q = overlapping_modularity(decode_cover(chrom, *graph_, max_memberships_), *graph_);
    std::lock_guard lock(mutex_);
    if (cache_.size() >= cache_limit_) cache_.clear();
    cache_.emplace(chrom, q);
    return q;
}

std::size_t Population::fittest() const {
    std::size_t best_index = 0;
    for (std::size_t r = 1; r < individuals.size(); ++r) {
        if (fitness[r] > fitness[best_index] ||
            (fitness[r] == fitness[best_index] && chromosome_less(individuals[r], individuals[best_index])))
            best_index = r;
    }
    return best_index;
}

Population initialize(const Graph& g, const GAConfig& cfg, FitnessEvaluator& evaluate) {
    cfg.validate();
    Population pop;
    pop.individuals.resize(cfg.population_size);
    pop.fitness.resize(cfg.population_size);
    for_each_slot(0, cfg.population_size, cfg.workers, [&](std::size_t s) {
        Rng rng = slot_rng(cfg.seed, 0, s);
        pop.individuals[s] = random_chromosome(g, cfg.p_overlap_init, cfg.max_memberships, rng);
        pop.fitness[s] = evaluate(pop.individuals[s]);
    });
    std::size_t top = pop.fittest();
    pop.best = pop.individuals[top];
    pop.best_fitness = pop.fitness[top];
    return pop;
}

std::size_t tournament_select(std::span<const double> fitness, std::size_t tournament_size, Rng& rng) {
    if (fitness.empty()) throw std::invalid_argument("tournament over an empty population");
    std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
    std::size_t winner = pick(rng);
    for (std::size_t t = 1; t < tournament_size; ++t) {
        std::size_t r = pick(rng);
        if (fitness[r] > fitness[winner] || (fitness[r] == fitness[winner] && r < winner)) winner = r;
    }
    return winner;
}

std::pair<Chromosome, Chromosome> crossover_with_mask(const Chromosome& a, const Chromosome& b, const Graph& g,
                                                      std::size_t max_memberships,
                                                      std::span<const std::uint8_t> mask) {
    if (mask.size() != g.size()) throw std::invalid_argument("crossover mask size mismatch");
    Chromosome c1 = a;
    Chromosome c2 = b;
    for (NodeId i = 0; i < g.size(); ++i) {
        if (!mask[i]) continue;
        std::swap(c1.adhesion[i], c2.adhesion[i]);
        auto bits1 = c1.overlap_bits(g, i);
        auto bits2 = c2.overlap_bits(g, i);
        std::swap_ranges(bits1.begin(), bits1.end(), bits2.begin());
    }
    return {repair(std::move(c1), g, max_memberships), repair(std::move(c2), g, max_memberships)};
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, const Graph& g,
                                            std::size_t max_memberships, Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> mask(g.size());
    for (auto& m : mask) m = coin(rng) ? 1 : 0;
    return crossover_with_mask(a, b, g, max_memberships, mask);
}

double mutation_probability(double combined, const GAConfig& cfg) {
    return cfg.p_min + (cfg.p_max - cfg.p_min) * (1.0 - combined);
}

Chromosome adaptive_mutate(const Chromosome& x, const Graph& g, const InformativenessTable& info,
                           const GAConfig& cfg, Rng& rng, MutationTrace* trace) {
    Chromosome y = x;
    if (trace) {
        trace->redrawn.assign(g.size(), 0);
        trace->bit_flips = 0;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (NodeId i = 0; i < g.size(); ++i) {
        const double p = mutation_probability(info.combined[i], cfg);
        auto nbrs = g.neighbors(i);

        if (unit(rng) < p) {
            std::uniform_int_distribution<std::size_t> pick(0, nbrs.size());
            std::size_t k = pick(rng);
            y.adhesion[i] = k == nbrs.size() ? i : nbrs[k];
            if (trace) trace->redrawn[i] = 1;
        }

        if (nbrs.empty()) continue;
        auto bits = y.overlap_bits(g, i);
        std::uniform_int_distribution<std::size_t> first(0, nbrs.size() - 1);
        std::size_t b1 = first(rng);
        std::array<std::size_t, 2> chosen{b1, b1};
        std::size_t count = 1;
        if (nbrs.size() > 1) {
            std::uniform_int_distribution<std::size_t> second(0, nbrs.size() - 2);
            std::size_t b2 = second(rng);
            chosen[1] = b2 >= b1 ? b2 + 1 : b2;
            count = 2;
        }
        for (std::size_t c = 0; c < count; ++c) {
            if (unit(rng) < p) {
                bits[chosen[c]] ^= 1;
                if (trace) ++trace->bit_flips;
            }
        }
    }
    return repair(std::move(y), g, cfg.max_memberships);
}

Chromosome reassignment(const Chromosome& x, const InformativenessTable& info, FitnessEvaluator& evaluate,
                        Rng& rng) {
    const Graph& g = evaluate.graph();
    const std::size_t n = g.size();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return info.combined[a] < info.combined[b]; });
    order.resize((n + 19) / 20);

    Chromosome current = x;
    double current_q = evaluate(current);
    for (NodeId i : order) {
        Chromosome best;
        double best_q = current_q;
        for (NodeId j : g.neighbors(i)) {
            if (j == current.adhesion[i]) continue;
            Chromosome candidate = current;
            candidate.adhesion[i] = j;
            candidate = repair(std::move(candidate), g, evaluate.max_memberships());
            double q = evaluate(candidate);
            if (q > best_q) {
                best_q = q;
                best = std::move(candidate);
            }
        }
        if (best_q > current_q) {
            current = std::move(best);
            current_q = best_q;
        }
    }
    return current;
}

RunReport run(const Graph& g, const GAConfig& cfg, const RunObserver& observer) {
    cfg.validate();
    if (g.edge_count() == 0) throw std::invalid_argument("graph has no edges");
    const auto start = std::chrono::steady_clock::now();

    FitnessEvaluator evaluate(g, cfg.max_memberships);
    Population pop = initialize(g, cfg, evaluate);
    if (observer) observer(pop, nullptr);

    RunReport report;
    report.config = cfg;
    report.q_trace.push_back(pop.best_fitness);

    auto track_projection = [&] {
        for (const auto& x : pop.individuals) {
            auto pi = decode_primary(x, g);
            double q = disjoint_modularity(pi, g);
            if (report.best_projection.communities.empty() || q > report.best_projected_q) {
                report.best_projected_q = q;
                report.best_projection = std::move(pi);
            }
        }
    };
    track_projection();

    std::size_t stagnant = 0;
    std::vector<std::size_t> ranking(cfg.population_size);
    for (std::size_t gen = 1; gen <= cfg.generations && stagnant < cfg.stagnation_window; ++gen) {
        const Chromosome& reference = pop.individuals[pop.fittest()];
        InformativenessTable info =
            overall_informativeness(pop.individuals, g, cfg.max_memberships, cfg.lambda, reference);

        std::iota(ranking.begin(), ranking.end(), std::size_t{0});
        std::stable_sort(ranking.begin(), ranking.end(),
                         [&](std::size_t a, std::size_t b) { return pop.fitness[a] > pop.fitness[b]; });

        std::vector<Chromosome> next(cfg.population_size);
        std::vector<double> next_fitness(cfg.population_size);
        for (std::size_t e = 0; e < cfg.elitism_count; ++e) {
            next[e] = pop.individuals[ranking[e]];
            next_fitness[e] = pop.fitness[ranking[e]];
        }

        for_each_slot(cfg.elitism_count, cfg.population_size, cfg.workers, [&](std::size_t slot) {
            Rng rng = slot_rng(cfg.seed, gen, slot);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::size_t a = tournament_select(pop.fitness, cfg.tournament_size, rng);
            std::size_t b = tournament_select(pop.fitness, cfg.tournament_size, rng);
            Chromosome child = unit(rng) < cfg.crossover_rate
                                   ? crossover(pop.individuals[a], pop.individuals[b], g, cfg.max_memberships, rng).first
                                   : pop.individuals[a];
            child = adaptive_mutate(child, g, info, cfg, rng);
            if (unit(rng) < cfg.reassignment_rate) child = reassignment(child, info, evaluate, rng);
            next_fitness[slot] = evaluate(child);
            next[slot] = std::move(child);
        });

        pop.individuals = std::move(next);
        pop.fitness = std::move(next_fitness);
        pop.generation = gen;
        std::size_t top = pop.fittest();
        if (pop.fitness[top] > pop.best_fitness) {
            pop.best = pop.individuals[top];
            pop.best_fitness = pop.fitness[top];
            stagnant = 0;
        } else {
            ++stagnant;
        }
        report.q_trace.push_back(pop.best_fitness);
        report.generations_run = gen;
        track_projection();
        if (observer) observer(pop, &info);
    }

    report.best_chromosome = pop.best;
    report.best_q = pop.best_fitness;
    report.best_cover = decode_cover(pop.best, g, cfg.max_memberships);
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace ocd
