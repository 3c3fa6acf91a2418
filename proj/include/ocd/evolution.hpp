#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ocd/encoding.hpp"
#include "ocd/graph.hpp"
#include "ocd/informativeness.hpp"

namespace ocd {

struct GAConfig {
    std::size_t population_size = 100;
    std::size_t generations = 500;
    std::size_t stagnation_window = 100;
    std::size_t elitism_count = 2;
    std::size_t tournament_size = 3;
    double crossover_rate = 0.8;
    double p_min = 0.02;
    double p_max = 0.3;
    double p_overlap_init = 0.05;
    std::size_t max_memberships = 2;
    double lambda = 0.5;
    /// Chance that an offspring goes through the reassignment operator.
    double reassignment_rate = 0.2;
    std::uint64_t seed = 0;
    /// Threads used to build offspring; results do not depend on it.
    std::size_t workers = 1;

    /// Throws std::invalid_argument on an out-of-range field.
    void validate() const;
};

/// Random stream for one (generation, slot) pair, independent of scheduling.
Rng slot_rng(std::uint64_t seed, std::uint64_t generation, std::uint64_t slot);

/// Overlapping modularity of a chromosome's decoded cover, memoized on the
/// chromosome. Safe to share between worker threads.
class FitnessEvaluator {
public:
    FitnessEvaluator(const Graph& g, std::size_t max_memberships, std::size_t cache_limit = 1 << 18);

    double operator()(const Chromosome& chrom);

    const Graph& graph() const noexcept { return *graph_; }
    std::size_t max_memberships() const noexcept { return max_memberships_; }

private:
    const Graph* graph_;
    std::size_t max_memberships_;
    std::size_t cache_limit_;
    std::mutex mutex_;
    std::unordered_map<Chromosome, double, ChromosomeHash> cache_;
};

struct Population {
    std::vector<Chromosome> individuals;
    std::vector<double> fitness;
    std::size_t generation = 0;
    Chromosome best;
    double best_fitness = 0.0;

    /// Index of the fittest individual; ties go to the smaller chromosome so
    /// the choice does not depend on population order.
    std::size_t fittest() const;
};

Population initialize(const Graph& g, const GAConfig& cfg, FitnessEvaluator& evaluate);

/// Draws `tournament_size` indices uniformly with replacement and returns the
/// fittest, preferring the lower index on ties.
std::size_t tournament_select(std::span<const double> fitness, std::size_t tournament_size, Rng& rng);

/// Uniform node-block crossover: where mask[i] is set, the children exchange
/// node i's adhesion allele and overlap bits. Children are repaired.
std::pair<Chromosome, Chromosome> crossover_with_mask(const Chromosome& a, const Chromosome& b, const Graph& g,
                                                      std::size_t max_memberships,
                                                      std::span<const std::uint8_t> mask);
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, const Graph& g,
                                            std::size_t max_memberships, Rng& rng);

/// p_min + (p_max - p_min) * (1 - combined)
double mutation_probability(double combined, const GAConfig& cfg);

/// What adaptive_mutate did, for tests and diagnostics.
struct MutationTrace {
    std::vector<std::uint8_t> redrawn;
    std::size_t bit_flips = 0;
};

/// Per node i with probability p_i redraws the adhesion allele uniformly from
/// Nbs(i) plus i; then picks up to two distinct overlap bits of i and flips
/// each with probability p_i. The result is repaired.
Chromosome adaptive_mutate(const Chromosome& x, const Graph& g, const InformativenessTable& info,
                           const GAConfig& cfg, Rng& rng, MutationTrace* trace = nullptr);

/// Greedy hill climb on the ceil(n/20) least informative nodes (ties broken
/// at random): each in turn takes the neighbor adhesion with the best
/// fitness, if it strictly beats the current one.
Chromosome reassignment(const Chromosome& x, const InformativenessTable& info, FitnessEvaluator& evaluate,
                        Rng& rng);

struct RunReport {
    Cover best_cover;
    Chromosome best_chromosome;
    double best_q = 0.0;
    /// Best fitness after initialization, then after every generation.
    std::vector<double> q_trace;
    /// Primary partition with the highest disjoint modularity over every
    /// individual seen, first found wins ties.
    DisjointPartition best_projection;
    double best_projected_q = 0.0;
    std::size_t generations_run = 0;
    double wall_time_s = 0.0;
    GAConfig config;
};

/// Called once after initialization (table null) and once per generation
/// with the table that generation bred from.
using RunObserver = std::function<void(const Population&, const InformativenessTable*)>;

RunReport run(const Graph& g, const GAConfig& cfg, const RunObserver& observer = {});

}  // namespace ocd
