#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "ocd/encoding.hpp"
#include "ocd/graph.hpp"

namespace ocd {

/// Empirical distribution of alleles at one locus. `probabilities` lists the
/// observed alleles only; alleles never seen have probability 0.
struct AlleleDistribution {
    std::vector<double> probabilities;
    std::size_t alphabet_size = 0;

    static AlleleDistribution from_counts(std::span<const std::size_t> counts, std::size_t alphabet_size);
};

/// KL divergence from the uniform distribution over the alphabet,
/// sum_x P(x) log(|X| P(x)), natural log, with 0 log 0 = 0.
/// Throws std::invalid_argument for an empty alphabet.
double locus_kld(const AlleleDistribution& dist);

/// Per-node PINF: locus_kld of the adhesion allele across the population,
/// alphabet Nbs(i) plus the node itself.
std::vector<double> primary_informativeness(std::span<const Chromosome> population, const Graph& g);

/// Per-node KL divergence of the membership count M_i against uniform over
/// 1..K. Throws std::invalid_argument when K < 1.
std::vector<double> membership_kld(std::span<const Chromosome> population, const Graph& g,
                                   std::size_t max_memberships);

/// Bias u_{i,k} for k = 1..M_i, where M_i is taken from `reference`.
///
/// k = 1 scores the adhesion allele, over the individuals adhering to a
/// neighbor, against h = |Nbs(i)| alleles. For k > 1
/// it scores the (k-1)-th foreign overlap target, over the individuals that
/// have one, against h = mean number of neighbors left outside the
/// communities node i already joined. Each value is normalized by log h and
/// clamped to [0, 1]; h <= 1, or no individual to score, yields 1.
std::vector<double> community_bias(std::span<const Chromosome> population, const Graph& g, NodeId i,
                                   std::size_t max_memberships, const Chromosome& reference);

struct InformativenessTable {
    std::vector<double> pinf;
    std::vector<double> oinf;
    std::vector<double> membership_kld;
    /// lambda * KLD_M / log K + (1 - lambda) * oinf, in [0, 1].
    std::vector<double> combined;

    /// Table for tests and operators that want a fixed priority per node.
    static InformativenessTable uniform(std::size_t n, double combined);
};

/// Builds the full table for one generation. OINF is the mean of
/// community_bias(i) for every node.
InformativenessTable overall_informativeness(std::span<const Chromosome> population, const Graph& g,
                                             std::size_t max_memberships, double lambda,
                                             const Chromosome& reference);

/// Tab separated rows: generation, node label, u^P, KLD_M, u^o, combined.
void write_informativeness(std::ostream& out, const Graph& g, const InformativenessTable& table,
                           std::size_t generation);
void write_informativeness_header(std::ostream& out);

}  // namespace ocd
