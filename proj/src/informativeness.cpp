#include "ocd/informativeness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ocd {

namespace {

// Foreign overlap targets of node i in neighbor order, as honored by extend_cover.
std::vector<NodeId> foreign_targets(const Chromosome& chrom, const DisjointPartition& pi, const Graph& g,
                                    NodeId i, std::size_t max_memberships) {
    std::vector<NodeId> out;
    std::vector<CommunityId> joined{pi.assignment[i]};
    auto bits = chrom.overlap_bits(g, i);
    auto nbrs = g.neighbors(i);
    for (std::size_t b = 0; b < bits.size() && joined.size() < max_memberships; ++b) {
        if (!bits[b]) continue;
        CommunityId c = pi.assignment[nbrs[b]];
        if (std::find(joined.begin(), joined.end(), c) != joined.end()) continue;
        joined.push_back(c);
        out.push_back(nbrs[b]);
    }
    return out;
}

std::size_t neighbors_in(const Graph& g, NodeId i, const DisjointPartition& pi, CommunityId c) {
    std::size_t count = 0;
    for (NodeId j : g.neighbors(i))
        if (pi.assignment[j] == c) ++count;
    return count;
}

// sum_j p_j log(h p_j) / log h over the neighbor counts, clamped to [0, 1].
double normalized_bias(std::span<const std::size_t> counts, std::size_t total, double h) {
    if (h <= 1.0 || total == 0) return 1.0;
    double sum = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        sum += p * std::log(h * p);
    }
    return std::clamp(sum / std::log(h), 0.0, 1.0);
}

std::vector<DisjointPartition> decode_all(std::span<const Chromosome> population, const Graph& g) {
    std::vector<DisjointPartition> out;
    out.reserve(population.size());
    for (const auto& x : population) out.push_back(decode_primary(x, g));
    return out;
}

std::size_t membership_count(const Chromosome& chrom, const DisjointPartition& pi, const Graph& g, NodeId i,
                             std::size_t max_memberships) {
    return 1 + foreign_targets(chrom, pi, g, i, max_memberships).size();
}

std::vector<double> community_bias_decoded(std::span<const Chromosome> population,
                                           std::span<const DisjointPartition> decoded, const Graph& g, NodeId i,
                                           std::size_t max_memberships, std::size_t reference_memberships) {
    auto nbrs = g.neighbors(i);
    std::vector<double> bias;
    bias.reserve(reference_memberships);

    // Self-adhesion is not a neighbor allele; u_{i,1} is conditioned on adhering to a neighbor.
    std::vector<std::size_t> counts(nbrs.size(), 0);
    std::size_t adhering = 0;
    for (const auto& x : population) {
        std::size_t b = g.neighbor_index(i, x.adhesion[i]);
        if (b < nbrs.size()) {
            ++counts[b];
            ++adhering;
        }
    }
    bias.push_back(normalized_bias(counts, adhering, static_cast<double>(nbrs.size())));

    std::vector<std::vector<NodeId>> targets(population.size());
    for (std::size_t r = 0; r < population.size(); ++r)
        targets[r] = foreign_targets(population[r], decoded[r], g, i, max_memberships);

    for (std::size_t k = 2; k <= reference_memberships; ++k) {
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t contributors = 0;
        double eligible_sum = 0.0;
        for (std::size_t r = 0; r < population.size(); ++r) {
            if (targets[r].size() < k - 1) continue;
            const auto& pi = decoded[r];
            std::size_t used = neighbors_in(g, i, pi, pi.assignment[i]);
            for (std::size_t t = 0; t + 2 < k; ++t) used += neighbors_in(g, i, pi, pi.assignment[targets[r][t]]);
            eligible_sum += static_cast<double>(nbrs.size() - used);
            ++counts[g.neighbor_index(i, targets[r][k - 2])];
            ++contributors;
        }
        double h = contributors == 0 ? 0.0 : eligible_sum / static_cast<double>(contributors);
        bias.push_back(normalized_bias(counts, contributors, h));
    }
    return bias;
}

}  // namespace

AlleleDistribution AlleleDistribution::from_counts(std::span<const std::size_t> counts, std::size_t alphabet_size) {
    AlleleDistribution d;
    d.alphabet_size = alphabet_size;
    std::size_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw std::invalid_argument("allele distribution needs at least one observation");
    for (auto c : counts)
        if (c > 0) d.probabilities.push_back(static_cast<double>(c) / static_cast<double>(total));
    return d;
}

double locus_kld(const AlleleDistribution& dist) {
    if (dist.alphabet_size == 0) throw std::invalid_argument("allele alphabet is empty");
    const double size = static_cast<double>(dist.alphabet_size);
    double kld = 0.0;
    for (double p : dist.probabilities)
        if (p > 0.0) kld += p * std::log(size * p);
    return std::max(kld, 0.0);
}

std::vector<double> primary_informativeness(std::span<const Chromosome> population, const Graph& g) {
    if (population.empty()) throw std::invalid_argument("population is empty");
    std::vector<double> out(g.size());
    for (NodeId i = 0; i < g.size(); ++i) {
        // Slot `degree` counts self-adhesion.
        std::vector<std::size_t> counts(g.degree(i) + 1, 0);
        for (const auto& x : population) {
            NodeId a = x.adhesion[i];
            ++counts[a == i ? g.degree(i) : g.neighbor_index(i, a)];
        }
        out[i] = locus_kld(AlleleDistribution::from_counts(counts, counts.size()));
    }
    return out;
}

std::vector<double> membership_kld(std::span<const Chromosome> population, const Graph& g,
                                   std::size_t max_memberships) {
    if (max_memberships < 1) throw std::invalid_argument("maximum memberships must be at least 1");
    if (population.empty()) throw std::invalid_argument("population is empty");
    auto decoded = decode_all(population, g);
    std::vector<double> out(g.size());
    std::vector<std::size_t> counts(max_memberships);
    for (NodeId i = 0; i < g.size(); ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t r = 0; r < population.size(); ++r)
            ++counts[membership_count(population[r], decoded[r], g, i, max_memberships) - 1];
        out[i] = locus_kld(AlleleDistribution::from_counts(counts, max_memberships));
    }
    return out;
}

std::vector<double> community_bias(std::span<const Chromosome> population, const Graph& g, NodeId i,
                                   std::size_t max_memberships, const Chromosome& reference) {
    if (population.empty()) throw std::invalid_argument("population is empty");
    auto decoded = decode_all(population, g);
    auto ref_pi = decode_primary(reference, g);
    return community_bias_decoded(population, decoded, g, i, max_memberships,
                                  membership_count(reference, ref_pi, g, i, max_memberships));
}

InformativenessTable InformativenessTable::uniform(std::size_t n, double combined) {
    InformativenessTable t;
    t.pinf.assign(n, 0.0);
    t.oinf.assign(n, combined);
    t.membership_kld.assign(n, 0.0);
    t.combined.assign(n, combined);
    return t;
}

InformativenessTable overall_informativeness(std::span<const Chromosome> population, const Graph& g,
                                             std::size_t max_memberships, double lambda,
                                             const Chromosome& reference) {
    if (population.empty()) throw std::invalid_argument("population is empty");
    if (max_memberships < 1) throw std::invalid_argument("maximum memberships must be at least 1");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");

    InformativenessTable t;
    t.pinf = primary_informativeness(population, g);
    t.membership_kld = membership_kld(population, g, max_memberships);

    auto decoded = decode_all(population, g);
    auto ref_pi = decode_primary(reference, g);
    const double log_k = std::log(static_cast<double>(max_memberships));

    t.oinf.resize(g.size());
    t.combined.resize(g.size());
    for (NodeId i = 0; i < g.size(); ++i) {
        std::size_t m_ref = membership_count(reference, ref_pi, g, i, max_memberships);
        auto bias = community_bias_decoded(population, decoded, g, i, max_memberships, m_ref);
        double sum = 0.0;
        for (double u : bias) sum += u;
        t.oinf[i] = sum / static_cast<double>(bias.size());

        double membership_term = max_memberships == 1 ? 1.0 : t.membership_kld[i] / log_k;
        t.combined[i] = std::clamp(lambda * membership_term + (1.0 - lambda) * t.oinf[i], 0.0, 1.0);
    }
    return t;
}

void write_informativeness_header(std::ostream& out) {
    out << "generation\tnode\tpinf\tkld_m\toinf\tcombined\n";
}

void write_informativeness(std::ostream& out, const Graph& g, const InformativenessTable& table,
                           std::size_t generation) {
    for (NodeId i = 0; i < g.size(); ++i)
        out << generation << '\t' << g.label(i) << '\t' << table.pinf[i] << '\t' << table.membership_kld[i] << '\t'
            << table.oinf[i] << '\t' << table.combined[i] << '\n';
}

}  // namespace ocd
