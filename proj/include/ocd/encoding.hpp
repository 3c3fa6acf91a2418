#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ocd/graph.hpp"

namespace ocd {

class InvalidChromosome : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidCover : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Rng = std::mt19937_64;

/// Two-segment genome over a fixed graph.
///
/// `adhesion[i]` is the neighbor node i adheres to in the primary partition,
/// or i itself. `overlap` is laid out like the graph's flat adjacency array:
/// bit `overlap[g.offset(i) + b]` set means node i also adheres to its b-th
/// neighbor (ascending id order), joining that neighbor's primary community.
struct Chromosome {
    std::vector<NodeId> adhesion;
    std::vector<std::uint8_t> overlap;

    std::span<std::uint8_t> overlap_bits(const Graph& g, NodeId i) {
        return {overlap.data() + g.offset(i), g.degree(i)};
    }
    std::span<const std::uint8_t> overlap_bits(const Graph& g, NodeId i) const {
        return {overlap.data() + g.offset(i), g.degree(i)};
    }

    bool operator==(const Chromosome&) const = default;
};

struct ChromosomeHash {
    std::size_t operator()(const Chromosome& c) const noexcept;
};

/// Every node self-adhering, no overlap bits: the all-singletons genome.
Chromosome singleton_chromosome(const Graph& g);

/// Throws InvalidChromosome unless segment sizes match g and every adhesion
/// allele is the node itself or one of its neighbors.
void validate(const Chromosome& chrom, const Graph& g);

/// Disjoint division of the node set; community ids ordered by smallest member.
struct DisjointPartition {
    std::vector<CommunityId> assignment;
    std::vector<std::vector<NodeId>> communities;

    std::size_t size() const noexcept { return communities.size(); }
    bool operator==(const DisjointPartition&) const = default;

    /// Canonicalizes an arbitrary labeling (labels need not be dense).
    static DisjointPartition from_assignment(std::span<const std::uint32_t> labels);
};

/// Overlapping partition.
///
/// Communities are stored in canonical order (lexicographic on their sorted
/// member lists, i.e. by smallest member first). `primary[i]` is the one
/// membership of node i that survives projection to a disjoint partition.
class Cover {
public:
    Cover() = default;

    /// Builds and validates a cover. `primary` indexes into `communities` as
    /// given; when empty, each node's primary membership is its lowest
    /// canonical community id. Throws InvalidCover.
    Cover(std::size_t n, std::vector<std::vector<NodeId>> communities, std::size_t max_memberships,
          std::vector<CommunityId> primary = {});

    static Cover from_partition(const DisjointPartition& pi, std::size_t max_memberships = 1);

    std::size_t node_count() const noexcept { return memberships_.size(); }
    std::size_t size() const noexcept { return communities_.size(); }
    std::size_t max_memberships() const noexcept { return max_memberships_; }

    const std::vector<std::vector<NodeId>>& communities() const noexcept { return communities_; }
    const std::vector<NodeId>& community(CommunityId c) const { return communities_[c]; }
    const std::vector<CommunityId>& memberships(NodeId i) const { return memberships_[i]; }
    std::size_t membership_count(NodeId i) const { return memberships_[i].size(); }
    CommunityId primary(NodeId i) const { return primary_[i]; }

    std::vector<NodeId> overlap_nodes() const;

    /// Drops every non-primary membership.
    DisjointPartition project_primary() const;

    /// Same communities, independent of primary choice and K.
    bool same_communities(const Cover& other) const { return communities_ == other.communities_; }

    bool operator==(const Cover&) const = default;

private:
    std::vector<std::vector<NodeId>> communities_;
    std::vector<std::vector<CommunityId>> memberships_;
    std::vector<CommunityId> primary_;
    std::size_t max_memberships_ = 1;
};

/// Primary partition: connected components of the adhesion links {i, adhesion[i]}.
DisjointPartition decode_primary(const Chromosome& chrom, const Graph& g);

/// Extends the primary partition along overlap bits. Bits inside the node's
/// own primary community or into an already joined community are ignored;
/// bits are consumed in ascending neighbor order until the node holds
/// `max_memberships` memberships.
Cover extend_cover(const Chromosome& chrom, const DisjointPartition& pi, const Graph& g,
                   std::size_t max_memberships);

inline Cover decode_cover(const Chromosome& chrom, const Graph& g, std::size_t max_memberships) {
    return extend_cover(chrom, decode_primary(chrom, g), g, max_memberships);
}

/// Clears every overlap bit that extend_cover would ignore. The decoded cover
/// is unchanged; repair is idempotent.
Chromosome repair(Chromosome chrom, const Graph& g, std::size_t max_memberships);

/// Adhesion drawn uniformly from the neighbors (self for isolated nodes),
/// each overlap bit set with probability `p_overlap`, then repaired.
Chromosome random_chromosome(const Graph& g, double p_overlap, std::size_t max_memberships, Rng& rng);

/// Chromosome whose decoded cover equals `cover`, when one exists: every
/// community must induce a connected subgraph on its primary members and
/// every extra membership must be reachable through a neighbor. Throws
/// InvalidCover otherwise.
Chromosome encode_cover(const Cover& cover, const Graph& g);

}  // namespace ocd
