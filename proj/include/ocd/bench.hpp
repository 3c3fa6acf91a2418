#pragma once

#include <cstddef>
#include <string>

#include "ocd/encoding.hpp"
#include "ocd/graph.hpp"

namespace ocd {

struct SimilarityScore {
    double value = 0.0;
    std::string method = "overlapping-nmi";
};

/// Normalized mutual information between two covers, using the binary
/// membership-variable formulation:
///
///   * each community X_k is a binary variable over nodes, H(X_k) its entropy
///     (base 2, 0 log 0 = 0);
///   * H(X_k | Y) is the smallest H(X_k | Y_l) over communities Y_l whose
///     joint satisfies h(P11) + h(P00) > h(P01) + h(P10), or H(X_k) when no
///     Y_l qualifies;
///   * N(X | Y) averages H(X_k | Y) / H(X_k) over k, counting 0 when
///     H(X_k) = 0;
///   * NMI = 1 - (N(X | Y) + N(Y | X)) / 2, clamped to [0, 1].
///
/// Symmetric, and invariant under community relabeling. Throws
/// std::invalid_argument when the covers span different node counts.
SimilarityScore overlapping_nmi(const Cover& a, const Cover& b);

struct OracleResult {
    Cover cover;
    double q = 0.0;
    std::size_t covers_evaluated = 0;
};

/// Agglomerative modularity merging from singletons: repeatedly joins the
/// pair with the largest positive gain (ties to the lowest pair of ids)
/// until no merge improves Q. `q` is disjoint_modularity of the result.
OracleResult greedy_baseline(const Graph& g);

inline constexpr std::size_t kBruteForceMaxNodes = 10;

/// Exhaustive search for the cover with the largest overlapping modularity.
///
/// Enumerates set partitions of the nodes as the primary partition and, for
/// each, every way of giving nodes up to K-1 extra memberships. Two switches
/// narrow the space to covers a chromosome can encode:
///
///   * `connected_primaries` skips partitions with a block that is not
///     connected in the graph;
///   * `prune_nonadjacent` limits extra memberships to communities that hold
///     a neighbor of the node.
///
/// Either switch can lower the optimum: with S = 1/M, duplicated or remote
/// memberships sometimes raise Q. Ties (within 1e-12) resolve to the
/// lexicographically smallest cover. Throws std::invalid_argument above
/// kBruteForceMaxNodes nodes, or above 6 nodes without pruning.
OracleResult brute_force_best(const Graph& g, std::size_t max_memberships, bool prune_nonadjacent = true,
                              bool connected_primaries = true);

}  // namespace ocd
