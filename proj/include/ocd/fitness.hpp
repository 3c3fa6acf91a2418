#pragma once

#include <utility>
#include <vector>

#include "ocd/encoding.hpp"
#include "ocd/graph.hpp"

namespace ocd {

/// Belonging coefficients S_ic, stored per node as (community, weight) pairs
/// aligned with Cover::memberships(i). Rows sum to 1.
struct BelongingMatrix {
    std::vector<std::vector<std::pair<CommunityId, double>>> rows;

    /// S_ic, zero when i is not a member of c.
    double at(NodeId i, CommunityId c) const;
};

/// Uniform split: S_ic = 1 / M_i for each membership of node i.
BelongingMatrix belonging_coefficients(const Cover& cover);

/// Overlapping modularity
///
///   Q = 1/(2L) * sum_c (e_in(c) - e_exp(c))
///   e_in(c)  = sum over ordered pairs i, j in c of S_ic S_jc A_ij
///   e_exp(c) = (e_in(c) + sum_{i in c, j not in c} S_ic A_ij)^2 / (2L)
///
/// Community terms are summed in canonical community order, so the result
/// does not depend on how the cover was built. Throws InvalidCover for an
/// empty community or a cover over a different node count, and
/// std::invalid_argument for an edgeless graph.
double overlapping_modularity(const Cover& cover, const Graph& g);
double overlapping_modularity(const Cover& cover, const BelongingMatrix& s, const Graph& g);

/// Newman-Girvan modularity of a disjoint partition.
double disjoint_modularity(const DisjointPartition& pi, const Graph& g);

}  // namespace ocd
