#pragma once

#include <cstddef>

#include "ocd/encoding.hpp"
#include "ocd/graph.hpp"

namespace ocd {

/// A synthetic network together with its ground-truth cover.
struct PlantedCover {
    Graph graph;
    Cover truth;
};

/// Chain of `cliques` complete subgraphs of `clique_size` nodes each.
///
/// The last node of clique t is the bridge into clique t+1: it gains
/// `bridge_width` edges into the next clique and belongs to both cliques in
/// the ground truth. Targets are taken from the next clique's members other
/// than its own bridge node, even positions first (members 1, 3, ... then
/// 2, 4, ... in 1-based order). Labels are 1-based, so ring_of_cliques(3, 4)
/// has bridges 4-5, 4-7 and 8-9, 8-11 and truth {1..4}, {4..8}, {8..12}.
PlantedCover ring_of_cliques(std::size_t cliques, std::size_t clique_size, std::size_t bridge_width = 2);

/// G(n, p) random graph; labels are 0-based ids. May contain isolated nodes.
Graph erdos_renyi(std::size_t n, double p, Rng& rng);

}  // namespace ocd
