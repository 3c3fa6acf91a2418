#include "ocd/generators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ocd {

PlantedCover ring_of_cliques(std::size_t cliques, std::size_t clique_size, std::size_t bridge_width) {
    if (cliques < 2) throw std::invalid_argument("ring_of_cliques needs at least 2 cliques");
    if (clique_size < 3) throw std::invalid_argument("ring_of_cliques needs cliques of at least 3 nodes");
    if (bridge_width < 1 || bridge_width > clique_size - 1)
        throw std::invalid_argument("bridge width must lie in [1, clique_size - 1]");

    std::size_t n = cliques * clique_size;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::vector<NodeId>> truth(cliques);

    std::vector<std::size_t> target_positions;
    for (std::size_t p = 0; p + 1 < clique_size; p += 2) target_positions.push_back(p);
    for (std::size_t p = 1; p + 1 < clique_size; p += 2) target_positions.push_back(p);
    target_positions.resize(bridge_width);

    for (std::size_t t = 0; t < cliques; ++t) {
        auto base = static_cast<NodeId>(t * clique_size);
        for (NodeId a = 0; a < clique_size; ++a) {
            truth[t].push_back(base + a);
            for (NodeId b = a + 1; b < clique_size; ++b) edges.emplace_back(base + a, base + b);
        }
        if (t + 1 < cliques) {
            NodeId bridge = base + static_cast<NodeId>(clique_size - 1);
            auto next = static_cast<NodeId>(base + clique_size);
            for (std::size_t p : target_positions) edges.emplace_back(bridge, next + static_cast<NodeId>(p));
            truth[t + 1].push_back(bridge);
        }
    }

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));

    std::vector<CommunityId> primary(n);
    for (std::size_t i = 0; i < n; ++i) primary[i] = static_cast<CommunityId>(i / clique_size);

    Graph g(n, edges, std::move(labels));
    return {std::move(g), Cover(n, std::move(truth), 2, std::move(primary))};
}

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
            if (coin(rng)) edges.emplace_back(a, b);
    return Graph(n, edges);
}

}  // namespace ocd
