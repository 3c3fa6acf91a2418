#include "ocd/encoding.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

namespace ocd {

namespace {

NodeId find_root(std::vector<NodeId>& parent, NodeId x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

// Walks node i's overlap bits in neighbor order, calling keep(b, community)
// for each bit extend_cover honors and drop(b) for every other set bit.
template <typename Keep, typename Drop>
void scan_overlap(const Chromosome& chrom, const DisjointPartition& pi, const Graph& g, NodeId i,
                  std::size_t max_memberships, Keep&& keep, Drop&& drop) {
    auto bits = chrom.overlap_bits(g, i);
    auto nbrs = g.neighbors(i);
    std::vector<CommunityId> joined{pi.assignment[i]};
    for (std::size_t b = 0; b < bits.size(); ++b) {
        if (!bits[b]) continue;
        CommunityId c = pi.assignment[nbrs[b]];
        bool useless = joined.size() >= max_memberships ||
                       std::find(joined.begin(), joined.end(), c) != joined.end();
        if (useless) {
            drop(b);
        } else {
            joined.push_back(c);
            keep(b, c);
        }
    }
}

}  // namespace

std::size_t ChromosomeHash::operator()(const Chromosome& c) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (NodeId x : c.adhesion) {
        h ^= x;
        h *= 1099511628211ULL;
    }
    for (std::uint8_t b : c.overlap) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

Chromosome singleton_chromosome(const Graph& g) {
    Chromosome c;
    c.adhesion.resize(g.size());
    std::iota(c.adhesion.begin(), c.adhesion.end(), NodeId{0});
    c.overlap.assign(g.adjacency_size(), 0);
    return c;
}

void validate(const Chromosome& chrom, const Graph& g) {
    if (chrom.adhesion.size() != g.size())
        throw InvalidChromosome("adhesion segment has " + std::to_string(chrom.adhesion.size()) +
                                " loci, graph has " + std::to_string(g.size()) + " nodes");
    if (chrom.overlap.size() != g.adjacency_size())
        throw InvalidChromosome("overlap segment size does not match adjacency size");
    for (NodeId i = 0; i < g.size(); ++i) {
        NodeId a = chrom.adhesion[i];
        if (a != i && !g.has_edge(i, a))
            throw InvalidChromosome("node " + g.label(i) + " adheres to non-neighbor " +
                                    (a < g.size() ? g.label(a) : std::to_string(a)));
    }
}

DisjointPartition DisjointPartition::from_assignment(std::span<const std::uint32_t> labels) {
    DisjointPartition pi;
    pi.assignment.resize(labels.size());
    std::unordered_map<std::uint32_t, CommunityId> ids;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = ids.try_emplace(labels[i], static_cast<CommunityId>(pi.communities.size()));
        if (inserted) pi.communities.emplace_back();
        pi.assignment[i] = it->second;
        pi.communities[it->second].push_back(static_cast<NodeId>(i));
    }
    return pi;
}

Cover::Cover(std::size_t n, std::vector<std::vector<NodeId>> communities, std::size_t max_memberships,
             std::vector<CommunityId> primary)
    : max_memberships_(max_memberships) {
    if (max_memberships < 1) throw InvalidCover("maximum memberships must be at least 1");
    if (!primary.empty() && primary.size() != n) throw InvalidCover("primary assignment size mismatch");

    for (auto& members : communities) {
        if (members.empty()) throw InvalidCover("empty community");
        std::sort(members.begin(), members.end());
        if (std::adjacent_find(members.begin(), members.end()) != members.end())
            throw InvalidCover("community lists a node twice");
        if (members.back() >= n) throw InvalidCover("community member out of range");
    }

    std::vector<CommunityId> order(communities.size());
    std::iota(order.begin(), order.end(), CommunityId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](CommunityId a, CommunityId b) { return communities[a] < communities[b]; });
    std::vector<CommunityId> rank(order.size());
    for (CommunityId r = 0; r < order.size(); ++r) rank[order[r]] = r;

    communities_.reserve(order.size());
    for (CommunityId old : order) communities_.push_back(std::move(communities[old]));

    memberships_.assign(n, {});
    for (CommunityId c = 0; c < communities_.size(); ++c)
        for (NodeId i : communities_[c]) memberships_[i].push_back(c);

    primary_.resize(n);
    for (NodeId i = 0; i < n; ++i) {
        const auto& m = memberships_[i];
        if (m.empty()) throw InvalidCover("node " + std::to_string(i) + " belongs to no community");
        if (m.size() > max_memberships_)
            throw InvalidCover("node " + std::to_string(i) + " has " + std::to_string(m.size()) +
                               " memberships, maximum is " + std::to_string(max_memberships_));
        if (primary.empty()) {
            primary_[i] = m.front();
        } else {
            if (primary[i] >= rank.size()) throw InvalidCover("primary community out of range");
            primary_[i] = rank[primary[i]];
            if (std::find(m.begin(), m.end(), primary_[i]) == m.end())
                throw InvalidCover("primary community does not contain its node");
        }
    }

    // Projection to primaries must leave no community empty.
    std::vector<bool> has_primary(communities_.size(), false);
    for (CommunityId c : primary_) has_primary[c] = true;
    if (!primary.empty() && std::find(has_primary.begin(), has_primary.end(), false) != has_primary.end())
        throw InvalidCover("a community has no primary member");
}

Cover Cover::from_partition(const DisjointPartition& pi, std::size_t max_memberships) {
    return Cover(pi.assignment.size(), pi.communities, max_memberships,
                 std::vector<CommunityId>(pi.assignment.begin(), pi.assignment.end()));
}

std::vector<NodeId> Cover::overlap_nodes() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < memberships_.size(); ++i)
        if (memberships_[i].size() > 1) out.push_back(i);
    return out;
}

DisjointPartition Cover::project_primary() const {
    return DisjointPartition::from_assignment(primary_);
}

DisjointPartition decode_primary(const Chromosome& chrom, const Graph& g) {
    validate(chrom, g);
    std::vector<NodeId> parent(g.size());
    std::iota(parent.begin(), parent.end(), NodeId{0});
    for (NodeId i = 0; i < g.size(); ++i) {
        NodeId a = find_root(parent, i);
        NodeId b = find_root(parent, chrom.adhesion[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::uint32_t> roots(g.size());
    for (NodeId i = 0; i < g.size(); ++i) roots[i] = find_root(parent, i);
    return DisjointPartition::from_assignment(roots);
}

Cover extend_cover(const Chromosome& chrom, const DisjointPartition& pi, const Graph& g,
                   std::size_t max_memberships) {
    std::vector<std::vector<NodeId>> communities = pi.communities;
    for (NodeId i = 0; i < g.size(); ++i) {
        scan_overlap(
            chrom, pi, g, i, max_memberships,
            [&](std::size_t, CommunityId c) { communities[c].push_back(i); }, [](std::size_t) {});
    }
    return Cover(g.size(), std::move(communities), max_memberships,
                 std::vector<CommunityId>(pi.assignment.begin(), pi.assignment.end()));
}

Chromosome repair(Chromosome chrom, const Graph& g, std::size_t max_memberships) {
    auto pi = decode_primary(chrom, g);
    for (NodeId i = 0; i < g.size(); ++i) {
        auto bits = chrom.overlap_bits(g, i);
        scan_overlap(
            chrom, pi, g, i, max_memberships, [](std::size_t, CommunityId) {},
            [&](std::size_t b) { bits[b] = 0; });
    }
    return chrom;
}

Chromosome random_chromosome(const Graph& g, double p_overlap, std::size_t max_memberships, Rng& rng) {
    if (!(p_overlap >= 0.0 && p_overlap <= 1.0))
        throw std::invalid_argument("overlap probability must lie in [0, 1]");
    Chromosome c;
    c.adhesion.resize(g.size());
    for (NodeId i = 0; i < g.size(); ++i) {
        auto nbrs = g.neighbors(i);
        if (nbrs.empty()) {
            c.adhesion[i] = i;
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
            c.adhesion[i] = nbrs[pick(rng)];
        }
    }
    c.overlap.assign(g.adjacency_size(), 0);
    std::bernoulli_distribution coin(p_overlap);
    for (auto& bit : c.overlap) bit = coin(rng) ? 1 : 0;
    return repair(std::move(c), g, max_memberships);
}

Chromosome encode_cover(const Cover& cover, const Graph& g) {
    if (cover.node_count() != g.size()) throw InvalidCover("cover and graph disagree on node count");
    Chromosome chrom = singleton_chromosome(g);

    std::vector<bool> visited(g.size(), false);
    for (NodeId root = 0; root < g.size(); ++root) {
        if (visited[root]) continue;
        CommunityId c = cover.primary(root);
        visited[root] = true;
        std::queue<NodeId> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            NodeId u = frontier.front();
            frontier.pop();
            for (NodeId v : g.neighbors(u)) {
                if (visited[v] || cover.primary(v) != c) continue;
                visited[v] = true;
                chrom.adhesion[v] = u;
                frontier.push(v);
            }
        }
    }

    for (NodeId i = 0; i < g.size(); ++i) {
        auto bits = chrom.overlap_bits(g, i);
        auto nbrs = g.neighbors(i);
        for (CommunityId c : cover.memberships(i)) {
            if (c == cover.primary(i)) continue;
            auto hit = std::find_if(nbrs.begin(), nbrs.end(),
                                    [&](NodeId j) { return cover.primary(j) == c; });
            if (hit == nbrs.end())
                throw InvalidCover("node " + g.label(i) + " joins a community with no adjacent primary member");
            bits[static_cast<std::size_t>(hit - nbrs.begin())] = 1;
        }
    }

    if (!decode_cover(chrom, g, cover.max_memberships()).same_communities(cover))
        throw InvalidCover("cover has a primary community that is not connected");
    return chrom;
}

}  // namespace ocd
