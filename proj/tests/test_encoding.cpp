#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ocd/encoding.hpp"
#include "ocd/generators.hpp"
#include "oracles.hpp"

using namespace ocd;

namespace {

using Sets = std::vector<std::vector<NodeId>>;

Chromosome with_adhesion(const Graph& g, const std::vector<int>& one_based) {
    Chromosome c = singleton_chromosome(g);
    for (std::size_t i = 0; i < one_based.size(); ++i) c.adhesion[i] = static_cast<NodeId>(one_based[i] - 1);
    return c;
}

void set_bit(Chromosome& c, const Graph& g, NodeId from, NodeId to) {
    c.overlap_bits(g, from)[g.neighbor_index(from, to)] = 1;
}

bool bit(const Chromosome& c, const Graph& g, NodeId from, NodeId to) {
    return c.overlap_bits(g, from)[g.neighbor_index(from, to)] != 0;
}

// Node 0 is joined to 1, 2, 3, each of which sits in a separate triangle.
Graph three_wings() {
    return testing::graph_from_one_based(
        10, {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {5, 6}, {3, 7}, {3, 8}, {7, 8}, {4, 9}, {4, 10}, {9, 10}});
}

Chromosome three_wings_all_bits(const Graph& g) {
    // Wings {1,4,5}, {2,6,7}, {3,8,9} as 0-based; node 0 alone.
    Chromosome c = with_adhesion(g, {1, 5, 7, 9, 6, 2, 8, 3, 10, 4});
    for (NodeId j : g.neighbors(0)) set_bit(c, g, 0, j);
    return c;
}

}  // namespace

TEST_CASE("self adhesion decodes to singletons") {
    Graph g = testing::two_triangles();
    auto pi = decode_primary(singleton_chromosome(g), g);
    CHECK(pi.size() == 6);
    for (NodeId i = 0; i < 6; ++i) CHECK(pi.communities[i] == std::vector<NodeId>{i});
}

TEST_CASE("triangle cycles decode to the two triangles") {
    Graph g = testing::two_triangles();
    auto pi = decode_primary(with_adhesion(g, {2, 3, 1, 5, 6, 4}), g);
    CHECK(pi.communities == Sets{{0, 1, 2}, {3, 4, 5}});
    CHECK(pi.assignment == std::vector<CommunityId>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("ring chromosome decodes to the disjoint and overlapping covers") {
    auto pc = ring_of_cliques(3, 4);
    const Graph& g = pc.graph;
    Chromosome c = with_adhesion(g, {2, 3, 4, 3, 6, 7, 8, 7, 10, 11, 12, 11});
    auto pi = decode_primary(c, g);
    CHECK(pi.communities == Sets{{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}});

    Cover disjoint = extend_cover(c, pi, g, 2);
    CHECK(disjoint.communities() == pi.communities);
    for (NodeId i = 0; i < g.size(); ++i) CHECK(disjoint.membership_count(i) == 1);

    set_bit(c, g, 3, 6);
    set_bit(c, g, 7, 8);
    Cover cover = decode_cover(c, g, 2);
    CHECK(cover.communities() == pc.truth.communities());
    CHECK(cover.membership_count(3) == 2);
    CHECK(cover.membership_count(7) == 2);
    CHECK(cover.overlap_nodes() == std::vector<NodeId>{3, 7});
    CHECK(cover == pc.truth);
    CHECK(cover.project_primary() == pi);
}

TEST_CASE("invalid adhesion is rejected") {
    Graph g = testing::two_triangles();
    Chromosome c = singleton_chromosome(g);
    c.adhesion[0] = 4;
    CHECK_THROWS_AS(decode_primary(c, g), InvalidChromosome);
    CHECK_THROWS_AS(validate(c, g), InvalidChromosome);
    Chromosome short_overlap = singleton_chromosome(g);
    short_overlap.overlap.pop_back();
    CHECK_THROWS_AS(validate(short_overlap, g), InvalidChromosome);
}

TEST_CASE("two bits into one foreign community add one membership") {
    Graph g = testing::two_triangles();
    // Node 3 (1-based) alone; the others form {1,2} and {4,5,6}.
    Chromosome c = with_adhesion(g, {2, 1, 3, 5, 6, 4});
    set_bit(c, g, 2, 0);
    set_bit(c, g, 2, 1);
    Cover cover = decode_cover(c, g, 3);
    CHECK(cover.membership_count(2) == 2);

    Chromosome fixed = repair(c, g, 3);
    CHECK(bit(fixed, g, 2, 0));
    CHECK_FALSE(bit(fixed, g, 2, 1));
    CHECK(decode_cover(fixed, g, 3) == cover);
}

TEST_CASE("repair clears bits inside the primary community") {
    Graph g = testing::two_triangles();
    Chromosome c = with_adhesion(g, {2, 3, 1, 5, 6, 4});
    set_bit(c, g, 1, 2);
    Chromosome fixed = repair(c, g, 2);
    CHECK_FALSE(bit(fixed, g, 1, 2));
    CHECK(fixed == with_adhesion(g, {2, 3, 1, 5, 6, 4}));
}

TEST_CASE("repair leaves a bit-free chromosome unchanged") {
    Graph g = testing::two_triangles();
    Chromosome c = with_adhesion(g, {2, 3, 1, 5, 6, 4});
    CHECK(repair(c, g, 2) == c);
}

TEST_CASE("repair keeps the lowest-order foreign bits up to the cap") {
    Graph g = three_wings();
    Chromosome c = three_wings_all_bits(g);
    REQUIRE(decode_primary(c, g).size() == 4);

    Chromosome k3 = repair(c, g, 3);
    CHECK(bit(k3, g, 0, 1));
    CHECK(bit(k3, g, 0, 2));
    CHECK_FALSE(bit(k3, g, 0, 3));
    CHECK(decode_cover(k3, g, 3).membership_count(0) == 3);

    Chromosome k2 = repair(c, g, 2);
    CHECK(bit(k2, g, 0, 1));
    CHECK_FALSE(bit(k2, g, 0, 2));
    CHECK_FALSE(bit(k2, g, 0, 3));

    Chromosome k1 = repair(c, g, 1);
    CHECK(std::all_of(k1.overlap.begin(), k1.overlap.end(), [](auto b) { return b == 0; }));
}

TEST_CASE("repair is idempotent and preserves the decoded cover") {
    Rng rng(17);
    auto corpus = testing::small_graph_corpus();
    for (const Graph& g : corpus) {
        for (std::size_t k = 1; k <= 3; ++k) {
            for (int trial = 0; trial < 20; ++trial) {
                Chromosome c = singleton_chromosome(g);
                for (NodeId i = 0; i < g.size(); ++i) {
                    auto nbrs = g.neighbors(i);
                    std::uniform_int_distribution<std::size_t> pick(0, nbrs.size());
                    std::size_t b = pick(rng);
                    c.adhesion[i] = b == nbrs.size() ? i : nbrs[b];
                }
                std::bernoulli_distribution coin(0.5);
                for (auto& bit_value : c.overlap) bit_value = coin(rng);
                Chromosome once = repair(c, g, k);
                CHECK(repair(once, g, k) == once);
                CHECK(decode_cover(once, g, k) == decode_cover(c, g, k));
            }
        }
    }
}

TEST_CASE("zero overlap probability yields disjoint covers") {
    Graph g = testing::karate();
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Cover cover = decode_cover(random_chromosome(g, 0.0, 2, rng), g, 2);
        CHECK(cover.overlap_nodes().empty());
    }
}

TEST_CASE("isolated nodes always self-adhere") {
    Graph g(4, {{0, 1}, {1, 2}});
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) CHECK(random_chromosome(g, 0.5, 2, rng).adhesion[3] == 3);
}

TEST_CASE("random chromosome is reproducible and valid") {
    Graph g = testing::karate();
    Rng a(21), b(21);
    Chromosome x = random_chromosome(g, 0.1, 2, a);
    CHECK(x == random_chromosome(g, 0.1, 2, b));
    CHECK_NOTHROW(validate(x, g));
    CHECK(repair(x, g, 2) == x);
    for (NodeId i = 0; i < g.size(); ++i) CHECK(x.adhesion[i] != i);
    CHECK_THROWS_AS(random_chromosome(g, 1.5, 2, a), std::invalid_argument);
}

TEST_CASE("encoding a decoded cover decodes back to it") {
    Rng rng(29);
    for (const Graph& g : testing::small_graph_corpus()) {
        for (std::size_t k = 1; k <= 3; ++k) {
            for (int trial = 0; trial < 10; ++trial) {
                Cover cover = decode_cover(random_chromosome(g, 0.3, k, rng), g, k);
                Chromosome x = encode_cover(cover, g);
                CHECK(decode_cover(x, g, k) == cover);
            }
        }
    }
}

TEST_CASE("encoding rejects covers a chromosome cannot express") {
    Graph g = testing::two_triangles();
    CHECK_THROWS_AS(encode_cover(Cover(6, {{0, 4}, {1, 2, 3, 5}}, 1), g), InvalidCover);
    CHECK_THROWS_AS(encode_cover(Cover(5, {{0, 1, 2, 3, 4}}, 1), g), InvalidCover);
}

TEST_CASE("decoding commutes with node relabeling") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = erdos_renyi(10, 0.35, rng);
        std::vector<NodeId> perm(g.size());
        std::iota(perm.begin(), perm.end(), NodeId{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::pair<NodeId, NodeId>> moved;
        for (auto [a, b] : g.edges()) moved.emplace_back(perm[a], perm[b]);
        Graph h(g.size(), moved);

        // No cap, so bit consumption order cannot matter.
        const std::size_t k = g.size();
        Chromosome x = random_chromosome(g, 0.3, k, rng);
        Chromosome y = singleton_chromosome(h);
        for (NodeId i = 0; i < g.size(); ++i) {
            y.adhesion[perm[i]] = perm[x.adhesion[i]];
            for (NodeId j : g.neighbors(i))
                if (bit(x, g, i, j)) set_bit(y, h, perm[i], perm[j]);
        }

        Cover cx = decode_cover(x, g, k);
        Sets mapped;
        for (const auto& c : cx.communities()) {
            std::vector<NodeId> m;
            for (NodeId i : c) m.push_back(perm[i]);
            std::sort(m.begin(), m.end());
            mapped.push_back(m);
        }
        std::sort(mapped.begin(), mapped.end());
        CHECK(decode_cover(y, h, k).communities() == mapped);
    }
}

TEST_CASE("cover construction validates and canonicalizes") {
    Cover c(4, {{2, 3}, {0, 1, 2}}, 2);
    CHECK(c.communities() == Sets{{0, 1, 2}, {2, 3}});
    CHECK(c.primary(2) == 0);
    CHECK(c.membership_count(2) == 2);

    Cover explicit_primary(4, {{2, 3}, {0, 1, 2}}, 2, {1, 1, 0, 0});
    CHECK(explicit_primary.primary(2) == 1);
    CHECK(explicit_primary.same_communities(c));
    CHECK_FALSE(explicit_primary == c);

    CHECK_THROWS_AS(Cover(3, {{0, 1}}, 1), InvalidCover);
    CHECK_THROWS_AS(Cover(3, {{0, 1, 2}, {1}}, 1), InvalidCover);
    CHECK_THROWS_AS(Cover(3, {{0, 1, 2}, {}}, 2), InvalidCover);
    CHECK_THROWS_AS(Cover(3, {{0, 1, 1, 2}}, 1), InvalidCover);
    CHECK_THROWS_AS(Cover(3, {{0, 1, 5}}, 1), InvalidCover);
    CHECK_THROWS_AS(Cover(3, {{0, 1, 2}}, 0), InvalidCover);
    // Community {1} has no primary member.
    CHECK_THROWS_AS(Cover(3, {{0, 1, 2}, {1}}, 2, {0, 0, 0}), InvalidCover);
}

TEST_CASE("partition canonicalization orders by smallest member") {
    std::vector<std::uint32_t> labels{7, 3, 7, 9, 3};
    auto pi = DisjointPartition::from_assignment(labels);
    CHECK(pi.communities == Sets{{0, 2}, {1, 4}, {3}});
    CHECK(pi.assignment == std::vector<CommunityId>{0, 1, 0, 2, 1});
}
