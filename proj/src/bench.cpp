#include "ocd/bench.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "ocd/fitness.hpp"

namespace ocd {

namespace {

double h(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

struct BinaryVar {
    std::vector<std::uint8_t> bits;
    double count = 0.0;
};

std::vector<BinaryVar> as_variables(const Cover& cover) {
    std::vector<BinaryVar> vars(cover.size());
    for (CommunityId c = 0; c < cover.size(); ++c) {
        vars[c].bits.assign(cover.node_count(), 0);
        for (NodeId i : cover.community(c)) vars[c].bits[i] = 1;
        vars[c].count = static_cast<double>(cover.community(c).size());
    }
    return vars;
}

double entropy(const BinaryVar& x, double n) { return h(x.count / n) + h((n - x.count) / n); }

// N(X | Y): mean normalized conditional entropy of X's communities given Y.
double normalized_conditional(const std::vector<BinaryVar>& xs, const std::vector<BinaryVar>& ys, double n) {
    double total = 0.0;
    for (const auto& x : xs) {
        double hx = entropy(x, n);
        if (hx == 0.0) continue;
        double best = hx;
        for (const auto& y : ys) {
            double n11 = 0.0;
            for (std::size_t i = 0; i < x.bits.size(); ++i)
                if (x.bits[i] && y.bits[i]) n11 += 1.0;
            double p11 = n11 / n;
            double p10 = (x.count - n11) / n;
            double p01 = (y.count - n11) / n;
            double p00 = (n - x.count - y.count + n11) / n;
            if (h(p11) + h(p00) <= h(p01) + h(p10)) continue;
            double joint = h(p11) + h(p10) + h(p01) + h(p00);
            best = std::min(best, joint - entropy(y, n));
        }
        total += best / hx;
    }
    return total / static_cast<double>(xs.size());
}

}  // namespace

SimilarityScore overlapping_nmi(const Cover& a, const Cover& b) {
    if (a.node_count() != b.node_count()) throw std::invalid_argument("covers span different node sets");
    const double n = static_cast<double>(a.node_count());
    auto xs = as_variables(a);
    auto ys = as_variables(b);
    double value = 1.0 - 0.5 * (normalized_conditional(xs, ys, n) + normalized_conditional(ys, xs, n));
    return {std::clamp(value, 0.0, 1.0), "overlapping-nmi"};
}

OracleResult greedy_baseline(const Graph& g) {
    if (g.edge_count() == 0) throw std::invalid_argument("graph has no edges");
    const std::size_t n = g.size();
    const auto two_l = static_cast<std::int64_t>(2 * g.edge_count());

    // Merge gain times 2L^2 is 2L * e_ab - d_a * d_b, exact in integers.
    std::vector<std::map<CommunityId, std::int64_t>> between(n);
    std::vector<std::int64_t> degree(n);
    std::vector<std::vector<NodeId>> members(n);
    std::vector<bool> alive(n, true);
    for (NodeId i = 0; i < n; ++i) {
        degree[i] = static_cast<std::int64_t>(g.degree(i));
        members[i] = {i};
        for (NodeId j : g.neighbors(i)) between[i][j] += 1;
    }

    std::size_t merges = 0;
    while (true) {
        std::int64_t best_gain = 0;
        CommunityId best_a = 0;
        CommunityId best_b = 0;
        for (CommunityId a = 0; a < n; ++a) {
            if (!alive[a]) continue;
            for (auto [b, e] : between[a]) {
                if (b <= a) continue;
                std::int64_t gain = two_l * e - degree[a] * degree[b];
                if (gain > best_gain) {
                    best_gain = gain;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_gain <= 0) break;

        // Fold best_b into best_a.
        for (auto [c, e] : between[best_b]) {
            if (c == best_a) continue;
            between[best_a][c] += e;
            between[c].erase(best_b);
            between[c][best_a] += e;
        }
        between[best_a].erase(best_b);
        between[best_b].clear();
        degree[best_a] += degree[best_b];
        members[best_a].insert(members[best_a].end(), members[best_b].begin(), members[best_b].end());
        members[best_b].clear();
        alive[best_b] = false;
        ++merges;
    }

    std::vector<std::uint32_t> labels(n);
    for (CommunityId c = 0; c < n; ++c)
        for (NodeId i : members[c]) labels[i] = c;
    auto pi = DisjointPartition::from_assignment(labels);
    double q = disjoint_modularity(pi, g);
    return {Cover::from_partition(pi), q, merges + 1};
}

OracleResult brute_force_best(const Graph& g, std::size_t max_memberships, bool prune_nonadjacent,
                              bool connected_primaries) {
    const std::size_t n = g.size();
    if (n > kBruteForceMaxNodes)
        throw std::invalid_argument("brute force is limited to " + std::to_string(kBruteForceMaxNodes) + " nodes");
    if (!prune_nonadjacent && n > 6) throw std::invalid_argument("unpruned brute force is limited to 6 nodes");
    if (max_memberships < 1) throw std::invalid_argument("maximum memberships must be at least 1");
    if (g.edge_count() == 0) throw std::invalid_argument("graph has no edges");

    const double two_l = 2.0 * static_cast<double>(g.edge_count());
    std::vector<std::uint32_t> nbr_mask(n, 0);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j : g.neighbors(i)) nbr_mask[i] |= 1u << j;

    OracleResult best;
    best.q = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::vector<NodeId>, std::uint32_t>> best_communities;
    std::vector<std::uint32_t> best_primary;
    std::size_t evaluated = 0;

    std::vector<std::uint32_t> rgs(n, 0);  // restricted growth string: primary community per node
    std::vector<std::vector<std::uint32_t>> options(n);  // extra-membership sets per node, as community bitmasks
    std::vector<std::size_t> choice(n);
    std::vector<std::uint32_t> mask(n);
    std::vector<double> weight(n);

    auto score = [&](std::size_t k) {
        // mask[c]: members of community c; weight[i]: 1 / M_i.
        double q = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double inner = 0.0;
            double boundary = 0.0;
            for (std::uint32_t m = mask[c]; m; m &= m - 1) {
                auto i = static_cast<NodeId>(std::countr_zero(m));
                std::uint32_t in = nbr_mask[i] & mask[c];
                std::uint32_t out = nbr_mask[i] & ~mask[c];
                double sum_in = 0.0;
                for (std::uint32_t t = in; t; t &= t - 1) sum_in += weight[std::countr_zero(t)];
                inner += weight[i] * sum_in;
                boundary += weight[i] * std::popcount(out);
            }
            double strength = inner + boundary;
            q += inner - strength * strength / two_l;
        }
        return q / two_l;
    };

    // Communities in canonical order, each paired with its primary label.
    using Labeled = std::vector<std::pair<std::vector<NodeId>, std::uint32_t>>;
    auto canonical = [&](std::size_t k) {
        Labeled comms(k);
        for (std::size_t c = 0; c < k; ++c) {
            comms[c].second = static_cast<std::uint32_t>(c);
            for (std::uint32_t m = mask[c]; m; m &= m - 1)
                comms[c].first.push_back(static_cast<NodeId>(std::countr_zero(m)));
        }
        std::sort(comms.begin(), comms.end());
        return comms;
    };

    auto members_less = [](const Labeled& a, const Labeled& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const auto& x, const auto& y) { return x.first < y.first; });
    };

    auto blocks_connected = [&](std::size_t k) {
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), 0u);
        for (NodeId i = 0; i < n; ++i) mask[rgs[i]] |= 1u << i;
        for (std::size_t c = 0; c < k; ++c) {
            std::uint32_t reached = mask[c] & (~mask[c] + 1);  // lowest member
            std::uint32_t frontier = reached;
            while (frontier) {
                std::uint32_t next = 0;
                for (std::uint32_t t = frontier; t; t &= t - 1) next |= nbr_mask[std::countr_zero(t)];
                next &= mask[c] & ~reached;
                reached |= next;
                frontier = next;
            }
            if (reached != mask[c]) return false;
        }
        return true;
    };

    auto visit_partition = [&](std::size_t k) {
        if (connected_primaries && !blocks_connected(k)) return;
        std::uint32_t all_communities = (k >= 32) ? ~0u : ((1u << k) - 1);
        for (NodeId i = 0; i < n; ++i) {
            std::uint32_t candidates = 0;
            if (prune_nonadjacent) {
                for (std::uint32_t t = nbr_mask[i]; t; t &= t - 1) candidates |= 1u << rgs[std::countr_zero(t)];
            } else {
                candidates = all_communities;
            }
            candidates &= ~(1u << rgs[i]);
            options[i].clear();
            // Subsets of candidates with at most K-1 communities.
            for (std::uint32_t s = candidates;; s = (s - 1) & candidates) {
                if (static_cast<std::size_t>(std::popcount(s)) + 1 <= max_memberships) options[i].push_back(s);
                if (s == 0) break;
            }
            std::sort(options[i].begin(), options[i].end());
            choice[i] = 0;
        }

        while (true) {
            std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), 0u);
            for (NodeId i = 0; i < n; ++i) {
                std::uint32_t extra = options[i][choice[i]];
                mask[rgs[i]] |= 1u << i;
                for (std::uint32_t t = extra; t; t &= t - 1) mask[std::countr_zero(t)] |= 1u << i;
                weight[i] = 1.0 / static_cast<double>(1 + std::popcount(extra));
            }
            double q = score(k);
            ++evaluated;
            if (q > best.q + 1e-12) {
                best.q = q;
                best_communities = canonical(k);
                best_primary.assign(rgs.begin(), rgs.end());
            } else if (q >= best.q - 1e-12) {
                auto comms = canonical(k);
                if (members_less(comms, best_communities)) {
                    best.q = std::max(best.q, q);
                    best_communities = std::move(comms);
                    best_primary.assign(rgs.begin(), rgs.end());
                }
            }

            std::size_t i = 0;
            while (i < n && ++choice[i] == options[i].size()) choice[i++] = 0;
            if (i == n) break;
        }
    };

    // Restricted growth strings enumerate each set partition exactly once.
    while (true) {
        std::uint32_t k = 0;
        for (std::size_t i = 0; i < n; ++i) k = std::max(k, rgs[i] + 1);
        visit_partition(k);

        std::size_t pos = n - 1;
        while (pos > 0) {
            std::uint32_t limit = 0;
            for (std::size_t i = 0; i < pos; ++i) limit = std::max(limit, rgs[i] + 1);
            if (rgs[pos] < limit) break;
            rgs[pos] = 0;
            --pos;
        }
        if (pos == 0) break;
        ++rgs[pos];
    }

    std::vector<std::vector<NodeId>> communities;
    std::vector<CommunityId> rank_of_label(best_communities.size());
    for (CommunityId c = 0; c < best_communities.size(); ++c) {
        communities.push_back(best_communities[c].first);
        rank_of_label[best_communities[c].second] = c;
    }
    std::vector<CommunityId> primary(n);
    for (NodeId i = 0; i < n; ++i) primary[i] = rank_of_label[best_primary[i]];

    best.cover = Cover(n, std::move(communities), max_memberships, primary);
    best.covers_evaluated = evaluated;
    return best;
}

}  // namespace ocd
