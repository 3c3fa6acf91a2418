#include "ocd/fitness.hpp"

#include <stdexcept>

namespace ocd {

double BelongingMatrix::at(NodeId i, CommunityId c) const {
    for (auto [community, weight] : rows[i])
        if (community == c) return weight;
    return 0.0;
}

BelongingMatrix belonging_coefficients(const Cover& cover) {
    BelongingMatrix s;
    s.rows.resize(cover.node_count());
    for (NodeId i = 0; i < cover.node_count(); ++i) {
        const auto& m = cover.memberships(i);
        double w = 1.0 / static_cast<double>(m.size());
        for (CommunityId c : m) s.rows[i].emplace_back(c, w);
    }
    return s;
}

double overlapping_modularity(const Cover& cover, const Graph& g) {
    return overlapping_modularity(cover, belonging_coefficients(cover), g);
}

double overlapping_modularity(const Cover& cover, const BelongingMatrix& s, const Graph& g) {
    if (cover.node_count() != g.size()) throw InvalidCover("cover and graph disagree on node count");
    if (g.edge_count() == 0) throw std::invalid_argument("modularity is undefined on an edgeless graph");
    const double two_l = 2.0 * static_cast<double>(g.edge_count());

    // S_ic for the community being scored; members flagged separately so a
    // zero coefficient still counts as membership.
    std::vector<double> weight_in_c(g.size(), 0.0);
    std::vector<char> in_c(g.size(), 0);
    double q = 0.0;
    for (CommunityId c = 0; c < cover.size(); ++c) {
        const auto& members = cover.community(c);
        if (members.empty()) throw InvalidCover("empty community");
        for (NodeId i : members) {
            weight_in_c[i] = s.at(i, c);
            in_c[i] = 1;
        }

        double inner = 0.0;
        double boundary = 0.0;
        for (NodeId i : members) {
            double si = weight_in_c[i];
            for (NodeId j : g.neighbors(i)) {
                if (in_c[j])
                    inner += si * weight_in_c[j];
                else
                    boundary += si;
            }
        }
        double strength = inner + boundary;
        q += inner - strength * strength / two_l;

        for (NodeId i : members) {
            weight_in_c[i] = 0.0;
            in_c[i] = 0;
        }
    }
    return q / two_l;
}

double disjoint_modularity(const DisjointPartition& pi, const Graph& g) {
    if (pi.assignment.size() != g.size()) throw InvalidCover("partition and graph disagree on node count");
    if (g.edge_count() == 0) throw std::invalid_argument("modularity is undefined on an edgeless graph");
    const double two_l = 2.0 * static_cast<double>(g.edge_count());

    double q = 0.0;
    for (CommunityId c = 0; c < pi.size(); ++c) {
        const auto& members = pi.communities[c];
        if (members.empty()) throw InvalidCover("empty community");
        double inner = 0.0;
        double degree_sum = 0.0;
        for (NodeId i : members) {
            degree_sum += static_cast<double>(g.degree(i));
            for (NodeId j : g.neighbors(i))
                if (pi.assignment[j] == c) inner += 1.0;
        }
        q += inner - degree_sum * degree_sum / two_l;
    }
    return q / two_l;
}

}  // namespace ocd
