#include "ocd/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ocd {

Graph::Graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
             std::vector<std::string> labels)
    : labels_(std::move(labels)) {
    if (labels_.empty()) {
        labels_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
    }
    if (labels_.size() != n) throw std::invalid_argument("label count does not match node count");

    std::vector<std::vector<NodeId>> adjacency(n);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loop at node " + labels_[a]);
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }

    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& nbrs = adjacency[i];
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw std::invalid_argument("duplicate edge at node " + labels_[i]);
        offsets_[i + 1] = offsets_[i] + nbrs.size();
    }
    targets_.reserve(offsets_[n]);
    for (const auto& nbrs : adjacency) targets_.insert(targets_.end(), nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(NodeId i, NodeId j) const noexcept {
    auto nbrs = neighbors(i);
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::size_t Graph::neighbor_index(NodeId i, NodeId j) const noexcept {
    auto nbrs = neighbors(i);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
    if (it == nbrs.end() || *it != j) return nbrs.size();
    return static_cast<std::size_t>(it - nbrs.begin());
}

NodeId Graph::id_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<NodeId>(i);
    throw std::out_of_range("unknown node label '" + label + "'");
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count());
    for (NodeId i = 0; i < size(); ++i)
        for (NodeId j : neighbors(i))
            if (i < j) out.emplace_back(i, j);
    return out;
}

LoadedGraph load_edge_list(std::istream& in) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::pair<NodeId, NodeId>> edges;
    EdgeListStats stats;

    auto intern = [&](const std::string& label) {
        auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream tokens(line);
        std::vector<std::string> fields;
        for (std::string tok; tokens >> tok;) fields.push_back(std::move(tok));
        if (fields.size() != 2)
            throw ParseError(line_no, "expected 2 node labels, found " + std::to_string(fields.size()));

        if (fields[0] == fields[1]) {
            ++stats.self_loops;
            continue;
        }
        NodeId a = intern(fields[0]);
        NodeId b = intern(fields[1]);
        if (!seen.insert(std::minmax(a, b)).second) {
            ++stats.duplicates;
            continue;
        }
        edges.emplace_back(a, b);
    }
    if (edges.empty()) throw std::runtime_error("edge list contains no edges");

    std::size_t n = labels.size();
    return {Graph(n, edges, std::move(labels)), stats};
}

LoadedGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (auto [a, b] : g.edges()) out << g.label(a) << ' ' << g.label(b) << '\n';
}

}  // namespace ocd
