#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ocd {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;

/// Raised by the edge-list reader; carries the 1-based offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Undirected simple graph in compressed sparse row form.
///
/// Nodes carry dense internal ids 0..n-1 and an external label. Every
/// neighbor list is sorted ascending, so the position of a neighbor inside
/// `neighbors(i)` is a stable per-node locus index (used by the overlap
/// segment of a chromosome). The graph is immutable once built.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list over nodes 0..n-1. Self-loops and
    /// duplicate edges are rejected here; the reader filters them first.
    Graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
          std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId i) const noexcept {
        return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
    }
    std::size_t degree(NodeId i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

    /// Offset of node i's first neighbor in the flat adjacency array.
    std::size_t offset(NodeId i) const noexcept { return offsets_[i]; }
    std::size_t adjacency_size() const noexcept { return targets_.size(); }

    bool has_edge(NodeId i, NodeId j) const noexcept;

    /// Position of j in neighbors(i), or degree(i) when j is not adjacent.
    std::size_t neighbor_index(NodeId i, NodeId j) const noexcept;

    const std::string& label(NodeId i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Internal id for an external label; throws std::out_of_range.
    NodeId id_of(const std::string& label) const;

    /// All edges (i < j) in ascending order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<std::string> labels_;
};

struct EdgeListStats {
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;

    /// Lines that contributed nothing to the graph.
    std::size_t dropped() const noexcept { return self_loops + duplicates; }
};

struct LoadedGraph {
    Graph graph;
    EdgeListStats stats;
};

/// Reads a whitespace separated edge list. Lines that are blank or start with
/// '#' are skipped. Labels map to ids in order of first appearance.
LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list_file(const std::string& path);

/// Writes one "label label" line per edge, ordered by internal ids.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace ocd
