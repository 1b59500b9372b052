#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "gridnet/geometry.hpp"

namespace gridnet {

using NodeId = std::int32_t;

// Undirected simple graph with sorted adjacency lists. Node ids are dense
// 0..N-1; for grown graphs id order is birth order. Construction is strict:
// a self-loop or duplicate edge is a logic error, not something to repair
// silently (the ingestion layer merges duplicates before building).
class Graph {
public:
    Graph() = default;
    Graph(NodeId node_count, std::span<const std::pair<NodeId, NodeId>> edges,
          std::vector<Point> positions = {});

    NodeId node_count() const { return static_cast<NodeId>(adj_.size()); }
    std::int64_t edge_count() const { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
    NodeId degree(NodeId v) const { return static_cast<NodeId>(adj_[v].size()); }
    bool has_edge(NodeId u, NodeId v) const;

    // Edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    bool has_positions() const { return !positions_.empty(); }
    const std::vector<Point>& positions() const { return positions_; }

private:
    std::vector<std::vector<NodeId>> adj_;
    std::vector<Point> positions_;
    std::int64_t edge_count_ = 0;
};

struct DegreeHistogram {
    std::map<int, std::int64_t> bins;
    std::int64_t total = 0;
};

DegreeHistogram degree_histogram(const Graph& g);

// Component label per node, labels assigned in order of first appearance by
// lowest node id. Number of components = max label + 1 (0 for empty graph).
std::vector<NodeId> component_labels(const Graph& g, NodeId* component_count = nullptr);

}  // namespace gridnet
