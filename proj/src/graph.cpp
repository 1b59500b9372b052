#include "gridnet/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridnet {

Graph::Graph(NodeId node_count, std::span<const std::pair<NodeId, NodeId>> edges,
             std::vector<Point> positions)
    : positions_(std::move(positions)) {
    if (node_count < 0)
        throw std::invalid_argument("graph: negative node count");
    if (!positions_.empty() && static_cast<NodeId>(positions_.size()) != node_count)
        throw std::invalid_argument("graph: positions size does not match node count");

    adj_.resize(node_count);
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (u == v)
            throw std::invalid_argument("graph: self-loop");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw std::invalid_argument("graph: duplicate edge");
    }
    edge_count_ = static_cast<std::int64_t>(edges.size());
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

DegreeHistogram degree_histogram(const Graph& g) {
    DegreeHistogram hist;
    for (NodeId v = 0; v < g.node_count(); ++v)
        ++hist.bins[g.degree(v)];
    hist.total = g.node_count();
    return hist;
}

std::vector<NodeId> component_labels(const Graph& g, NodeId* component_count) {
    const NodeId n = g.node_count();
    std::vector<NodeId> label(n, -1);
    std::vector<NodeId> stack;
    NodeId next = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (label[s] != -1) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(v)) {
                if (label[w] == -1) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    if (component_count) *component_count = next;
    return label;
}

}  // namespace gridnet
