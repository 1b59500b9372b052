#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gridnet/graph.hpp"
#include "gridnet/k_distribution.hpp"

namespace gridnet {

struct ComponentStat {
    NodeId size = 0;
    int diameter = 0;  // max eccentricity within the component
};

struct DiameterReport {
    int diameter = 0;  // of the largest component
    NodeId largest_component_size = 0;
    std::vector<ComponentStat> per_component;  // sorted by size, largest first
};

// Exact hop diameter by BFS from every node. Throws on graphs without edges.
DiameterReport diameter(const Graph& g, int threads = 0);

struct BetweennessResult {
    // Per-node score l_i: for every unordered pair {j,k} with j,k != i, the
    // fraction of shortest j-k paths with i interior.
    std::vector<double> node_scores;
    // Per-edge score l_uv over all unordered pairs, including pairs that end
    // at an endpoint of the edge (a path ending at u still crosses its last
    // edge). Indexed parallel to `edges`.
    std::vector<double> edge_scores;
    std::vector<std::pair<NodeId, NodeId>> edges;  // (u, v), u < v
    // Set when the graph was disconnected and scores cover only the largest
    // component (everything else is zero).
    bool restricted_to_largest_component = false;
};

BetweennessResult betweenness(const Graph& g, int threads = 0);

struct ScoreHistogram {
    std::vector<double> lower_edges;  // bin i covers [lower_edges[i], lower_edges[i]+width)
    std::vector<double> mass;         // sums to 1
    double bin_width = 0.0;
};

// Equal-width normalized histogram over raw scores; the last bin is closed.
ScoreHistogram betweenness_pdf(std::span<const double> scores, int bins);

struct ScalingRow {
    NodeId n = 0;
    double mean_diameter = 0.0;
    double stddev = 0.0;
};

// Mean +/- sample stddev of the grown-graph diameter per size, over
// seeds_per_size independent seeds derived from base_seed.
std::vector<ScalingRow> diameter_scaling(const KDistribution& k_dist,
                                         std::span<const NodeId> sizes, int seeds_per_size,
                                         std::uint64_t base_seed, double radius = 1.0,
                                         int threads = 0);

}  // namespace gridnet
