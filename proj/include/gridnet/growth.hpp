#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridnet/graph.hpp"
#include "gridnet/k_distribution.hpp"

namespace gridnet {

// Parameters for one generated network. Node positions are born uniformly on
// the disk of the given radius, one node per step; node t attaches to its
// min(k_t, t-1) nearest predecessors with k_t drawn from k_dist. With
// `density` set, the node count is drawn as Poisson(density * disk area)
// before growth starts instead of using node_count.
struct GrowthConfig {
    double radius = 1.0;
    NodeId node_count = 0;
    std::optional<double> density;
    KDistribution k_dist = KDistribution::constant(1);
    std::uint64_t rng_seed = 0;

    void validate() const;
};

// Runs the growth process. Deterministic given the config: one seeded stream
// drives, per birth, the position draw followed by the K draw. If
// `drawn_k` is non-null it receives the k drawn at each birth t >= 2, in
// birth order (the first node draws none).
Graph grow(const GrowthConfig& config, std::vector<int>* drawn_k = nullptr);

}  // namespace gridnet
