#include "gridnet/growth.hpp"

#include <numbers>
#include <stdexcept>

#include "gridnet/spatial_grid.hpp"

namespace gridnet {

void GrowthConfig::validate() const {
    if (!(radius > 0.0))
        throw std::invalid_argument("growth config: radius must be positive");
    if (density) {
        if (!(*density > 0.0))
            throw std::invalid_argument("growth config: density must be positive");
    } else if (node_count < 2) {
        throw std::invalid_argument("growth config: node count must be >= 2");
    }
}

Graph grow(const GrowthConfig& config, std::vector<int>* drawn_k) {
    config.validate();
    Rng rng(config.rng_seed);

    NodeId n = config.node_count;
    if (config.density) {
        const double area = std::numbers::pi * config.radius * config.radius;
        const std::int64_t drawn = poisson_count(rng, *config.density * area);
        if (drawn < 2)
            throw std::runtime_error("growth: Poisson draw produced fewer than 2 nodes");
        n = static_cast<NodeId>(drawn);
    }

    PointGrid index(config.radius, static_cast<std::size_t>(n));
    std::vector<Point> positions;
    positions.reserve(n);
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(config.k_dist.mean() * n) + 16);
    if (drawn_k) {
        drawn_k->clear();
        drawn_k->reserve(n > 0 ? n - 1 : 0);
    }

    for (NodeId t = 0; t < n; ++t) {
        const Point p = sample_position(rng, config.radius);
        if (t > 0) {
            const int k = config.k_dist.sample(rng);
            if (drawn_k) drawn_k->push_back(k);
            const int m = std::min<int>(k, t);
            for (NodeId target : index.k_nearest(p, m))
                edges.emplace_back(target, t);
        }
        index.insert(t, p);
        positions.push_back(p);
    }

    return Graph(n, edges, std::move(positions));
}

}  // namespace gridnet
