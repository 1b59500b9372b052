#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gridnet/geometry.hpp"
#include "gridnet/graph.hpp"

namespace gridnet {

// Exact k-nearest by linear scan; positions are addressed by index, so the
// returned node ids are indices into `existing`. Ordering is ascending
// (squared distance, id). This is also the reference the grid index is
// tested against.
std::vector<NodeId> k_nearest(Point query, std::span<const Point> existing, int k);

// Uniform-grid bucket index over the disk's bounding square. Queries expand
// square rings of cells outward from the query cell; once k candidates are
// held and the worst of them is strictly closer than the ring's guaranteed
// lower bound L*cell, no unscanned point can displace or tie them, so the
// search stops. Expected O(1) per query at the density the generator
// produces. Below a small population it just scans linearly.
class PointGrid {
public:
    PointGrid(double radius, std::size_t expected_points);

    void insert(NodeId id, Point p);
    std::size_t size() const { return points_.size(); }

    std::vector<NodeId> k_nearest(Point query, int k) const;

    static constexpr std::size_t kLinearScanThreshold = 64;

private:
    int cell_of(double coord) const;

    double radius_;
    double cell_;
    int dim_;
    std::vector<std::vector<std::uint32_t>> buckets_;  // indices into points_
    std::vector<std::pair<NodeId, Point>> points_;
};

}  // namespace gridnet
