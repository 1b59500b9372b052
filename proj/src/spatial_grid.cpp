#include "gridnet/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridnet {

namespace {

struct Candidate {
    double d2;
    NodeId id;
};

inline bool worse(const Candidate& a, const Candidate& b) {
    return a.d2 != b.d2 ? a.d2 < b.d2 : a.id < b.id;
}

// Max-heap on (d2, id): top() is the current worst of the kept k.
struct BoundedBest {
    explicit BoundedBest(std::size_t k) : k_(k) { heap_.reserve(k); }

    void offer(Candidate c) {
        if (heap_.size() < k_) {
            heap_.push_back(c);
            std::push_heap(heap_.begin(), heap_.end(), worse);
        } else if (worse(c, heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), worse);
            heap_.back() = c;
            std::push_heap(heap_.begin(), heap_.end(), worse);
        }
    }

    bool full() const { return heap_.size() == k_; }
    double worst_d2() const { return heap_.front().d2; }

    std::vector<NodeId> sorted_ids() {
        std::sort(heap_.begin(), heap_.end(), worse);
        std::vector<NodeId> ids;
        ids.reserve(heap_.size());
        for (const auto& c : heap_) ids.push_back(c.id);
        return ids;
    }

    std::size_t k_;
    std::vector<Candidate> heap_;
};

}  // namespace

std::vector<NodeId> k_nearest(Point query, std::span<const Point> existing, int k) {
    if (existing.empty())
        throw std::invalid_argument("k_nearest: no attachment targets");
    if (k < 1)
        throw std::invalid_argument("k_nearest: k must be >= 1");
    const std::size_t keep = std::min<std::size_t>(k, existing.size());
    BoundedBest best(keep);
    for (std::size_t i = 0; i < existing.size(); ++i)
        best.offer({dist2(query, existing[i]), static_cast<NodeId>(i)});
    return best.sorted_ids();
}

PointGrid::PointGrid(double radius, std::size_t expected_points) : radius_(radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("point grid: radius must be positive");
    // Aim for ~2 points per occupied cell at the final population.
    const double target = std::sqrt(static_cast<double>(std::max<std::size_t>(expected_points, 1)) / 2.0);
    dim_ = std::clamp(static_cast<int>(std::ceil(target)), 1, 2048);
    cell_ = 2.0 * radius_ / dim_;
    buckets_.resize(static_cast<std::size_t>(dim_) * dim_);
}

int PointGrid::cell_of(double coord) const {
    const int c = static_cast<int>((coord + radius_) / cell_);
    return std::clamp(c, 0, dim_ - 1);
}

void PointGrid::insert(NodeId id, Point p) {
    const std::size_t idx = points_.size();
    points_.emplace_back(id, p);
    buckets_[static_cast<std::size_t>(cell_of(p.y)) * dim_ + cell_of(p.x)].push_back(
        static_cast<std::uint32_t>(idx));
}

std::vector<NodeId> PointGrid::k_nearest(Point query, int k) const {
    if (points_.empty())
        throw std::invalid_argument("k_nearest: no attachment targets");
    if (k < 1)
        throw std::invalid_argument("k_nearest: k must be >= 1");

    const std::size_t keep = std::min<std::size_t>(k, points_.size());
    BoundedBest best(keep);

    if (points_.size() < kLinearScanThreshold) {
        for (const auto& [id, p] : points_)
            best.offer({dist2(query, p), id});
        return best.sorted_ids();
    }

    const int cx = cell_of(query.x);
    const int cy = cell_of(query.y);
    // Farthest ring that still intersects the grid.
    const int max_ring = std::max({cx, dim_ - 1 - cx, cy, dim_ - 1 - cy});

    auto scan_cell = [&](int x, int y) {
        for (std::uint32_t idx : buckets_[static_cast<std::size_t>(y) * dim_ + x]) {
            const auto& [id, p] = points_[idx];
            best.offer({dist2(query, p), id});
        }
    };

    for (int ring = 0; ring <= max_ring; ++ring) {
        // Cells at Chebyshev distance exactly `ring`, clipped to the grid.
        const int x0 = std::max(0, cx - ring), x1 = std::min(dim_ - 1, cx + ring);
        const int y0 = std::max(0, cy - ring), y1 = std::min(dim_ - 1, cy + ring);
        for (int y = y0; y <= y1; ++y) {
            if (y == cy - ring || y == cy + ring) {
                for (int x = x0; x <= x1; ++x) scan_cell(x, y);
            } else {
                if (cx - ring >= 0) scan_cell(cx - ring, y);
                if (cx + ring <= dim_ - 1) scan_cell(cx + ring, y);
            }
        }
        // Any point in an unscanned cell is at Chebyshev cell distance
        // >= ring+1, hence at Euclidean distance >= ring*cell. Strict
        // comparison so equal-distance points outside still compete on id.
        const double bound = static_cast<double>(ring) * cell_;
        if (best.full() && best.worst_d2() < bound * bound) break;
    }
    return best.sorted_ids();
}

}  // namespace gridnet
