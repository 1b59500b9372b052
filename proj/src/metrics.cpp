#include "gridnet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "gridnet/growth.hpp"
#include "gridnet/parallel.hpp"

namespace gridnet {

namespace {

// Flat adjacency with a parallel edge-id array, so traversals can attribute
// flow to undirected edges in O(1).
struct Csr {
    std::vector<std::int64_t> offsets;
    std::vector<NodeId> targets;
    std::vector<std::int64_t> edge_ids;
    std::vector<std::pair<NodeId, NodeId>> edges;

    explicit Csr(const Graph& g) {
        const NodeId n = g.node_count();
        offsets.assign(n + 1, 0);
        for (NodeId v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + g.degree(v);
        targets.resize(static_cast<std::size_t>(offsets[n]));
        edge_ids.resize(targets.size());
        edges = g.edges();
        std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::int64_t e = 0; e < static_cast<std::int64_t>(edges.size()); ++e) {
            const auto [u, v] = edges[static_cast<std::size_t>(e)];
            targets[cursor[u]] = v;
            edge_ids[cursor[u]++] = e;
            targets[cursor[v]] = u;
            edge_ids[cursor[v]++] = e;
        }
    }
};

// BFS eccentricity of `source`; dist is scratch sized N, reset lazily via a
// visited stamp trick is not worth it here, caller provides a fresh fill.
int bfs_eccentricity(const Csr& csr, NodeId source, std::vector<int>& dist,
                     std::vector<NodeId>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    int ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId v = queue[head];
        const int dv = dist[v];
        ecc = dv;
        for (std::int64_t i = csr.offsets[v]; i < csr.offsets[v + 1]; ++i) {
            const NodeId w = csr.targets[i];
            if (dist[w] == -1) {
                dist[w] = dv + 1;
                queue.push_back(w);
            }
        }
    }
    return ecc;
}

}  // namespace

DiameterReport diameter(const Graph& g, int threads) {
    if (g.node_count() < 2)
        throw std::invalid_argument("diameter: need at least 2 nodes");
    if (g.edge_count() == 0)
        throw std::invalid_argument("diameter: no paths");

    NodeId component_count = 0;
    const std::vector<NodeId> labels = component_labels(g, &component_count);
    std::vector<NodeId> comp_size(component_count, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) ++comp_size[labels[v]];

    const Csr csr(g);
    std::vector<std::atomic<int>> comp_ecc(component_count);
    for (auto& e : comp_ecc) e.store(0);

    parallel_chunks(g.node_count(), threads, 256, [&](std::int64_t begin, std::int64_t end) {
        std::vector<int> dist(g.node_count());
        std::vector<NodeId> queue;
        queue.reserve(g.node_count());
        for (std::int64_t v = begin; v < end; ++v) {
            const int ecc = bfs_eccentricity(csr, static_cast<NodeId>(v), dist, queue);
            auto& slot = comp_ecc[labels[v]];
            int cur = slot.load(std::memory_order_relaxed);
            while (ecc > cur && !slot.compare_exchange_weak(cur, ecc)) {
            }
        }
    });

    DiameterReport report;
    report.per_component.reserve(component_count);
    for (NodeId c = 0; c < component_count; ++c)
        report.per_component.push_back({comp_size[c], comp_ecc[c].load()});
    std::sort(report.per_component.begin(), report.per_component.end(),
              [](const ComponentStat& a, const ComponentStat& b) {
                  return a.size != b.size ? a.size > b.size : a.diameter > b.diameter;
              });
    report.largest_component_size = report.per_component.front().size;
    report.diameter = report.per_component.front().diameter;
    return report;
}

BetweennessResult betweenness(const Graph& g, int threads) {
    const NodeId n = g.node_count();
    if (n < 2)
        throw std::invalid_argument("betweenness: need at least 2 nodes");

    NodeId component_count = 0;
    const std::vector<NodeId> labels = component_labels(g, &component_count);
    NodeId largest = 0;
    {
        std::vector<NodeId> comp_size(component_count, 0);
        for (NodeId v = 0; v < n; ++v) ++comp_size[labels[v]];
        for (NodeId c = 1; c < component_count; ++c)
            if (comp_size[c] > comp_size[largest]) largest = c;
    }

    const Csr csr(g);
    BetweennessResult result;
    result.edges = csr.edges;
    result.node_scores.assign(n, 0.0);
    result.edge_scores.assign(csr.edges.size(), 0.0);
    result.restricted_to_largest_component = component_count > 1;

    struct Scratch {
        std::vector<double> node_acc, edge_acc;
        std::vector<double> sigma, delta;
        std::vector<int> dist;
        std::vector<NodeId> order;
    };

    // Shortest-path counting from each source, then reverse accumulation of
    // pair-dependencies onto nodes and edges. Each unordered pair is seen
    // from both endpoints, so final scores are halved.
    parallel_ordered_reduce<Scratch>(
        n, threads, 64,
        [&](std::int64_t begin, std::int64_t end, Scratch& s) {
            s.node_acc.assign(n, 0.0);
            s.edge_acc.assign(csr.edges.size(), 0.0);
            s.sigma.resize(n);
            s.delta.resize(n);
            s.dist.resize(n);
            s.order.reserve(n);
            for (std::int64_t src = begin; src < end; ++src) {
                const NodeId source = static_cast<NodeId>(src);
                if (labels[source] != largest) continue;
                std::fill(s.dist.begin(), s.dist.end(), -1);
                std::fill(s.sigma.begin(), s.sigma.end(), 0.0);
                std::fill(s.delta.begin(), s.delta.end(), 0.0);
                s.order.clear();
                s.order.push_back(source);
                s.dist[source] = 0;
                s.sigma[source] = 1.0;
                for (std::size_t head = 0; head < s.order.size(); ++head) {
                    const NodeId v = s.order[head];
                    for (std::int64_t i = csr.offsets[v]; i < csr.offsets[v + 1]; ++i) {
                        const NodeId w = csr.targets[i];
                        if (s.dist[w] == -1) {
                            s.dist[w] = s.dist[v] + 1;
                            s.order.push_back(w);
                        }
                        if (s.dist[w] == s.dist[v] + 1) s.sigma[w] += s.sigma[v];
                    }
                }
                for (std::size_t idx = s.order.size(); idx-- > 1;) {
                    const NodeId w = s.order[idx];
                    const double coeff = (1.0 + s.delta[w]) / s.sigma[w];
                    for (std::int64_t i = csr.offsets[w]; i < csr.offsets[w + 1]; ++i) {
                        const NodeId v = csr.targets[i];
                        if (s.dist[v] + 1 == s.dist[w]) {
                            const double c = s.sigma[v] * coeff;
                            s.delta[v] += c;
                            s.edge_acc[csr.edge_ids[i]] += c;
                        }
                    }
                    s.node_acc[w] += s.delta[w];
                }
            }
        },
        [&](Scratch& s) {
            for (NodeId v = 0; v < n; ++v) result.node_scores[v] += s.node_acc[v];
            for (std::size_t e = 0; e < result.edge_scores.size(); ++e)
                result.edge_scores[e] += s.edge_acc[e];
        },
        [] { return Scratch{}; });

    for (double& x : result.node_scores) x *= 0.5;
    for (double& x : result.edge_scores) x *= 0.5;
    return result;
}

ScoreHistogram betweenness_pdf(std::span<const double> scores, int bins) {
    if (bins < 2)
        throw std::invalid_argument("betweenness_pdf: need at least 2 bins");
    if (scores.empty())
        throw std::invalid_argument("betweenness_pdf: no scores");

    const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
    const double lo = *lo_it, hi = *hi_it;

    ScoreHistogram hist;
    hist.mass.assign(bins, 0.0);
    hist.bin_width = (hi - lo) / bins;
    hist.lower_edges.resize(bins);
    for (int b = 0; b < bins; ++b) hist.lower_edges[b] = lo + b * hist.bin_width;

    const double unit = 1.0 / static_cast<double>(scores.size());
    for (double x : scores) {
        int b = hist.bin_width > 0.0 ? static_cast<int>((x - lo) / hist.bin_width) : 0;
        b = std::clamp(b, 0, bins - 1);
        hist.mass[b] += unit;
    }
    return hist;
}

std::vector<ScalingRow> diameter_scaling(const KDistribution& k_dist,
                                         std::span<const NodeId> sizes, int seeds_per_size,
                                         std::uint64_t base_seed, double radius, int threads) {
    if (sizes.empty())
        throw std::invalid_argument("diameter_scaling: no sizes");
    if (seeds_per_size < 1)
        throw std::invalid_argument("diameter_scaling: need at least 1 seed per size");
    for (NodeId n : sizes)
        if (n < 10) throw std::invalid_argument("diameter_scaling: sizes must be >= 10");

    std::vector<ScalingRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        double sum = 0.0, sum_sq = 0.0;
        for (int s = 0; s < seeds_per_size; ++s) {
            GrowthConfig cfg;
            cfg.radius = radius;
            cfg.node_count = sizes[i];
            cfg.k_dist = k_dist;
            cfg.rng_seed = trial_seed(base_seed, i * 10007ULL + static_cast<std::uint64_t>(s));
            const Graph g = grow(cfg);
            const double d = diameter(g, threads).diameter;
            sum += d;
            sum_sq += d * d;
        }
        const double mean = sum / seeds_per_size;
        const double var =
            seeds_per_size > 1 ? std::max(0.0, (sum_sq - seeds_per_size * mean * mean) / (seeds_per_size - 1))
                               : 0.0;
        rows.push_back({sizes[i], mean, std::sqrt(var)});
    }
    return rows;
}

}  // namespace gridnet
