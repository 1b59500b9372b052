// Test-only reference implementations. Everything here is deliberately
// brute-force and independent of the library's algorithms: Floyd-Warshall
// distances, explicit shortest-path enumeration, exact Markov-chain epidemic
// evolution, and direct quadrature of mixture densities.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gridnet/epidemics.hpp"
#include "gridnet/graph.hpp"
#include "gridnet/meanfield.hpp"
#include "gridnet/rng.hpp"

namespace oracles {

using gridnet::Graph;
using gridnet::NodeId;

constexpr int kUnreachable = 1 << 29;

// All-pairs shortest hop counts, O(N^3).
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
    for (int v = 0; v < n; ++v) dist[v][v] = 0;
    for (const auto& [u, v] : g.edges()) dist[u][v] = dist[v][u] = 1;
    for (int via = 0; via < n; ++via)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                dist[a][b] = std::min(dist[a][b], dist[a][via] + dist[via][b]);
    return dist;
}

inline int brute_diameter(const Graph& g) {
    const auto dist = floyd_warshall(g);
    int best = 0;
    for (std::size_t a = 0; a < dist.size(); ++a)
        for (std::size_t b = 0; b < dist.size(); ++b)
            if (dist[a][b] < kUnreachable) best = std::max(best, dist[a][b]);
    return best;
}

struct BruteBetweenness {
    std::vector<double> node_scores;
    std::map<std::pair<NodeId, NodeId>, double> edge_scores;
};

// Enumerates every shortest path of every unordered pair explicitly. Node
// scores count interior appearances only; edge scores count every traversed
// edge, including the pair's own first/last hop.
inline BruteBetweenness brute_betweenness(const Graph& g) {
    const int n = g.node_count();
    const auto dist = floyd_warshall(g);
    BruteBetweenness result;
    result.node_scores.assign(n, 0.0);
    for (const auto& e : g.edges()) result.edge_scores[e] = 0.0;

    std::vector<NodeId> path;
    std::vector<std::int64_t> node_count(n);
    std::map<std::pair<NodeId, NodeId>, std::int64_t> edge_count;
    for (NodeId j = 0; j < n; ++j) {
        for (NodeId k = j + 1; k < n; ++k) {
            if (dist[j][k] >= kUnreachable) continue;
            std::fill(node_count.begin(), node_count.end(), 0);
            edge_count.clear();
            std::int64_t paths = 0;

            path.assign(1, j);
            std::function<void(NodeId)> extend = [&](NodeId cur) {
                if (cur == k) {
                    ++paths;
                    if (paths > 2'000'000)
                        throw std::runtime_error("path enumeration blew up");
                    for (std::size_t i = 1; i + 1 < path.size(); ++i) ++node_count[path[i]];
                    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                        const auto e = std::minmax(path[i], path[i + 1]);
                        ++edge_count[{e.first, e.second}];
                    }
                    return;
                }
                for (NodeId next : g.neighbors(cur)) {
                    if (dist[next][k] == dist[cur][k] - 1) {
                        path.push_back(next);
                        extend(next);
                        path.pop_back();
                    }
                }
            };
            extend(j);

            for (NodeId v = 0; v < n; ++v)
                if (node_count[v] > 0)
                    result.node_scores[v] += static_cast<double>(node_count[v]) / paths;
            for (const auto& [e, c] : edge_count)
                result.edge_scores[e] += static_cast<double>(c) / paths;
        }
    }
    return result;
}

// Exact distribution evolution for SIS (2^N states) and SIR (3^N states)
// under the same synchronous convention as the simulator: infections read the
// previous step's infected set, recoveries apply to previously infected
// nodes.
struct MarkovTrace {
    std::vector<double> i_mean;
    std::vector<double> i_var;
};

inline MarkovTrace markov_sis(const Graph& g, double beta, double delta,
                              const std::vector<NodeId>& initial, int steps) {
    const int n = g.node_count();
    const std::size_t num_states = std::size_t{1} << n;
    std::vector<double> p(num_states, 0.0), next_p(num_states);
    std::size_t start = 0;
    for (NodeId v : initial) start |= std::size_t{1} << v;
    p[start] = 1.0;

    MarkovTrace trace;
    for (int step = 0; step <= steps; ++step) {
        double mean = 0.0, second = 0.0;
        for (std::size_t s = 0; s < num_states; ++s) {
            if (p[s] == 0.0) continue;
            const int infected = std::popcount(s);
            mean += p[s] * infected;
            second += p[s] * infected * infected;
        }
        trace.i_mean.push_back(mean);
        trace.i_var.push_back(std::max(0.0, second - mean * mean));
        if (step == steps) break;

        std::fill(next_p.begin(), next_p.end(), 0.0);
        for (std::size_t s = 0; s < num_states; ++s) {
            if (p[s] == 0.0) continue;
            // Per-node independent transition probabilities given state s.
            std::vector<double> flip(n);  // P(node toggles)
            for (int v = 0; v < n; ++v) {
                if (s >> v & 1) {
                    flip[v] = delta;  // I -> S
                } else {
                    int exposed = 0;
                    for (NodeId w : g.neighbors(v)) exposed += (s >> w) & 1;
                    flip[v] = 1.0 - std::pow(1.0 - beta, exposed);  // S -> I
                }
            }
            // Enumerate toggle subsets of the genuinely stochastic nodes;
            // certain flips are folded into the base state.
            std::vector<int> stochastic;
            std::size_t forced = s;
            for (int v = 0; v < n; ++v) {
                if (flip[v] >= 1.0)
                    forced ^= std::size_t{1} << v;
                else if (flip[v] > 0.0)
                    stochastic.push_back(v);
            }
            const std::size_t subsets = std::size_t{1} << stochastic.size();
            for (std::size_t mask = 0; mask < subsets; ++mask) {
                double prob = p[s];
                std::size_t state = forced;
                for (std::size_t i = 0; i < stochastic.size(); ++i) {
                    const int v = stochastic[i];
                    if (mask >> i & 1) {
                        prob *= flip[v];
                        state ^= std::size_t{1} << v;
                    } else {
                        prob *= 1.0 - flip[v];
                    }
                }
                next_p[state] += prob;
            }
        }
        p.swap(next_p);
    }
    return trace;
}

inline MarkovTrace markov_sir(const Graph& g, double beta, double gamma,
                              const std::vector<NodeId>& initial, int steps) {
    const int n = g.node_count();
    std::size_t num_states = 1;
    for (int i = 0; i < n; ++i) num_states *= 3;
    std::vector<double> p(num_states, 0.0), next_p(num_states);

    std::vector<std::size_t> pow3(n + 1, 1);
    for (int i = 0; i < n; ++i) pow3[i + 1] = pow3[i] * 3;
    auto digit = [&](std::size_t s, int v) { return static_cast<int>(s / pow3[v] % 3); };

    std::size_t start = 0;
    for (NodeId v : initial) start += pow3[v];  // digit 1 = infected
    p[start] = 1.0;

    MarkovTrace trace;
    for (int step = 0; step <= steps; ++step) {
        double mean = 0.0, second = 0.0;
        for (std::size_t s = 0; s < num_states; ++s) {
            if (p[s] == 0.0) continue;
            int infected = 0;
            for (int v = 0; v < n; ++v) infected += digit(s, v) == 1;
            mean += p[s] * infected;
            second += p[s] * infected * infected;
        }
        trace.i_mean.push_back(mean);
        trace.i_var.push_back(std::max(0.0, second - mean * mean));
        if (step == steps) break;

        std::fill(next_p.begin(), next_p.end(), 0.0);
        for (std::size_t s = 0; s < num_states; ++s) {
            if (p[s] == 0.0) continue;
            // For each node: (probability of moving, target offset delta).
            std::vector<double> move(n, 0.0);
            std::vector<int> move_to(n, 0);
            for (int v = 0; v < n; ++v) {
                const int st = digit(s, v);
                if (st == 0) {
                    int exposed = 0;
                    for (NodeId w : g.neighbors(v)) exposed += digit(s, w) == 1;
                    move[v] = 1.0 - std::pow(1.0 - beta, exposed);
                    move_to[v] = 1;  // S -> I
                } else if (st == 1) {
                    move[v] = gamma;
                    move_to[v] = 2;  // I -> R
                }
            }
            std::vector<int> stochastic;
            std::size_t forced = s;
            for (int v = 0; v < n; ++v) {
                if (move[v] >= 1.0)
                    forced += pow3[v] * (move_to[v] - digit(s, v));
                else if (move[v] > 0.0)
                    stochastic.push_back(v);
            }
            const std::size_t subsets = std::size_t{1} << stochastic.size();
            for (std::size_t mask = 0; mask < subsets; ++mask) {
                double prob = p[s];
                std::size_t state = forced;
                for (std::size_t i = 0; i < stochastic.size(); ++i) {
                    const int v = stochastic[i];
                    if (mask >> i & 1) {
                        prob *= move[v];
                        state += pow3[v] * (move_to[v] - digit(s, v));
                    } else {
                        prob *= 1.0 - move[v];
                    }
                }
                next_p[state] += prob;
            }
        }
        p.swap(next_p);
    }
    return trace;
}

// Piecewise Simpson quadrature of weight(d) * pdf(d) over the mixture's
// support, split at each shift point where the density jumps.
inline double integrate_against_pdf(const gridnet::ExponentialMixture& mix,
                                    const std::function<double(double)>& weight,
                                    double tail_scales = 60.0) {
    std::vector<double> knots;
    for (const auto& [k, alpha] : mix.components()) knots.push_back(k);
    knots.push_back(mix.min_k() + tail_scales * mix.rate());
    std::sort(knots.begin(), knots.end());

    double total = 0.0;
    for (std::size_t piece = 0; piece + 1 < knots.size(); ++piece) {
        const double a = knots[piece], b = knots[piece + 1];
        if (b - a < 1e-15) continue;
        const int intervals = 4000;  // even
        const double h = (b - a) / intervals;
        // Open the left endpoint slightly: pdf is right-continuous at knots.
        double sum = weight(a) * mix.pdf_at(a + 1e-13) + weight(b) * mix.pdf_at(b);
        for (int i = 1; i < intervals; ++i) {
            const double x = a + i * h;
            sum += weight(x) * mix.pdf_at(x) * (i % 2 ? 4.0 : 2.0);
        }
        total += sum * h / 3.0;
    }
    return total;
}

// Least-squares fit y = a + b x; returns R^2.
inline double regression_r2(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double b = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = my + b * (x[i] - mx);
        ss_res += (y[i] - fit) * (y[i] - fit);
    }
    return 1.0 - ss_res / syy;
}

inline std::vector<double> ranks_with_ties(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> rank(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
        i = j + 1;
    }
    return rank;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = ranks_with_ties(a), rb = ranks_with_ties(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

// Random connected simple graph: random spanning tree plus extra edges.
inline Graph random_connected_graph(int n, int extra_edges, gridnet::Rng& rng) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 1; v < n; ++v)
        edges.emplace_back(static_cast<NodeId>(rng.below(v)), v);
    std::set<std::pair<NodeId, NodeId>> have(edges.begin(), edges.end());
    int attempts = 0;
    while (extra_edges > 0 && attempts < 200) {
        NodeId u = static_cast<NodeId>(rng.below(n));
        NodeId v = static_cast<NodeId>(rng.below(n));
        ++attempts;
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (have.emplace(u, v).second) {
            edges.emplace_back(u, v);
            --extra_edges;
        }
    }
    return Graph(n, edges);
}

}  // namespace oracles
