#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridnet/epidemics.hpp"
#include "gridnet/graph.hpp"
#include "gridnet/growth.hpp"
#include "gridnet/meanfield.hpp"
#include "gridnet/metrics.hpp"

namespace gridnet {

struct LoadReport {
    NodeId nodes = 0;
    std::int64_t edges = 0;
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_merged = 0;
    bool labels_remapped = false;  // non-integer labels mapped to dense ids
};

// Edge list: one "u v" pair per line, '#' starts a comment. Integer labels
// are mapped to dense ids by numeric value; other labels by first
// appearance, in which case a "<path>.idmap" sidecar records the mapping.
// A "# nodes N" directive (written by save_graph) preserves isolated nodes.
// Duplicate and reversed pairs merge; self-loops are dropped and counted.
Graph load_edgelist(const std::string& path, LoadReport* report = nullptr);

// Sparse complex triplets "row col re [im]", '%' or '#' comments. A
// %%MatrixMarket coordinate header (with its size line, 1-based indices and
// optional symmetric qualifier) is honored when present. Keeps edge (i, j),
// i != j, iff |Y_ij| > threshold, symmetrized by union; the diagonal is
// ignored.
Graph adjacency_from_admittance(const std::string& path, double threshold = 0.0,
                                LoadReport* report = nullptr);

void save_graph(const std::string& path, const Graph& g);

void save_histogram(const std::string& path, const DegreeHistogram& hist);
DegreeHistogram load_histogram(const std::string& path);

void save_trace(const std::string& path, const EpidemicTrace& trace);
EpidemicTrace load_trace(const std::string& path);

void save_mixture(const std::string& path, const ExponentialMixture& mix);
ExponentialMixture load_mixture(const std::string& path);

void save_growth_config(const std::string& path, const GrowthConfig& cfg);
GrowthConfig load_growth_config(const std::string& path);

void save_betweenness(const std::string& node_path, const std::string& edge_path,
                      const BetweennessResult& result);
void save_score_pdf(const std::string& path, const ScoreHistogram& hist);
void save_scaling(const std::string& path, const std::vector<ScalingRow>& rows);
void save_diameter(const std::string& path, const DiameterReport& report);

// Shortest decimal form that round-trips a double exactly.
std::string format_double(double x);

}  // namespace gridnet
