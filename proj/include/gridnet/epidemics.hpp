#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridnet/graph.hpp"

namespace gridnet {

enum class EpidemicModel { SIS, SIR };

// Discrete-time contagion parameters. Per step, every infected node exposes
// each susceptible neighbor independently with probability beta (a node with
// j infected neighbors is infected with probability 1-(1-beta)^j), then the
// previously infected either return to susceptible (SIS, probability delta)
// or are removed (SIR, probability gamma). Nodes infected this step start
// transmitting next step.
struct EpidemicConfig {
    EpidemicModel model = EpidemicModel::SIS;
    double beta = 0.0;
    std::optional<double> delta;  // SIS only
    std::optional<double> gamma;  // SIR only
    // Explicit seed nodes win over initial_count; initial_count = 0 means
    // the default of 1% of nodes (at least 1), drawn per trial.
    std::optional<std::vector<NodeId>> initial_nodes;
    NodeId initial_count = 0;
    int steps = 1;
    int trials = 1;
    std::uint64_t rng_seed = 0;

    void validate(NodeId node_count) const;
    NodeId resolved_initial_count(NodeId node_count) const;
};

// Per-step averages over trials; index 0 is the initial condition so each
// vector has steps+1 entries. r_mean is all zeros for SIS.
struct EpidemicTrace {
    NodeId node_count = 0;
    std::vector<double> s_mean;
    std::vector<double> i_mean;
    std::vector<double> r_mean;
    std::vector<double> i_std;  // population stddev of the infected count
};

EpidemicTrace simulate(const Graph& g, const EpidemicConfig& cfg, int threads = 0);

struct TraceDivergence {
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

// Per-step absolute difference of infected fractions. Horizons must match.
TraceDivergence compare_traces(const EpidemicTrace& a, const EpidemicTrace& b);

// Nodes ever infected in a single SIR trial. The trial uses draws addressed
// by (node, neighbor, infection age), so with a fixed trial seed the
// ever-infected set can only grow as beta grows.
std::vector<bool> sir_trial_ever_infected(const Graph& g, double beta, double gamma,
                                          const std::vector<NodeId>& initial,
                                          std::uint64_t trial_seed_value, int max_steps);

}  // namespace gridnet
