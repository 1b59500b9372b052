#include "gridnet/epidemics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "gridnet/parallel.hpp"
#include "gridnet/rng.hpp"

namespace gridnet {

namespace {

constexpr std::uint64_t kTransmitTag = 0x7472616e736d6974ULL;
constexpr std::uint64_t kRecoverTag = 0x7265636f76657221ULL;

enum Status : std::uint8_t { kSusceptible = 0, kInfected = 1, kRemoved = 2 };

std::vector<NodeId> draw_initial(const EpidemicConfig& cfg, NodeId n, Rng& rng) {
    if (cfg.initial_nodes) return *cfg.initial_nodes;
    const NodeId count = cfg.resolved_initial_count(n);
    // Partial Fisher-Yates over node ids.
    std::vector<NodeId> ids(n);
    for (NodeId v = 0; v < n; ++v) ids[v] = v;
    for (NodeId i = 0; i < count; ++i) {
        const NodeId j = i + static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(count);
    return ids;
}

struct TrialCounts {
    std::vector<std::int64_t> s, i, r;
};

// One SIS trial driven by a sequential stream: per step, one draw per exposed
// susceptible (ascending id), then one per previously infected node.
void run_sis_trial(const Graph& g, const EpidemicConfig& cfg, std::uint64_t seed,
                   TrialCounts& out) {
    const NodeId n = g.node_count();
    Rng rng(seed);
    std::vector<std::uint8_t> state(n, kSusceptible);
    for (NodeId v : draw_initial(cfg, n, rng)) state[v] = kInfected;

    const double delta = *cfg.delta;
    std::vector<std::uint8_t> next(n);
    for (int step = 0; step <= cfg.steps; ++step) {
        std::int64_t infected = 0;
        for (NodeId v = 0; v < n; ++v) infected += state[v] == kInfected;
        out.s[step] += n - infected;
        out.i[step] += infected;
        if (step == cfg.steps) break;

        next = state;
        for (NodeId v = 0; v < n; ++v) {
            if (state[v] != kSusceptible) continue;
            int exposed = 0;
            for (NodeId w : g.neighbors(v)) exposed += state[w] == kInfected;
            if (exposed == 0) continue;
            const double p = 1.0 - std::pow(1.0 - cfg.beta, exposed);
            if (rng.uniform01() < p) next[v] = kInfected;
        }
        for (NodeId v = 0; v < n; ++v) {
            if (state[v] != kInfected) continue;
            if (rng.uniform01() < delta) next[v] = kSusceptible;
        }
        state.swap(next);
    }
}

// One SIR trial. Transmission and recovery draws are addressed by infection
// age rather than taken from a stream, which couples runs across beta values
// (see sir_trial_ever_infected). A node infected at step t transmits from
// step t+1 (age 1) until its recovery draw fires.
void run_sir_trial(const Graph& g, const EpidemicConfig& cfg, std::uint64_t seed,
                   TrialCounts* out, std::vector<bool>* ever_infected, int max_steps) {
    const NodeId n = g.node_count();
    Rng rng(seed);
    std::vector<std::uint8_t> state(n, kSusceptible);
    std::vector<int> infected_at(n, -1);
    std::vector<NodeId> active;  // currently infected, ascending
    for (NodeId v : draw_initial(cfg, n, rng)) {
        if (state[v] == kSusceptible) {
            state[v] = kInfected;
            infected_at[v] = 0;
            active.push_back(v);
        }
    }
    std::sort(active.begin(), active.end());
    if (ever_infected) {
        ever_infected->assign(n, false);
        for (NodeId v : active) (*ever_infected)[v] = true;
    }

    const double gamma = *cfg.gamma;
    for (int step = 0; step <= max_steps; ++step) {
        if (out) {
            std::int64_t i_count = static_cast<std::int64_t>(active.size());
            std::int64_t r_count = 0;
            for (NodeId v = 0; v < n; ++v) r_count += state[v] == kRemoved;
            out->s[step] += n - i_count - r_count;
            out->i[step] += i_count;
            out->r[step] += r_count;
        }
        if (step == max_steps || active.empty()) {
            if (out && step < max_steps) {
                // Epidemic over: remaining steps keep the same counts.
                std::int64_t r_count = 0;
                for (NodeId v = 0; v < n; ++v) r_count += state[v] == kRemoved;
                for (int rest = step + 1; rest <= max_steps; ++rest) {
                    out->s[rest] += n - r_count;
                    out->r[rest] += r_count;
                }
            }
            break;
        }

        std::vector<NodeId> newly_infected;
        for (NodeId v : active) {
            const std::uint64_t age = static_cast<std::uint64_t>(step + 1 - infected_at[v]);
            for (NodeId w : g.neighbors(v)) {
                if (state[w] != kSusceptible) continue;
                if (keyed_u01(seed ^ kTransmitTag, static_cast<std::uint64_t>(v),
                              static_cast<std::uint64_t>(w), age) < cfg.beta) {
                    state[w] = kInfected;
                    infected_at[w] = step + 1;
                    newly_infected.push_back(w);
                    if (ever_infected) (*ever_infected)[w] = true;
                }
            }
        }
        std::vector<NodeId> still_active;
        for (NodeId v : active) {
            const std::uint64_t age = static_cast<std::uint64_t>(step + 1 - infected_at[v]);
            if (keyed_u01(seed ^ kRecoverTag, static_cast<std::uint64_t>(v), age, 0) < gamma)
                state[v] = kRemoved;
            else
                still_active.push_back(v);
        }
        std::sort(newly_infected.begin(), newly_infected.end());
        still_active.insert(still_active.end(), newly_infected.begin(), newly_infected.end());
        std::sort(still_active.begin(), still_active.end());
        active.swap(still_active);
    }
}

}  // namespace

void EpidemicConfig::validate(NodeId node_count) const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(beta))
        throw std::invalid_argument("epidemic config: beta must be in [0, 1]");
    if (model == EpidemicModel::SIS) {
        if (!delta || gamma)
            throw std::invalid_argument("epidemic config: SIS uses delta (and not gamma)");
        if (!in_unit(*delta))
            throw std::invalid_argument("epidemic config: delta must be in [0, 1]");
    } else {
        if (!gamma || delta)
            throw std::invalid_argument("epidemic config: SIR uses gamma (and not delta)");
        if (!in_unit(*gamma))
            throw std::invalid_argument("epidemic config: gamma must be in [0, 1]");
    }
    if (steps < 1)
        throw std::invalid_argument("epidemic config: steps must be >= 1");
    if (trials < 1)
        throw std::invalid_argument("epidemic config: trials must be >= 1");
    if (initial_nodes) {
        if (initial_nodes->empty())
            throw std::invalid_argument("epidemic config: empty initial set");
        for (NodeId v : *initial_nodes)
            if (v < 0 || v >= node_count)
                throw std::invalid_argument("epidemic config: initial node outside graph");
    } else if (initial_count < 0 || initial_count > node_count) {
        throw std::invalid_argument("epidemic config: initial count out of range");
    }
}

NodeId EpidemicConfig::resolved_initial_count(NodeId node_count) const {
    if (initial_count > 0) return std::min(initial_count, node_count);
    return std::max<NodeId>(1, node_count / 100);
}

EpidemicTrace simulate(const Graph& g, const EpidemicConfig& cfg, int threads) {
    cfg.validate(g.node_count());
    const int horizon = cfg.steps + 1;
    const NodeId n = g.node_count();

    std::vector<std::int64_t> s_sum(horizon, 0), i_sum(horizon, 0), r_sum(horizon, 0),
        i_sq_sum(horizon, 0);
    std::mutex merge_mutex;

    parallel_chunks(cfg.trials, threads, 16, [&](std::int64_t begin, std::int64_t end) {
        TrialCounts acc;
        acc.s.assign(horizon, 0);
        acc.i.assign(horizon, 0);
        acc.r.assign(horizon, 0);
        std::vector<std::int64_t> sq(horizon, 0);
        TrialCounts one;
        for (std::int64_t t = begin; t < end; ++t) {
            one.s.assign(horizon, 0);
            one.i.assign(horizon, 0);
            one.r.assign(horizon, 0);
            const std::uint64_t seed = trial_seed(cfg.rng_seed, static_cast<std::uint64_t>(t));
            if (cfg.model == EpidemicModel::SIS)
                run_sis_trial(g, cfg, seed, one);
            else
                run_sir_trial(g, cfg, seed, &one, nullptr, cfg.steps);
            for (int step = 0; step < horizon; ++step) {
                acc.s[step] += one.s[step];
                acc.i[step] += one.i[step];
                acc.r[step] += one.r[step];
                sq[step] += one.i[step] * one.i[step];
            }
        }
        // Integer sums merge exactly in any order.
        std::lock_guard lock(merge_mutex);
        for (int step = 0; step < horizon; ++step) {
            s_sum[step] += acc.s[step];
            i_sum[step] += acc.i[step];
            r_sum[step] += acc.r[step];
            i_sq_sum[step] += sq[step];
        }
    });

    EpidemicTrace trace;
    trace.node_count = n;
    trace.s_mean.resize(horizon);
    trace.i_mean.resize(horizon);
    trace.r_mean.resize(horizon);
    trace.i_std.resize(horizon);
    const double trials = cfg.trials;
    for (int step = 0; step < horizon; ++step) {
        trace.s_mean[step] = s_sum[step] / trials;
        trace.i_mean[step] = i_sum[step] / trials;
        trace.r_mean[step] = r_sum[step] / trials;
        const double var = std::max(0.0, i_sq_sum[step] / trials - trace.i_mean[step] * trace.i_mean[step]);
        trace.i_std[step] = std::sqrt(var);
    }
    return trace;
}

TraceDivergence compare_traces(const EpidemicTrace& a, const EpidemicTrace& b) {
    if (a.i_mean.size() != b.i_mean.size())
        throw std::invalid_argument("compare_traces: horizon mismatch");
    if (a.node_count <= 0 || b.node_count <= 0)
        throw std::invalid_argument("compare_traces: empty trace");
    TraceDivergence div;
    for (std::size_t step = 0; step < a.i_mean.size(); ++step) {
        const double gap = std::abs(a.i_mean[step] / a.node_count - b.i_mean[step] / b.node_count);
        div.max_abs = std::max(div.max_abs, gap);
        div.mean_abs += gap;
    }
    div.mean_abs /= static_cast<double>(a.i_mean.size());
    return div;
}

std::vector<bool> sir_trial_ever_infected(const Graph& g, double beta, double gamma,
                                          const std::vector<NodeId>& initial,
                                          std::uint64_t trial_seed_value, int max_steps) {
    EpidemicConfig cfg;
    cfg.model = EpidemicModel::SIR;
    cfg.beta = beta;
    cfg.gamma = gamma;
    cfg.initial_nodes = initial;
    cfg.steps = max_steps;
    cfg.validate(g.node_count());
    std::vector<bool> ever;
    run_sir_trial(g, cfg, trial_seed_value, nullptr, &ever, max_steps);
    return ever;
}

}  // namespace gridnet
