#include "gridnet/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gridnet/epidemics.hpp"
#include "gridnet/fitting.hpp"
#include "gridnet/graph.hpp"
#include "gridnet/growth.hpp"
#include "gridnet/io.hpp"
#include "gridnet/meanfield.hpp"
#include "gridnet/metrics.hpp"

namespace gridnet::cli {

namespace {

struct GlobalOptions {
    int threads = 0;
    std::string out_dir;
    bool verbose = false;
};

std::string default_out_dir() {
    const char* env = std::getenv("GRIDNET_OUT_DIR");
    return env && *env ? env : ".";
}

std::string resolve(const GlobalOptions& g, const std::string& path) {
    if (path.empty() || path.front() == '/' || g.out_dir.empty()) return path;
    return (std::filesystem::path(g.out_dir) / path).string();
}

// Reproducibility sidecar: the exact configuration next to each artifact.
// Deliberately no timestamps so identical invocations produce identical
// files.
void write_manifest(const std::string& artifact_path, const std::string& config_text) {
    std::ofstream out(artifact_path + ".manifest");
    out << "tool gridnet 1.0\n" << config_text;
}

KDistribution k_dist_from_flags(int k_const, std::vector<int>& support,
                                std::vector<double>& probs) {
    if (!support.empty()) {
        if (probs.empty()) probs.assign(support.size(), 1.0 / support.size());
        if (probs.size() != support.size())
            throw std::invalid_argument("--k-probs must match --k-support in length");
        std::vector<std::pair<int, double>> dist;
        for (std::size_t i = 0; i < support.size(); ++i) dist.emplace_back(support[i], probs[i]);
        return KDistribution(dist);
    }
    return KDistribution::constant(k_const);
}

std::string k_dist_text(const KDistribution& k) {
    std::ostringstream ss;
    ss << "k_support";
    for (const auto& [ki, a] : k.support()) ss << ' ' << ki;
    ss << "\nk_probs";
    for (const auto& [ki, a] : k.support()) ss << ' ' << format_double(a);
    return ss.str();
}

int cmd_generate(const GlobalOptions& g, const GrowthConfig& cfg, const std::string& out,
                 const std::string& positions_out, const std::string& degrees_out) {
    const Graph graph = grow(cfg);
    const std::string path = resolve(g, out);
    save_graph(path, graph);
    {
        std::ostringstream manifest;
        manifest << "command generate\n";
        manifest << "radius " << format_double(cfg.radius) << '\n';
        if (cfg.density)
            manifest << "density " << format_double(*cfg.density) << '\n';
        else
            manifest << "nodes " << cfg.node_count << '\n';
        manifest << k_dist_text(cfg.k_dist) << '\n';
        manifest << "seed " << cfg.rng_seed << '\n';
        write_manifest(path, manifest.str());
    }
    if (!positions_out.empty()) {
        std::ofstream pos(resolve(g, positions_out));
        pos << "node,x,y\n";
        for (NodeId v = 0; v < graph.node_count(); ++v)
            pos << v << ',' << format_double(graph.positions()[v].x) << ','
                << format_double(graph.positions()[v].y) << '\n';
    }
    if (!degrees_out.empty()) save_histogram(resolve(g, degrees_out), degree_histogram(graph));
    if (g.verbose)
        std::cerr << "generated " << graph.node_count() << " nodes, " << graph.edge_count()
                  << " edges -> " << path << '\n';
    std::cout << "nodes " << graph.node_count() << "\nedges " << graph.edge_count() << '\n';
    return 0;
}

int cmd_analyze(const GlobalOptions& g, const std::string& input, const std::string& metric,
                const std::string& out_prefix, int bins) {
    LoadReport report;
    const Graph graph = load_edgelist(input, &report);
    if (g.verbose)
        std::cerr << "loaded " << report.nodes << " nodes, " << report.edges << " edges ("
                  << report.self_loops_dropped << " self-loops dropped, "
                  << report.duplicates_merged << " duplicates merged)\n";

    const std::string prefix = resolve(g, out_prefix);
    if (metric == "degree") {
        const DegreeHistogram hist = degree_histogram(graph);
        save_histogram(prefix + "_degree.csv", hist);
        std::cout << "nodes " << hist.total << "\ndistinct_degrees " << hist.bins.size() << '\n';
    } else if (metric == "diameter") {
        const DiameterReport d = diameter(graph, g.threads);
        save_diameter(prefix + "_diameter.csv", d);
        std::cout << "diameter " << d.diameter << "\nlargest_component "
                  << d.largest_component_size << "\ncomponents " << d.per_component.size() << '\n';
    } else if (metric == "betweenness") {
        const BetweennessResult b = betweenness(graph, g.threads);
        save_betweenness(prefix + "_node_betweenness.csv", prefix + "_edge_betweenness.csv", b);
        if (bins >= 2) {
            save_score_pdf(prefix + "_node_betweenness_pdf.csv",
                           betweenness_pdf(b.node_scores, bins));
            save_score_pdf(prefix + "_edge_betweenness_pdf.csv",
                           betweenness_pdf(b.edge_scores, bins));
        }
        std::cout << "nodes " << b.node_scores.size() << "\nedges " << b.edge_scores.size()
                  << "\nrestricted_to_largest_component "
                  << (b.restricted_to_largest_component ? 1 : 0) << '\n';
    } else {
        throw CLI::ValidationError("--metric must be degree, diameter or betweenness");
    }
    write_manifest(prefix, "command analyze\ninput " + input + "\nmetric " + metric + "\n");
    return 0;
}

int cmd_fit(const GlobalOptions& g, const std::string& input, FitOptions options,
            const std::string& out_prefix) {
    LoadReport report;
    const Graph graph = load_edgelist(input, &report);
    const DegreeHistogram hist = degree_histogram(graph);
    // The search space cannot exceed the data; clamp instead of failing.
    const int max_observed = hist.bins.empty() ? 1 : hist.bins.rbegin()->first;
    if (options.k_max == 0 || options.k_max > max_observed) options.k_max = max_observed;
    options.threads = g.threads;

    const FitResult fit = fit_mixture(hist, options);
    const std::string prefix = resolve(g, out_prefix);
    save_mixture(prefix + ".mixture", fit.mixture);
    {
        std::ofstream out(prefix + "_fit.csv");
        out << "degree,empirical_pdf,fitted_pdf\n";
        const double total = static_cast<double>(hist.total);
        for (const auto& [d, count] : hist.bins)
            out << d << ',' << format_double(count / total) << ','
                << format_double(fit.mixture.bin_mass(d)) << '\n';
    }
    std::ostringstream manifest;
    manifest << "command fit\ninput " << input << "\nmax_components " << options.max_components
             << "\nk_min " << options.k_min << "\nk_max " << options.k_max << "\nmode "
             << (options.mode == FitOptions::Mode::Model ? "model" : "free") << '\n';
    write_manifest(prefix, manifest.str());

    std::cout << "components " << fit.mixture.components().size() << "\nrate "
              << format_double(fit.mixture.rate()) << "\nloss " << format_double(fit.loss)
              << "\nks " << format_double(fit.ks_stat) << "\nsearched " << fit.support_searched
              << '\n';
    return 0;
}

int cmd_epidemic(const GlobalOptions& g, const std::string& input, EpidemicConfig cfg,
                 const std::string& out) {
    const Graph graph = load_edgelist(input);
    const EpidemicTrace trace = simulate(graph, cfg, g.threads);
    const std::string path = resolve(g, out);
    save_trace(path, trace);
    std::ostringstream manifest;
    manifest << "command epidemic\ninput " << input << "\nmodel "
             << (cfg.model == EpidemicModel::SIS ? "sis" : "sir") << "\nbeta "
             << format_double(cfg.beta) << '\n';
    if (cfg.delta) manifest << "delta " << format_double(*cfg.delta) << '\n';
    if (cfg.gamma) manifest << "gamma " << format_double(*cfg.gamma) << '\n';
    manifest << "steps " << cfg.steps << "\ntrials " << cfg.trials << "\nseed " << cfg.rng_seed
             << '\n';
    write_manifest(path, manifest.str());
    std::cout << "final_infected_mean " << format_double(trace.i_mean.back()) << '\n';
    return 0;
}

int cmd_scaling(const GlobalOptions& g, const KDistribution& k_dist, std::vector<NodeId> sizes,
                int seeds_per_size, std::uint64_t seed, const std::string& out) {
    const auto rows = diameter_scaling(k_dist, sizes, seeds_per_size, seed, 1.0, g.threads);
    const std::string path = resolve(g, out);
    save_scaling(path, rows);
    std::ostringstream manifest;
    manifest << "command scaling\n" << k_dist_text(k_dist) << "\nseeds_per_size " << seeds_per_size
             << "\nseed " << seed << '\n';
    write_manifest(path, manifest.str());
    for (const auto& row : rows)
        std::cout << row.n << ' ' << format_double(row.mean_diameter) << ' '
                  << format_double(row.stddev) << '\n';
    return 0;
}

// Builds the matched twin of a real grid (same node count, K distribution
// from the fitted mixture) and emits side-by-side structure, plus SIS traces
// when requested.
int cmd_compare(const GlobalOptions& g, const std::string& real_path, std::uint64_t seed,
                int max_components, int bins, bool with_epidemic, double beta, double delta,
                int steps, int trials, const std::string& out_prefix) {
    LoadReport report;
    const Graph real = load_edgelist(real_path, &report);
    const DegreeHistogram real_hist = degree_histogram(real);

    FitOptions options;
    options.max_components = max_components;
    options.k_max = 0;
    options.threads = g.threads;
    const FitResult fit = fit_mixture(real_hist, options);

    KDistribution k_dist(fit.mixture.components());
    GrowthConfig cfg;
    cfg.node_count = real.node_count();
    cfg.k_dist = k_dist;
    cfg.rng_seed = seed;
    const Graph twin = grow(cfg);
    const DegreeHistogram twin_hist = degree_histogram(twin);

    const std::string prefix = resolve(g, out_prefix);
    save_mixture(prefix + "_fit.mixture", fit.mixture);
    save_graph(prefix + "_twin.edges", twin);
    save_histogram(prefix + "_real_degree.csv", real_hist);
    save_histogram(prefix + "_twin_degree.csv", twin_hist);

    // Degree TV distance between the two empirical laws.
    double tv = 0.0;
    {
        std::map<int, double> diff;
        for (const auto& [d, c] : real_hist.bins) diff[d] += c / double(real_hist.total);
        for (const auto& [d, c] : twin_hist.bins) diff[d] -= c / double(twin_hist.total);
        for (const auto& [d, x] : diff) tv += std::abs(x);
        tv *= 0.5;
    }

    const DiameterReport real_diam = diameter(real, g.threads);
    const DiameterReport twin_diam = diameter(twin, g.threads);

    const BetweennessResult real_btw = betweenness(real, g.threads);
    const BetweennessResult twin_btw = betweenness(twin, g.threads);
    save_score_pdf(prefix + "_real_node_betweenness_pdf.csv",
                   betweenness_pdf(real_btw.node_scores, bins));
    save_score_pdf(prefix + "_twin_node_betweenness_pdf.csv",
                   betweenness_pdf(twin_btw.node_scores, bins));
    save_score_pdf(prefix + "_real_edge_betweenness_pdf.csv",
                   betweenness_pdf(real_btw.edge_scores, bins));
    save_score_pdf(prefix + "_twin_edge_betweenness_pdf.csv",
                   betweenness_pdf(twin_btw.edge_scores, bins));

    std::ostringstream summary;
    summary << "real_nodes " << real.node_count() << "\nreal_edges " << real.edge_count()
            << "\ntwin_edges " << twin.edge_count() << "\ndegree_tv " << format_double(tv)
            << "\nreal_diameter " << real_diam.diameter << "\ntwin_diameter "
            << twin_diam.diameter << "\nfit_ks " << format_double(fit.ks_stat) << '\n';

    if (with_epidemic) {
        EpidemicConfig ecfg;
        ecfg.model = EpidemicModel::SIS;
        ecfg.beta = beta;
        ecfg.delta = delta;
        ecfg.steps = steps;
        ecfg.trials = trials;
        ecfg.rng_seed = seed;
        const EpidemicTrace real_trace = simulate(real, ecfg, g.threads);
        const EpidemicTrace twin_trace = simulate(twin, ecfg, g.threads);
        save_trace(prefix + "_real_sis.csv", real_trace);
        save_trace(prefix + "_twin_sis.csv", twin_trace);
        const TraceDivergence div = compare_traces(real_trace, twin_trace);
        summary << "sis_trace_max_gap " << format_double(div.max_abs) << "\nsis_trace_mean_gap "
                << format_double(div.mean_abs) << '\n';
    }

    {
        std::ofstream out(prefix + "_summary.txt");
        out << summary.str();
    }
    write_manifest(prefix, "command compare\nreal " + real_path + "\nseed " +
                               std::to_string(seed) + "\n");
    std::cout << summary.str();
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Spatial growth model for power-grid topologies: generation, metrics, "
                 "degree-law fitting and infection propagation"};
    app.require_subcommand(1);

    GlobalOptions global;
    global.out_dir = default_out_dir();
    app.add_option("--threads", global.threads, "Worker threads (0 = hardware)");
    app.add_option("--out-dir", global.out_dir,
                   "Directory for outputs (default $GRIDNET_OUT_DIR or .)");
    app.add_flag("-v,--verbose", global.verbose, "Chatty progress on stderr");

    // generate
    auto* gen = app.add_subcommand("generate", "Grow a network and write its edge list");
    NodeId gen_nodes = 0;
    double gen_radius = 1.0, gen_density = 0.0;
    int gen_k = 2;
    std::vector<int> gen_support;
    std::vector<double> gen_probs;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "graph.edges", gen_positions, gen_degrees, gen_config;
    gen->add_option("--nodes", gen_nodes, "Number of nodes");
    gen->add_option("--density", gen_density,
                    "Poisson intensity per unit area; node count is drawn, not fixed");
    gen->add_option("--radius", gen_radius, "Disk radius");
    gen->add_option("--k", gen_k, "Constant links per new node");
    gen->add_option("--k-support", gen_support, "Support of the K distribution")->delimiter(',');
    gen->add_option("--k-probs", gen_probs, "Probabilities for --k-support")->delimiter(',');
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "Edge list output path");
    gen->add_option("--positions", gen_positions, "Also write node positions CSV");
    gen->add_option("--degrees", gen_degrees, "Also write the degree histogram CSV");
    gen->add_option("--config", gen_config, "Read a growth config document instead of flags");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Structural metrics of an edge list");
    std::string an_input, an_metric = "degree", an_out = "analysis";
    int an_bins = 0;
    analyze->add_option("--input", an_input, "Edge list path")->required();
    analyze->add_option("--metric", an_metric, "degree | diameter | betweenness");
    analyze->add_option("--out", an_out, "Output prefix");
    analyze->add_option("--bins", an_bins, "Also write betweenness score pdfs with this many bins");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit an exponential mixture to a degree histogram");
    std::string fit_input, fit_out = "fit", fit_mode = "model";
    int fit_max_components = 3, fit_k_min = 1, fit_k_max = 0;
    fit->add_option("--input", fit_input, "Edge list path")->required();
    fit->add_option("--max-components", fit_max_components, "1..4 mixture components");
    fit->add_option("--k-min", fit_k_min, "Smallest candidate shift degree");
    fit->add_option("--k-max", fit_k_max, "Largest candidate shift degree (0 = max observed)");
    fit->add_option("--mode", fit_mode, "model (rate tied to mean K) | free");
    fit->add_option("--out", fit_out, "Output prefix");

    // epidemic
    auto* epi = app.add_subcommand("epidemic", "SIS/SIR propagation on an edge list");
    std::string epi_input, epi_model = "sis", epi_out = "trace.csv";
    double epi_beta = 0.3, epi_delta = -1.0, epi_gamma = -1.0;
    int epi_steps = 100, epi_trials = 100;
    NodeId epi_initial_count = 0;
    std::vector<NodeId> epi_initial_nodes;
    std::uint64_t epi_seed = 1;
    epi->add_option("--input", epi_input, "Edge list path")->required();
    epi->add_option("--model", epi_model, "sis | sir");
    epi->add_option("--beta", epi_beta, "Per-edge per-step transmission probability");
    epi->add_option("--delta", epi_delta, "SIS recovery probability");
    epi->add_option("--gamma", epi_gamma, "SIR removal probability");
    epi->add_option("--steps", epi_steps, "Horizon");
    epi->add_option("--trials", epi_trials, "Monte Carlo trials");
    epi->add_option("--initial-count", epi_initial_count,
                    "Randomly infected nodes at start (0 = 1% of nodes)");
    epi->add_option("--initial-nodes", epi_initial_nodes, "Explicit initial infected set")
        ->delimiter(',');
    epi->add_option("--seed", epi_seed, "RNG seed");
    epi->add_option("--out", epi_out, "Trace CSV path");

    // scaling
    auto* scaling = app.add_subcommand("scaling", "Mean diameter of grown graphs per size");
    int sc_k = 2, sc_seeds = 10;
    std::vector<int> sc_support;
    std::vector<double> sc_probs;
    std::vector<NodeId> sc_sizes;
    std::uint64_t sc_seed = 1;
    std::string sc_out = "scaling.csv";
    scaling->add_option("--k", sc_k, "Constant links per new node");
    scaling->add_option("--k-support", sc_support, "Support of the K distribution")->delimiter(',');
    scaling->add_option("--k-probs", sc_probs, "Probabilities for --k-support")->delimiter(',');
    scaling->add_option("--sizes", sc_sizes, "Node counts")->required()->delimiter(',');
    scaling->add_option("--seeds-per-size", sc_seeds, "Independent seeds per size");
    scaling->add_option("--seed", sc_seed, "Base seed");
    scaling->add_option("--out", sc_out, "CSV output path");

    // compare
    auto* compare = app.add_subcommand("compare", "Real grid vs generated twin");
    std::string cmp_real, cmp_out = "compare";
    std::uint64_t cmp_seed = 1;
    int cmp_max_components = 3, cmp_bins = 30, cmp_steps = 50, cmp_trials = 200;
    double cmp_beta = 0.3, cmp_delta = 0.2;
    bool cmp_epidemic = false;
    compare->add_option("--real", cmp_real, "Real grid edge list")->required();
    compare->add_option("--seed", cmp_seed, "Twin growth / epidemic seed");
    compare->add_option("--max-components", cmp_max_components, "Fit components");
    compare->add_option("--bins", cmp_bins, "Betweenness pdf bins");
    compare->add_flag("--epidemic", cmp_epidemic, "Also compare SIS traces");
    compare->add_option("--beta", cmp_beta, "SIS beta for --epidemic");
    compare->add_option("--delta", cmp_delta, "SIS delta for --epidemic");
    compare->add_option("--steps", cmp_steps, "SIS horizon for --epidemic");
    compare->add_option("--trials", cmp_trials, "SIS trials for --epidemic");
    compare->add_option("--out", cmp_out, "Output prefix");

    try {
        app.parse(argc, argv);

        if (gen->parsed()) {
            GrowthConfig cfg;
            if (!gen_config.empty()) {
                cfg = load_growth_config(gen_config);
                if (gen->count("--seed")) cfg.rng_seed = gen_seed;
            } else {
                cfg.radius = gen_radius;
                cfg.node_count = gen_nodes;
                if (gen->count("--density")) cfg.density = gen_density;
                cfg.k_dist = k_dist_from_flags(gen_k, gen_support, gen_probs);
                cfg.rng_seed = gen_seed;
            }
            return cmd_generate(global, cfg, gen_out, gen_positions, gen_degrees);
        }
        if (analyze->parsed()) return cmd_analyze(global, an_input, an_metric, an_out, an_bins);
        if (fit->parsed()) {
            FitOptions options;
            options.max_components = fit_max_components;
            options.k_min = fit_k_min;
            options.k_max = fit_k_max;
            if (fit_mode == "model")
                options.mode = FitOptions::Mode::Model;
            else if (fit_mode == "free")
                options.mode = FitOptions::Mode::Free;
            else
                throw CLI::ValidationError("--mode must be model or free");
            return cmd_fit(global, fit_input, options, fit_out);
        }
        if (epi->parsed()) {
            EpidemicConfig cfg;
            if (epi_model == "sis")
                cfg.model = EpidemicModel::SIS;
            else if (epi_model == "sir")
                cfg.model = EpidemicModel::SIR;
            else
                throw CLI::ValidationError("--model must be sis or sir");
            cfg.beta = epi_beta;
            if (epi_delta >= 0.0) cfg.delta = epi_delta;
            if (epi_gamma >= 0.0) cfg.gamma = epi_gamma;
            if (cfg.model == EpidemicModel::SIS && !cfg.delta) cfg.delta = 0.2;
            if (cfg.model == EpidemicModel::SIR && !cfg.gamma) cfg.gamma = 0.2;
            cfg.steps = epi_steps;
            cfg.trials = epi_trials;
            cfg.initial_count = epi_initial_count;
            if (!epi_initial_nodes.empty()) cfg.initial_nodes = epi_initial_nodes;
            cfg.rng_seed = epi_seed;
            return cmd_epidemic(global, epi_input, cfg, epi_out);
        }
        if (scaling->parsed()) {
            const KDistribution k = k_dist_from_flags(sc_k, sc_support, sc_probs);
            return cmd_scaling(global, k, sc_sizes, sc_seeds, sc_seed, sc_out);
        }
        if (compare->parsed())
            return cmd_compare(global, cmp_real, cmp_seed, cmp_max_components, cmp_bins,
                               cmp_epidemic, cmp_beta, cmp_delta, cmp_steps, cmp_trials, cmp_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace gridnet::cli
