#include "gridnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gridnet {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line_no, const std::string& what) {
    fail(path, "line " + std::to_string(line_no) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(path, "cannot open for writing");
    return out;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

bool parse_int64(const std::string& s, std::int64_t& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

double require_double(const std::string& path, std::size_t line_no, const std::string& tok) {
    double v = 0.0;
    if (!parse_double(tok, v)) fail_line(path, line_no, "expected a number, got '" + tok + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    // %.17g always round-trips; prefer the shorter %.15g form when it does.
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    if (std::strtod(buf, nullptr) != x) std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Graph load_edgelist(const std::string& path, LoadReport* report) {
    std::ifstream in = open_in(path);

    struct RawEdge {
        std::string u, v;
    };
    std::vector<RawEdge> raw;
    std::int64_t declared_nodes = -1;
    std::string line;
    std::size_t line_no = 0;
    bool all_integer = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            // Recognize the "# nodes N" directive written by save_graph.
            const auto tokens = tokenize(line.substr(hash + 1));
            if (tokens.size() == 2 && tokens[0] == "nodes") {
                std::int64_t n = 0;
                if (parse_int64(tokens[1], n) && n >= 0) declared_nodes = n;
            }
            line = line.substr(0, hash);
        }
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            fail_line(path, line_no, "expected two node ids, got " + std::to_string(tokens.size()) +
                                         " tokens");
        std::int64_t dummy = 0;
        if (!parse_int64(tokens[0], dummy) || dummy < 0 || !parse_int64(tokens[1], dummy) ||
            dummy < 0)
            all_integer = false;
        raw.push_back({tokens[0], tokens[1]});
    }
    if (raw.empty() && declared_nodes < 0) fail(path, "no edges found");

    // Dense id assignment: numeric order for integer labels, first-appearance
    // order otherwise.
    std::map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    if (all_integer) {
        std::set<std::int64_t> values;
        for (const auto& e : raw) {
            std::int64_t u = 0, v = 0;
            parse_int64(e.u, u);
            parse_int64(e.v, v);
            values.insert(u);
            values.insert(v);
        }
        if (declared_nodes >= 0) {
            if (!values.empty() && (*values.rbegin() >= declared_nodes))
                fail(path, "edge id exceeds declared node count");
            for (std::int64_t v = 0; v < declared_nodes; ++v)
                ids.emplace(std::to_string(v), static_cast<NodeId>(v));
        } else {
            NodeId next = 0;
            for (std::int64_t v : values) ids.emplace(std::to_string(v), next++);
        }
    } else {
        for (const auto& e : raw) {
            for (const std::string* s : {&e.u, &e.v}) {
                if (ids.emplace(*s, static_cast<NodeId>(labels.size())).second)
                    labels.push_back(*s);
            }
        }
    }

    auto id_of = [&](const std::string& label) {
        if (all_integer) {
            std::int64_t v = 0;
            parse_int64(label, v);
            return ids.at(std::to_string(v));
        }
        return ids.at(label);
    };

    std::set<std::pair<NodeId, NodeId>> unique_edges;
    std::int64_t self_loops = 0, duplicates = 0;
    for (const auto& e : raw) {
        NodeId u = id_of(e.u), v = id_of(e.v);
        if (u == v) {
            ++self_loops;
            continue;
        }
        if (u > v) std::swap(u, v);
        if (!unique_edges.emplace(u, v).second) ++duplicates;
    }

    const NodeId n = declared_nodes >= 0 ? static_cast<NodeId>(declared_nodes)
                                         : static_cast<NodeId>(ids.size());
    std::vector<std::pair<NodeId, NodeId>> edges(unique_edges.begin(), unique_edges.end());
    Graph g(n, edges);

    if (report) {
        report->nodes = n;
        report->edges = g.edge_count();
        report->self_loops_dropped = self_loops;
        report->duplicates_merged = duplicates;
        report->labels_remapped = !all_integer;
    }
    if (!all_integer) {
        // Best effort: the sidecar documents the dense-id mapping.
        std::ofstream map_out(path + ".idmap");
        if (map_out) {
            map_out << "# dense_id label\n";
            for (std::size_t i = 0; i < labels.size(); ++i) map_out << i << ' ' << labels[i] << '\n';
        }
    }
    return g;
}

Graph adjacency_from_admittance(const std::string& path, double threshold, LoadReport* report) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;

    bool matrix_market = false;
    bool size_line_pending = false;
    std::int64_t declared_dim = -1;

    std::set<std::pair<NodeId, NodeId>> unique_edges;
    std::int64_t max_index = -1;
    std::int64_t diagonal_dropped = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("%%MatrixMarket", 0) == 0) {
            if (line.find("coordinate") == std::string::npos)
                fail_line(path, line_no, "only coordinate format is supported");
            matrix_market = true;
            size_line_pending = true;
            continue;
        }
        if (!line.empty() && (line[0] == '%' || line[0] == '#')) continue;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (size_line_pending) {
            if (tokens.size() != 3)
                fail_line(path, line_no, "expected 'rows cols nnz' size line");
            std::int64_t rows = 0, cols = 0;
            if (!parse_int64(tokens[0], rows) || !parse_int64(tokens[1], cols))
                fail_line(path, line_no, "bad size line");
            declared_dim = std::max(rows, cols);
            size_line_pending = false;
            continue;
        }

        if (tokens.size() < 3 || tokens.size() > 4)
            fail_line(path, line_no, "expected 'row col re [im]'");
        std::int64_t row = 0, col = 0;
        if (!parse_int64(tokens[0], row) || !parse_int64(tokens[1], col))
            fail_line(path, line_no, "non-integer index");
        const double re = require_double(path, line_no, tokens[2]);
        const double im = tokens.size() == 4 ? require_double(path, line_no, tokens[3]) : 0.0;
        if (matrix_market) {
            --row;
            --col;
        }
        if (row < 0 || col < 0) fail_line(path, line_no, "negative index");
        max_index = std::max({max_index, row, col});
        if (row == col) {
            ++diagonal_dropped;
            continue;
        }
        if (std::hypot(re, im) > threshold) {
            NodeId u = static_cast<NodeId>(row), v = static_cast<NodeId>(col);
            if (u > v) std::swap(u, v);
            unique_edges.emplace(u, v);
        }
    }

    if (max_index < 0 && declared_dim <= 0) fail(path, "no matrix entries found");
    const NodeId n = static_cast<NodeId>(std::max(declared_dim, max_index + 1));
    std::vector<std::pair<NodeId, NodeId>> edges(unique_edges.begin(), unique_edges.end());
    Graph g(n, edges);
    if (report) {
        report->nodes = n;
        report->edges = g.edge_count();
        report->self_loops_dropped = diagonal_dropped;
        report->duplicates_merged = 0;
        report->labels_remapped = false;
    }
    return g;
}

void save_graph(const std::string& path, const Graph& g) {
    std::ofstream out = open_out(path);
    out << "# nodes " << g.node_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (!out) fail(path, "write failed");
}

void save_histogram(const std::string& path, const DegreeHistogram& hist) {
    std::ofstream out = open_out(path);
    out << "degree,count\n";
    for (const auto& [d, count] : hist.bins) out << d << ',' << count << '\n';
    if (!out) fail(path, "write failed");
}

DegreeHistogram load_histogram(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) fail(path, "empty file");
    DegreeHistogram hist;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        int d = 0;
        long long count = 0;
        if (std::sscanf(line.c_str(), "%d,%lld", &d, &count) != 2)
            fail_line(path, line_no, "expected 'degree,count'");
        hist.bins[d] = count;
        hist.total += count;
    }
    return hist;
}

void save_trace(const std::string& path, const EpidemicTrace& trace) {
    std::ofstream out = open_out(path);
    out << "# nodes " << trace.node_count << '\n';
    out << "step,s_mean,i_mean,r_mean,i_std\n";
    for (std::size_t step = 0; step < trace.i_mean.size(); ++step) {
        out << step << ',' << format_double(trace.s_mean[step]) << ','
            << format_double(trace.i_mean[step]) << ',' << format_double(trace.r_mean[step]) << ','
            << format_double(trace.i_std[step]) << '\n';
    }
    if (!out) fail(path, "write failed");
}

EpidemicTrace load_trace(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    EpidemicTrace trace;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("# nodes ", 0) == 0) {
            trace.node_count = static_cast<NodeId>(std::stoll(line.substr(8)));
            continue;
        }
        if (line.empty() || line[0] == '#' || line.rfind("step,", 0) == 0) continue;
        long long step = 0;
        double s = 0, i = 0, r = 0, istd = 0;
        if (std::sscanf(line.c_str(), "%lld,%lf,%lf,%lf,%lf", &step, &s, &i, &r, &istd) != 5)
            fail_line(path, line_no, "expected 'step,s_mean,i_mean,r_mean,i_std'");
        trace.s_mean.push_back(s);
        trace.i_mean.push_back(i);
        trace.r_mean.push_back(r);
        trace.i_std.push_back(istd);
    }
    if (trace.i_mean.empty()) fail(path, "no trace rows found");
    return trace;
}

void save_mixture(const std::string& path, const ExponentialMixture& mix) {
    std::ofstream out = open_out(path);
    out << "# exponential mixture\n";
    out << "rate " << format_double(mix.rate()) << '\n';
    for (const auto& [k, alpha] : mix.components())
        out << "component " << k << ' ' << format_double(alpha) << '\n';
    if (!out) fail(path, "write failed");
}

ExponentialMixture load_mixture(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;
    double rate = -1.0;
    std::vector<std::pair<int, double>> comps;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "rate" && tokens.size() == 2) {
            rate = require_double(path, line_no, tokens[1]);
        } else if (tokens[0] == "component" && tokens.size() == 3) {
            std::int64_t k = 0;
            if (!parse_int64(tokens[1], k)) fail_line(path, line_no, "bad component degree");
            comps.emplace_back(static_cast<int>(k), require_double(path, line_no, tokens[2]));
        } else {
            fail_line(path, line_no, "expected 'rate <r>' or 'component <k> <alpha>'");
        }
    }
    if (comps.empty()) fail(path, "no components found");
    if (rate > 0.0) return ExponentialMixture(comps, rate);
    return ExponentialMixture(comps);
}

void save_growth_config(const std::string& path, const GrowthConfig& cfg) {
    std::ofstream out = open_out(path);
    out << "radius " << format_double(cfg.radius) << '\n';
    if (cfg.density)
        out << "density " << format_double(*cfg.density) << '\n';
    else
        out << "nodes " << cfg.node_count << '\n';
    out << "k_support";
    for (const auto& [k, alpha] : cfg.k_dist.support()) out << ' ' << k;
    out << "\nk_probs";
    for (const auto& [k, alpha] : cfg.k_dist.support()) out << ' ' << format_double(alpha);
    out << "\nseed " << cfg.rng_seed << '\n';
    if (!out) fail(path, "write failed");
}

GrowthConfig load_growth_config(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;
    GrowthConfig cfg;
    std::vector<int> support;
    std::vector<double> probs;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& key = tokens[0];
        if (key == "radius" && tokens.size() == 2) {
            cfg.radius = require_double(path, line_no, tokens[1]);
        } else if (key == "nodes" && tokens.size() == 2) {
            std::int64_t n = 0;
            if (!parse_int64(tokens[1], n)) fail_line(path, line_no, "bad node count");
            cfg.node_count = static_cast<NodeId>(n);
        } else if (key == "density" && tokens.size() == 2) {
            cfg.density = require_double(path, line_no, tokens[1]);
        } else if (key == "seed" && tokens.size() == 2) {
            cfg.rng_seed = std::stoull(tokens[1]);
        } else if (key == "k_support") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                std::int64_t k = 0;
                if (!parse_int64(tokens[i], k)) fail_line(path, line_no, "bad k value");
                support.push_back(static_cast<int>(k));
            }
        } else if (key == "k_probs") {
            for (std::size_t i = 1; i < tokens.size(); ++i)
                probs.push_back(require_double(path, line_no, tokens[i]));
        } else {
            fail_line(path, line_no, "unknown key '" + key + "'");
        }
    }
    if (support.empty()) fail(path, "missing k_support");
    if (probs.empty()) probs.assign(support.size(), 1.0 / support.size());
    if (probs.size() != support.size()) fail(path, "k_support and k_probs length mismatch");
    std::vector<std::pair<int, double>> dist;
    for (std::size_t i = 0; i < support.size(); ++i) dist.emplace_back(support[i], probs[i]);
    cfg.k_dist = KDistribution(dist);
    cfg.validate();
    return cfg;
}

void save_betweenness(const std::string& node_path, const std::string& edge_path,
                      const BetweennessResult& result) {
    {
        std::ofstream out = open_out(node_path);
        out << "node,score\n";
        for (std::size_t v = 0; v < result.node_scores.size(); ++v)
            out << v << ',' << format_double(result.node_scores[v]) << '\n';
        if (!out) fail(node_path, "write failed");
    }
    {
        std::ofstream out = open_out(edge_path);
        out << "u,v,score\n";
        for (std::size_t e = 0; e < result.edges.size(); ++e)
            out << result.edges[e].first << ',' << result.edges[e].second << ','
                << format_double(result.edge_scores[e]) << '\n';
        if (!out) fail(edge_path, "write failed");
    }
}

void save_score_pdf(const std::string& path, const ScoreHistogram& hist) {
    std::ofstream out = open_out(path);
    out << "bin_low,bin_high,mass\n";
    for (std::size_t b = 0; b < hist.mass.size(); ++b)
        out << format_double(hist.lower_edges[b]) << ','
            << format_double(hist.lower_edges[b] + hist.bin_width) << ','
            << format_double(hist.mass[b]) << '\n';
    if (!out) fail(path, "write failed");
}

void save_scaling(const std::string& path, const std::vector<ScalingRow>& rows) {
    std::ofstream out = open_out(path);
    out << "n,mean_diameter,stddev\n";
    for (const auto& row : rows)
        out << row.n << ',' << format_double(row.mean_diameter) << ','
            << format_double(row.stddev) << '\n';
    if (!out) fail(path, "write failed");
}

void save_diameter(const std::string& path, const DiameterReport& report) {
    std::ofstream out = open_out(path);
    out << "component,size,diameter\n";
    for (std::size_t c = 0; c < report.per_component.size(); ++c)
        out << c << ',' << report.per_component[c].size << ',' << report.per_component[c].diameter
            << '\n';
    if (!out) fail(path, "write failed");
}

}  // namespace gridnet
