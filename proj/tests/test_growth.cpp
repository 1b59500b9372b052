#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gridnet/growth.hpp"
#include "gridnet/meanfield.hpp"

using namespace gridnet;

TEST_CASE("K distribution validation") {
    CHECK_THROWS(KDistribution({}));
    CHECK_THROWS(KDistribution({{0, 1.0}}));                // k below 1
    CHECK_THROWS(KDistribution({{2, 0.5}, {2, 0.5}}));      // not increasing
    CHECK_THROWS(KDistribution({{1, 0.5}, {2, 0.6}}));      // sum != 1
    CHECK_THROWS(KDistribution({{1, 1.0}, {2, 0.0}}));      // zero weight
    const KDistribution mix({{3, 0.25}, {5, 0.75}});
    CHECK(mix.mean() == doctest::Approx(4.5));
    CHECK(mix.min_k() == 3);
    CHECK(mix.max_k() == 5);
}

TEST_CASE("config validation") {
    GrowthConfig cfg;
    cfg.node_count = 10;
    cfg.radius = 0.0;
    CHECK_THROWS(grow(cfg));
    cfg.radius = 1.0;
    cfg.node_count = 1;
    CHECK_THROWS(grow(cfg));
}

TEST_CASE("two nodes form the single possible edge") {
    GrowthConfig cfg;
    cfg.node_count = 2;
    cfg.k_dist = KDistribution::constant(3);
    cfg.rng_seed = 9;
    const Graph g = grow(cfg);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(0, 1));
}

TEST_CASE("constant K=4 with five nodes gives the complete graph") {
    GrowthConfig cfg;
    cfg.node_count = 5;
    cfg.k_dist = KDistribution::constant(4);
    cfg.rng_seed = 4;
    const Graph g = grow(cfg);
    CHECK(g.edge_count() == 10);
    for (NodeId u = 0; u < 5; ++u)
        for (NodeId v = u + 1; v < 5; ++v) CHECK(g.has_edge(u, v));
}

TEST_CASE("edge count follows the clamped attachment rule exactly") {
    GrowthConfig cfg;
    cfg.node_count = 10000;
    cfg.k_dist = KDistribution::constant(2);
    cfg.rng_seed = 21;
    const Graph g = grow(cfg);
    CHECK(g.edge_count() == 1 + 2 * (10000 - 2));  // 19997
    const double mean_degree = 2.0 * g.edge_count() / g.node_count();
    CHECK(mean_degree == doctest::Approx(4.0).epsilon(0.01));

    const DegreeHistogram hist = degree_histogram(g);
    CHECK(hist.total == 10000);
    std::int64_t degree_sum = 0;
    for (const auto& [d, c] : hist.bins) degree_sum += static_cast<std::int64_t>(d) * c;
    CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("edge count equals the sum of clamped draws for variable K") {
    GrowthConfig cfg;
    cfg.node_count = 3000;
    cfg.k_dist = KDistribution({{1, 0.3}, {3, 0.4}, {6, 0.3}});
    cfg.rng_seed = 77;
    std::vector<int> drawn;
    const Graph g = grow(cfg, &drawn);
    REQUIRE(drawn.size() == 2999);
    std::int64_t expected = 0;
    for (std::size_t i = 0; i < drawn.size(); ++i)
        expected += std::min<std::int64_t>(drawn[i], static_cast<std::int64_t>(i) + 1);
    CHECK(g.edge_count() == expected);
}

TEST_CASE("identical configs grow identical graphs") {
    GrowthConfig cfg;
    cfg.node_count = 2000;
    cfg.k_dist = KDistribution({{2, 0.5}, {4, 0.5}});
    cfg.rng_seed = 12345;
    const Graph a = grow(cfg);
    const Graph b = grow(cfg);
    REQUIRE(a.node_count() == b.node_count());
    CHECK(a.edges() == b.edges());
    for (NodeId v = 0; v < a.node_count(); ++v) {
        CHECK(a.positions()[v].x == b.positions()[v].x);
        CHECK(a.positions()[v].y == b.positions()[v].y);
    }

    cfg.rng_seed = 12346;
    const Graph c = grow(cfg);
    CHECK(a.edges() != c.edges());
}

TEST_CASE("grown graphs are connected and simple") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GrowthConfig cfg;
        cfg.node_count = 500;
        cfg.k_dist = seed % 2 ? KDistribution::constant(1)
                              : KDistribution({{1, 0.6}, {4, 0.4}});
        cfg.rng_seed = seed;
        const Graph g = grow(cfg);  // Graph construction rejects loops/duplicates
        NodeId components = 0;
        component_labels(g, &components);
        CHECK(components == 1);
    }
}

TEST_CASE("fraction of minimum-degree nodes concentrates at 1/(1+k)") {
    for (int k = 1; k <= 3; ++k) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            GrowthConfig cfg;
            cfg.node_count = 10000;
            cfg.k_dist = KDistribution::constant(k);
            cfg.rng_seed = seed * 31 + k;
            const DegreeHistogram hist = degree_histogram(grow(cfg));
            const auto it = hist.bins.find(k);
            REQUIRE(it != hist.bins.end());
            const double fraction = static_cast<double>(it->second) / hist.total;
            CHECK(std::abs(fraction - 1.0 / (1.0 + k)) < 0.02);
        }
    }
}

TEST_CASE("Poisson-sized growth draws the count from the configured intensity") {
    double sum = 0.0;
    const double intensity = 40.0;  // expected nodes = intensity * pi * r^2
    const double expected = intensity * std::numbers::pi;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GrowthConfig cfg;
        cfg.density = intensity;
        cfg.k_dist = KDistribution::constant(2);
        cfg.rng_seed = 1000 + seed;
        sum += grow(cfg).node_count();
    }
    const double mean = sum / 60.0;
    CHECK(std::abs(mean - expected) < 3.0 * std::sqrt(expected / 60.0) + 1.0);
}
