#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gridnet/growth.hpp"
#include "gridnet/meanfield.hpp"
#include "support/oracles.hpp"

using namespace gridnet;

namespace {
const std::vector<std::pair<int, double>> kUniform345{{3, 1.0 / 3}, {4, 1.0 / 3}, {5, 1.0 / 3}};
}

TEST_CASE("mixture validation mirrors the K distribution rules") {
    CHECK_THROWS(ExponentialMixture({}));
    CHECK_THROWS(ExponentialMixture({{1, 0.4}, {3, 0.4}}));
    CHECK_THROWS(ExponentialMixture({{3, 0.5}, {2, 0.5}}));
    CHECK_THROWS(ExponentialMixture({{2, 1.0}}, 0.0));
}

TEST_CASE("density values") {
    const ExponentialMixture singleton({{1, 1.0}});
    CHECK(singleton.pdf_at(1.0) == doctest::Approx(1.0));  // e^0 / mu, mu = 1
    CHECK(singleton.pdf_at(0.5) == 0.0);                   // below the shift

    const ExponentialMixture mix(kUniform345);
    CHECK(mix.rate() == doctest::Approx(4.0));
    const double expected = (std::exp(-0.5) + std::exp(-0.25) + 1.0) / 12.0;
    CHECK(mix.pdf_at(5.0) == doctest::Approx(expected));  // ~0.199
    CHECK(mix.pdf_at(5.0) == doctest::Approx(0.199).epsilon(0.005));
}

TEST_CASE("cumulative values") {
    const ExponentialMixture k2({{2, 1.0}});
    CHECK(k2.cdf_at(2.0) == 0.0);
    CHECK(k2.cdf_at(4.0) == doctest::Approx(1.0 - std::exp(-1.0)));
    const ExponentialMixture mix(kUniform345);
    CHECK(mix.cdf_at(5.0 + 50.0 * mix.rate()) >= 1.0 - 1e-5);
    // Monotone nondecreasing.
    double prev = -1.0;
    for (double d = 0.0; d < 40.0; d += 0.25) {
        CHECK(mix.cdf_at(d) >= prev);
        prev = mix.cdf_at(d);
    }
}

TEST_CASE("density integrates to one") {
    for (const auto& comps : {std::vector<std::pair<int, double>>{{2, 1.0}}, kUniform345,
                              std::vector<std::pair<int, double>>{{1, 0.7}, {6, 0.3}}}) {
        const ExponentialMixture mix(comps);
        const double mass = oracles::integrate_against_pdf(mix, [](double) { return 1.0; });
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("numeric cdf derivative matches the density away from shift points") {
    const ExponentialMixture mix(kUniform345);
    const double h = 1e-5;
    for (double d = 1.0; d < 20.0; d += 0.0834) {
        bool near_shift = false;
        for (const auto& [k, a] : mix.components())
            if (std::abs(d - k) < 0.05 || std::abs(d + h - k) < 0.05 || std::abs(d - h - k) < 0.05)
                near_shift = true;
        if (near_shift) continue;
        const double deriv = (mix.cdf_at(d + h) - mix.cdf_at(d - h)) / (2.0 * h);
        CHECK(deriv == doctest::Approx(mix.pdf_at(d)).epsilon(1e-6));
    }
}

TEST_CASE("mean degree equals the quadrature of d * pdf(d)") {
    const std::vector<std::vector<std::pair<int, double>>> cases{
        {{2, 1.0}}, kUniform345, {{1, 1.0}}};
    const std::vector<double> expected{4.0, 8.0, 2.0};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const ExponentialMixture mix(cases[i]);
        const double integral =
            oracles::integrate_against_pdf(mix, [](double d) { return d; });
        CHECK(integral == doctest::Approx(expected[i]).epsilon(1e-6));
        CHECK(mix.mean_degree() == doctest::Approx(integral).epsilon(1e-6));
    }
}

TEST_CASE("stationary fractions: closed-form spot checks") {
    const KDistribution k2 = KDistribution::constant(2);
    CHECK(asymptotic_fraction(k2, 2) == doctest::Approx(1.0 / 3.0));
    CHECK(asymptotic_fraction(k2, 3) == doctest::Approx(2.0 / 9.0));
    CHECK(asymptotic_fraction(k2, 1) == 0.0);

    const KDistribution two_point({{2, 0.5}, {4, 0.5}});  // mean 3
    CHECK(asymptotic_fraction(two_point, 3) == doctest::Approx((3.0 / 4.0) * (0.5 / 4.0)));
    // At the upper shift both component branches contribute.
    const double at4 = std::pow(0.75, 2) * 0.125 + 0.125;
    CHECK(asymptotic_fraction(two_point, 4) == doctest::Approx(at4));
}

TEST_CASE("stationary fractions obey the geometric recursion and normalize") {
    const KDistribution k3 = KDistribution::constant(3);
    for (int m = 4; m < 40; ++m) {
        CHECK(asymptotic_fraction(k3, m) ==
              doctest::Approx(asymptotic_fraction(k3, m - 1) * 3.0 / 4.0));
    }
    double sum = 0.0;
    for (int m = 3; m < 400; ++m) sum += asymptotic_fraction(k3, m);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    const KDistribution mix({{2, 0.3}, {5, 0.7}});
    sum = 0.0;
    for (int m = 2; m < 600; ++m) sum += asymptotic_fraction(mix, m);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("simulated degree law stays close to the stationary law") {
    const KDistribution k2 = KDistribution::constant(2);
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        GrowthConfig cfg;
        cfg.node_count = 10000;
        cfg.k_dist = k2;
        cfg.rng_seed = seed;
        const double tv = meanfield_tv_distance(degree_histogram(grow(cfg)), k2);
        CHECK(tv <= 0.05);
    }
    const KDistribution mix({{3, 1.0 / 3}, {4, 1.0 / 3}, {5, 1.0 / 3}});
    GrowthConfig cfg;
    cfg.node_count = 10000;
    cfg.k_dist = mix;
    cfg.rng_seed = 3;
    CHECK(meanfield_tv_distance(degree_histogram(grow(cfg)), mix) <= 0.05);
}
