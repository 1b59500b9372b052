#pragma once

#include <utility>
#include <vector>

#include "gridnet/graph.hpp"
#include "gridnet/k_distribution.hpp"

namespace gridnet {

// Mixture of shifted exponentials: the continuous degree law the growth
// process converges to. Component i contributes weight alpha_i of an
// exponential with scale `rate` shifted to start at k_i. For a law derived
// from a K distribution the rate equals mu_K = sum alpha_i k_i; a fitted
// mixture may carry a free rate instead.
class ExponentialMixture {
public:
    explicit ExponentialMixture(std::vector<std::pair<int, double>> components);
    ExponentialMixture(std::vector<std::pair<int, double>> components, double rate);

    static ExponentialMixture from_k_distribution(const KDistribution& k_dist);

    const std::vector<std::pair<int, double>>& components() const { return components_; }
    double rate() const { return rate_; }
    int min_k() const { return components_.front().first; }
    int max_k() const { return components_.back().first; }

    // Density sum_i (alpha_i/rate) exp(-(d-k_i)/rate) for d >= k_i.
    double pdf_at(double d) const;
    // Fraction of nodes with degree below d:
    // sum_i alpha_i (1 - exp(-(d-k_i)/rate)) for d > k_i.
    double cdf_at(double d) const;
    // Mass of the integer bin centered on d: cdf(d+1/2) - cdf(d-1/2).
    double bin_mass(int d) const;

    // Mean of the law, rate + sum_i alpha_i k_i (equals 2 mu_K when the rate
    // is the K mean).
    double mean_degree() const;

private:
    std::vector<std::pair<int, double>> components_;
    double rate_ = 0.0;
};

// Stationary fraction of nodes with degree exactly m under the mean-field
// recurrences: sum over components with k_i <= m of
// alpha_i/(1+mu) * (mu/(1+mu))^(m-k_i), mu = mean of k_dist.
// Zero below the smallest support value. Sums to 1 over m.
double asymptotic_fraction(const KDistribution& k_dist, int m);

// Total-variation distance between a normalized empirical degree histogram
// and the discrete mean-field law of k_dist.
double meanfield_tv_distance(const DegreeHistogram& hist, const KDistribution& k_dist);

}  // namespace gridnet
