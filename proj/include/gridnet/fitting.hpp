#pragma once

#include <string>
#include <vector>

#include "gridnet/graph.hpp"
#include "gridnet/meanfield.hpp"
#include "gridnet/rng.hpp"

namespace gridnet {

struct FitOptions {
    int max_components = 3;  // in [1, 4]
    int k_min = 1;
    int k_max = 0;  // 0 means the max observed degree
    // Model mode ties the exponential rate to sum(alpha_i k_i); free mode
    // fits the rate as an extra parameter.
    enum class Mode { Model, Free } mode = Mode::Model;
    int threads = 0;
};

struct FitResult {
    ExponentialMixture mixture;
    double loss = 0.0;     // count-weighted least squares on integer bin masses
    double ks_stat = 1.0;  // Kolmogorov-Smirnov distance of the returned mixture
    std::string support_searched;
};

// Exhaustive search over integer supports of size 1..max_components drawn
// from [k_min, k_max]; weights (and in free mode the rate) optimized per
// support. Ties in loss break toward fewer components, then lexicographically
// smaller support.
FitResult fit_mixture(const DegreeHistogram& hist, const FitOptions& options = {});

// sup over observed degrees of |empirical cdf - cdf(mixture at d + 1/2)|;
// the half-step matches integer degrees against the continuous law.
double ks_distance(const DegreeHistogram& hist, const ExponentialMixture& mix);

// Inverse-cdf draws from the continuous mixture (component by weight, then a
// shifted exponential). Two uniforms per draw.
std::vector<double> sample_mixture(const ExponentialMixture& mix, int n, Rng& rng);

// Integer degree histogram from continuous samples, rounding to nearest.
DegreeHistogram histogram_from_samples(const std::vector<double>& samples);

}  // namespace gridnet
