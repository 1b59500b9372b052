#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gridnet/rng.hpp"

namespace gridnet {

// Discrete law for the number of links a newborn node forms: value k_i with
// probability alpha_i. Support is strictly increasing, weights positive and
// summing to one.
class KDistribution {
public:
    explicit KDistribution(std::vector<std::pair<int, double>> support);

    static KDistribution constant(int k);

    const std::vector<std::pair<int, double>>& support() const { return support_; }
    double mean() const { return mean_; }
    int min_k() const { return support_.front().first; }
    int max_k() const { return support_.back().first; }

    // Inverse-cdf draw; consumes exactly one uniform.
    int sample(Rng& rng) const;

private:
    std::vector<std::pair<int, double>> support_;
    double mean_ = 0.0;
};

}  // namespace gridnet
