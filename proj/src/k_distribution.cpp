#include "gridnet/k_distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace gridnet {

KDistribution::KDistribution(std::vector<std::pair<int, double>> support)
    : support_(std::move(support)) {
    if (support_.empty())
        throw std::invalid_argument("K distribution: empty support");
    double sum = 0.0;
    int prev_k = 0;
    for (const auto& [k, alpha] : support_) {
        if (k < 1)
            throw std::invalid_argument("K distribution: every k must be >= 1");
        if (k <= prev_k)
            throw std::invalid_argument("K distribution: support must be strictly increasing");
        if (!(alpha > 0.0))
            throw std::invalid_argument("K distribution: weights must be positive");
        prev_k = k;
        sum += alpha;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("K distribution: weights must sum to 1");
    // Store exactly normalized weights so downstream sums are clean.
    for (auto& [k, alpha] : support_) {
        alpha /= sum;
        mean_ += alpha * k;
    }
}

KDistribution KDistribution::constant(int k) {
    return KDistribution({{k, 1.0}});
}

int KDistribution::sample(Rng& rng) const {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (const auto& [k, alpha] : support_) {
        cum += alpha;
        if (u < cum) return k;
    }
    return support_.back().first;
}

}  // namespace gridnet
