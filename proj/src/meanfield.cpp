#include "gridnet/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridnet {

namespace {

void validate_components(const std::vector<std::pair<int, double>>& components) {
    if (components.empty())
        throw std::invalid_argument("mixture: empty component list");
    double sum = 0.0;
    int prev_k = 0;
    for (const auto& [k, alpha] : components) {
        if (k < 1)
            throw std::invalid_argument("mixture: every k must be >= 1");
        if (k <= prev_k)
            throw std::invalid_argument("mixture: components must be strictly increasing in k");
        if (!(alpha > 0.0))
            throw std::invalid_argument("mixture: weights must be positive");
        prev_k = k;
        sum += alpha;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("mixture: weights must sum to 1");
}

double weight_mean(const std::vector<std::pair<int, double>>& components) {
    double mu = 0.0;
    for (const auto& [k, alpha] : components) mu += alpha * k;
    return mu;
}

}  // namespace

ExponentialMixture::ExponentialMixture(std::vector<std::pair<int, double>> components)
    : components_(std::move(components)) {
    validate_components(components_);
    rate_ = weight_mean(components_);
}

ExponentialMixture::ExponentialMixture(std::vector<std::pair<int, double>> components, double rate)
    : components_(std::move(components)), rate_(rate) {
    validate_components(components_);
    if (!(rate_ > 0.0))
        throw std::invalid_argument("mixture: rate must be positive");
}

ExponentialMixture ExponentialMixture::from_k_distribution(const KDistribution& k_dist) {
    return ExponentialMixture(k_dist.support());
}

double ExponentialMixture::pdf_at(double d) const {
    double density = 0.0;
    for (const auto& [k, alpha] : components_) {
        if (d >= k) density += alpha / rate_ * std::exp(-(d - k) / rate_);
    }
    return density;
}

double ExponentialMixture::cdf_at(double d) const {
    double mass = 0.0;
    for (const auto& [k, alpha] : components_) {
        if (d > k) mass += alpha * (1.0 - std::exp(-(d - k) / rate_));
    }
    return mass;
}

double ExponentialMixture::bin_mass(int d) const {
    return cdf_at(d + 0.5) - cdf_at(d - 0.5);
}

double ExponentialMixture::mean_degree() const {
    return rate_ + weight_mean(components_);
}

double asymptotic_fraction(const KDistribution& k_dist, int m) {
    const double mu = k_dist.mean();
    const double decay = mu / (1.0 + mu);
    double fraction = 0.0;
    for (const auto& [k, alpha] : k_dist.support()) {
        if (m >= k) fraction += alpha / (1.0 + mu) * std::pow(decay, m - k);
    }
    return fraction;
}

double meanfield_tv_distance(const DegreeHistogram& hist, const KDistribution& k_dist) {
    if (hist.total <= 0)
        throw std::invalid_argument("tv distance: empty histogram");
    const double total = static_cast<double>(hist.total);

    int max_m = hist.bins.empty() ? 0 : hist.bins.rbegin()->first;
    // Walk the model tail until its remaining mass is negligible.
    double covered = 0.0;
    int m_end = k_dist.min_k();
    while (m_end <= max_m || 1.0 - covered > 1e-15) {
        covered += asymptotic_fraction(k_dist, m_end);
        ++m_end;
        if (m_end > k_dist.max_k() + 100000) break;
    }

    double tv = 0.0;
    // Empirical mass below the model's support counts in full.
    for (const auto& [d, count] : hist.bins)
        if (d < k_dist.min_k()) tv += count / total;
    for (int m = k_dist.min_k(); m < m_end; ++m) {
        const auto it = hist.bins.find(m);
        const double p = it == hist.bins.end() ? 0.0 : it->second / total;
        tv += std::abs(p - asymptotic_fraction(k_dist, m));
    }
    tv += std::max(0.0, 1.0 - covered);  // model tail beyond the walk
    return 0.5 * tv;
}

}  // namespace gridnet
