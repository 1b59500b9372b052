#include "gridnet/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "gridnet/parallel.hpp"

namespace gridnet {

namespace {

// Compact Nelder-Mead for the 1-4 dimensional problems the fitter produces.
// Deterministic: fixed initial simplex, standard reflect/expand/contract
// coefficients, tie-breaks by index.
double nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                   std::vector<double>& x, double step, int max_iter) {
    const std::size_t dim = x.size();
    std::vector<std::vector<double>> simplex(dim + 1, x);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
    std::vector<double> value(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) value[i] = f(simplex[i]);

    std::vector<double> centroid(dim), trial(dim);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::size_t best = 0, worst = 0, second_worst = 0;
        for (std::size_t i = 1; i <= dim; ++i) {
            if (value[i] < value[best]) best = i;
            if (value[i] > value[worst]) worst = i;
        }
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != worst && value[i] > value[second_worst]) second_worst = i;
        if (value[worst] - value[best] < 1e-13) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            for (std::size_t d = 0; d < dim; ++d)
                trial[d] = centroid[d] + coeff * (simplex[worst][d] - centroid[d]);
            return f(trial);
        };

        const double reflected = blend(-1.0);
        if (reflected < value[best]) {
            const std::vector<double> refl = trial;
            const double expanded = blend(-2.0);
            if (expanded < reflected) {
                simplex[worst] = trial;
                value[worst] = expanded;
            } else {
                simplex[worst] = refl;
                value[worst] = reflected;
            }
        } else if (reflected < value[second_worst]) {
            simplex[worst] = trial;
            value[worst] = reflected;
        } else {
            const double contracted = blend(0.5);
            if (contracted < value[worst]) {
                simplex[worst] = trial;
                value[worst] = contracted;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[i][d] = 0.5 * (simplex[i][d] + simplex[best][d]);
                    value[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (value[i] < value[best]) best = i;
    x = simplex[best];
    return value[best];
}

std::vector<double> softmax(const std::vector<double>& logits) {
    // Final weight has implicit logit 0.
    double max_logit = 0.0;
    for (double l : logits) max_logit = std::max(max_logit, l);
    std::vector<double> w(logits.size() + 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) sum += (w[i] = std::exp(logits[i] - max_logit));
    sum += (w.back() = std::exp(-max_logit));
    for (double& x : w) x /= sum;
    return w;
}

struct ObservedBins {
    std::vector<int> degree;
    std::vector<double> weight;     // bin count
    std::vector<double> empirical;  // count / total
};

// Count-weighted squared error between the empirical pmf and the mixture's
// integer bin masses.
double bin_loss(const ObservedBins& obs, const std::vector<std::pair<int, double>>& comps,
                double rate) {
    double loss = 0.0;
    for (std::size_t i = 0; i < obs.degree.size(); ++i) {
        const double d = obs.degree[i];
        double mass = 0.0;
        for (const auto& [k, alpha] : comps) {
            const double hi = d + 0.5, lo = d - 0.5;
            double m = 0.0;
            if (hi > k) m += 1.0 - std::exp(-(hi - k) / rate);
            if (lo > k) m -= 1.0 - std::exp(-(lo - k) / rate);
            mass += alpha * m;
        }
        const double diff = obs.empirical[i] - mass;
        loss += obs.weight[i] * diff * diff;
    }
    return loss;
}

struct Candidate {
    std::vector<int> support;
    std::vector<double> weights;
    double rate = 0.0;
    double loss = std::numeric_limits<double>::infinity();
};

Candidate fit_support(const ObservedBins& obs, const std::vector<int>& support,
                      FitOptions::Mode mode) {
    Candidate cand;
    cand.support = support;
    const std::size_t p = support.size();

    std::vector<std::pair<int, double>> comps(p);
    for (std::size_t i = 0; i < p; ++i) comps[i].first = support[i];

    auto eval = [&](const std::vector<double>& params) {
        const std::vector<double> logits(params.begin(),
                                         params.begin() + static_cast<std::ptrdiff_t>(p - 1));
        const std::vector<double> w = softmax(logits);
        double rate = 0.0;
        if (mode == FitOptions::Mode::Free)
            rate = std::exp(params.back());
        else
            for (std::size_t i = 0; i < p; ++i) rate += w[i] * support[i];
        for (std::size_t i = 0; i < p; ++i) comps[i].second = w[i];
        return bin_loss(obs, comps, rate);
    };

    const std::size_t dim = (p - 1) + (mode == FitOptions::Mode::Free ? 1 : 0);
    if (dim == 0) {
        // Constant-K model: nothing to optimize.
        cand.weights = {1.0};
        cand.rate = support[0];
        comps[0].second = 1.0;
        cand.loss = bin_loss(obs, comps, cand.rate);
        return cand;
    }

    // A few deterministic starts: uniform weights, then one leaning toward
    // each component.
    std::vector<std::vector<double>> starts;
    starts.emplace_back(dim, 0.0);
    for (std::size_t lean = 0; lean + 1 < p; ++lean) {
        std::vector<double> s(dim, 0.0);
        s[lean] = 2.0;
        starts.push_back(std::move(s));
    }
    if (mode == FitOptions::Mode::Free) {
        const double mid = 0.5 * (support.front() + support.back());
        for (auto& s : starts) s.back() = std::log(std::max(0.5, mid));
    }

    std::vector<double> best_params;
    for (auto& start : starts) {
        std::vector<double> params = start;
        const double loss = nelder_mead(eval, params, 0.7, 400 * static_cast<int>(dim) + 200);
        if (loss < cand.loss) {
            cand.loss = loss;
            best_params = params;
        }
    }

    const std::vector<double> best_logits(
        best_params.begin(), best_params.begin() + static_cast<std::ptrdiff_t>(p - 1));
    const std::vector<double> w = softmax(best_logits);
    cand.weights = w;
    if (mode == FitOptions::Mode::Free) {
        cand.rate = std::exp(best_params.back());
    } else {
        cand.rate = 0.0;
        for (std::size_t i = 0; i < p; ++i) cand.rate += w[i] * support[i];
    }
    return cand;
}

void enumerate_supports(int k_min, int k_max, int max_size,
                        std::vector<std::vector<int>>& out) {
    std::vector<int> current;
    std::function<void(int)> recurse = [&](int next_k) {
        if (!current.empty()) out.push_back(current);
        if (static_cast<int>(current.size()) == max_size) return;
        for (int k = next_k; k <= k_max; ++k) {
            current.push_back(k);
            recurse(k + 1);
            current.pop_back();
        }
    };
    recurse(k_min);
}

}  // namespace

FitResult fit_mixture(const DegreeHistogram& hist, const FitOptions& options) {
    if (hist.total < 30)
        throw std::invalid_argument("fit: histogram needs at least 30 samples");
    if (hist.bins.size() < 2)
        throw std::invalid_argument("fit: insufficient support");
    if (options.max_components < 1 || options.max_components > 4)
        throw std::invalid_argument("fit: max_components must be in [1, 4]");

    const int max_observed = hist.bins.rbegin()->first;
    const int k_min = options.k_min;
    const int k_max = options.k_max > 0 ? options.k_max : max_observed;
    if (k_min < 1 || k_max < k_min || k_max > max_observed)
        throw std::invalid_argument("fit: k range must lie within [1, max observed degree]");

    ObservedBins obs;
    const double total = static_cast<double>(hist.total);
    for (const auto& [d, count] : hist.bins) {
        obs.degree.push_back(d);
        obs.weight.push_back(static_cast<double>(count));
        obs.empirical.push_back(count / total);
    }

    std::vector<std::vector<int>> supports;
    enumerate_supports(k_min, k_max, options.max_components, supports);

    std::vector<Candidate> candidates(supports.size());
    parallel_chunks(static_cast<std::int64_t>(supports.size()), options.threads, 8,
                    [&](std::int64_t begin, std::int64_t end) {
                        for (std::int64_t i = begin; i < end; ++i)
                            candidates[i] = fit_support(obs, supports[i], options.mode);
                    });

    const Candidate* best = nullptr;
    for (const Candidate& c : candidates) {
        if (!best) {
            best = &c;
            continue;
        }
        if (c.loss < best->loss ||
            (c.loss == best->loss && (c.support.size() < best->support.size() ||
                                      (c.support.size() == best->support.size() &&
                                       c.support < best->support)))) {
            best = &c;
        }
    }

    std::vector<std::pair<int, double>> comps;
    double weight_sum = 0.0;
    for (double w : best->weights) weight_sum += w;
    for (std::size_t i = 0; i < best->support.size(); ++i)
        comps.emplace_back(best->support[i], best->weights[i] / weight_sum);

    char searched[128];
    std::snprintf(searched, sizeof(searched),
                  "supports of size 1..%d from degrees [%d, %d] (%zu candidates)",
                  options.max_components, k_min, k_max, supports.size());

    FitResult result{ExponentialMixture(comps, best->rate), best->loss, 0.0, searched};
    result.ks_stat = ks_distance(hist, result.mixture);
    return result;
}

double ks_distance(const DegreeHistogram& hist, const ExponentialMixture& mix) {
    if (hist.total <= 0)
        throw std::invalid_argument("ks_distance: empty histogram");
    double cumulative = 0.0;
    double ks = 0.0;
    const double total = static_cast<double>(hist.total);
    for (const auto& [d, count] : hist.bins) {
        cumulative += count / total;
        ks = std::max(ks, std::abs(cumulative - mix.cdf_at(d + 0.5)));
    }
    return ks;
}

std::vector<double> sample_mixture(const ExponentialMixture& mix, int n, Rng& rng) {
    std::vector<double> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double pick = rng.uniform01();
        double cum = 0.0;
        int shift = mix.components().back().first;
        for (const auto& [k, alpha] : mix.components()) {
            cum += alpha;
            if (pick < cum) {
                shift = k;
                break;
            }
        }
        samples.push_back(shift - mix.rate() * std::log1p(-rng.uniform01()));
    }
    return samples;
}

DegreeHistogram histogram_from_samples(const std::vector<double>& samples) {
    DegreeHistogram hist;
    for (double x : samples) {
        ++hist.bins[static_cast<int>(std::lround(x))];
        ++hist.total;
    }
    return hist;
}

}  // namespace gridnet
