#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library routines they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace oracle {

/// Direct definition: sum_{x,y} p(x,y) ln( p(x,y) / (p(x) p(y)) ).
inline double mutual_information(std::span<const int> x, std::span<const int> y) {
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> px, py;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        joint[{x[i], y[i]}] += 1.0 / n;
        px[x[i]] += 1.0 / n;
        py[y[i]] += 1.0 / n;
    }
    double mi = 0.0;
    for (const auto& [xy, p] : joint) mi += p * std::log(p / (px[xy.first] * py[xy.second]));
    return std::max(mi, 0.0);
}

inline double entropy(std::span<const int> x) {
    std::map<int, std::size_t> counts;
    for (int v : x) ++counts[v];
    double h = 0.0;
    for (const auto& [v, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(x.size());
        h -= p * std::log(p);
    }
    return h;
}

/// -sum_{x,y} p(x,y) ln( p(x,y) / p(y) ) from enumerated joint counts.
inline double conditional_entropy(std::span<const int> x, std::span<const int> y) {
    std::map<std::pair<int, int>, std::size_t> joint;
    std::map<int, std::size_t> cy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ++joint[{x[i], y[i]}];
        ++cy[y[i]];
    }
    const double n = static_cast<double>(x.size());
    double h = 0.0;
    for (const auto& [xy, c] : joint)
        h -= static_cast<double>(c) / n * std::log(static_cast<double>(c) / static_cast<double>(cy[xy.second]));
    return h;
}

/// J(f) = I(f; y) - mean_{s in selected} I(s; f), recomputed from scratch.
inline double mrmr_score(const std::vector<std::vector<int>>& columns, std::span<const int> labels,
                         const std::vector<std::size_t>& selected, std::size_t f) {
    double redundancy = 0.0;
    for (std::size_t s : selected) redundancy += mutual_information(columns[s], columns[f]);
    return mutual_information(columns[f], labels) - redundancy / static_cast<double>(selected.size());
}

/// Brute-force greedy MRMR: every step rescores every remaining feature from
/// scratch. Scores within 1e-12 of the maximum count as tied; lowest index wins.
inline std::vector<std::size_t> mrmr_greedy(const std::vector<std::vector<int>>& columns, std::span<const int> labels,
                                            std::size_t top) {
    const std::size_t m = columns.size();
    std::vector<std::size_t> selected;
    std::vector<bool> used(m, false);
    while (selected.size() < top) {
        std::vector<double> score(m, -std::numeric_limits<double>::infinity());
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < m; ++f) {
            if (used[f]) continue;
            score[f] = selected.empty() ? mutual_information(columns[f], labels)
                                        : mrmr_score(columns, labels, selected, f);
            best = std::max(best, score[f]);
        }
        for (std::size_t f = 0; f < m; ++f) {
            if (!used[f] && score[f] >= best - 1e-12) {
                selected.push_back(f);
                used[f] = true;
                break;
            }
        }
    }
    return selected;
}

/// Neighbour labels of a query by full sort of (distance, training row).
inline std::vector<int> knn_neighbour_labels(const std::vector<std::vector<double>>& train,
                                             std::span<const int> labels, const std::vector<double>& query,
                                             std::size_t k) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t r = 0; r < train.size(); ++r) {
        double s = 0.0;
        for (std::size_t j = 0; j < query.size(); ++j) s += (train[r][j] - query[j]) * (train[r][j] - query[j]);
        d.emplace_back(std::sqrt(s), r);
    }
    std::sort(d.begin(), d.end());
    std::vector<int> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(labels[d[i].second]);
    return out;
}

/// Posterior by explicit product of Gaussian densities (linear space).
inline std::vector<double> gaussian_posterior(const std::vector<double>& priors,
                                              const std::vector<std::vector<double>>& means,
                                              const std::vector<std::vector<double>>& variances,
                                              const std::vector<double>& x) {
    const double pi = std::acos(-1.0);
    std::vector<double> post(priors.size());
    for (std::size_t c = 0; c < priors.size(); ++c) {
        double p = priors[c];
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double v = variances[c][j];
            p *= std::exp(-(x[j] - means[c][j]) * (x[j] - means[c][j]) / (2 * v)) / std::sqrt(2 * pi * v);
        }
        post[c] = p;
    }
    const double z = std::accumulate(post.begin(), post.end(), 0.0);
    for (auto& p : post) p /= z;
    return post;
}

/// Exhaustive pos x neg pair count with ties worth one half.
inline double pairwise_auc(std::span<const double> scores, std::span<const int> truth, int positive) {
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (truth[i] != positive) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (truth[j] == positive) continue;
            pairs += 1.0;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / pairs;
}

/// Two-tailed Student-t p-value from Boost.Math.
inline double t_two_tailed_p(double t, double df) {
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

/// Two-tailed p by composite Simpson integration of the t density over
/// [0, |t|]: p = 1 - 2 * integral.
inline double t_two_tailed_p_quadrature(double t, double df) {
    const double log_c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * std::acos(-1.0));
    auto density = [&](double x) { return std::exp(log_c - (df + 1) / 2 * std::log1p(x * x / df)); };
    const double a = std::abs(t);
    const int n = 20000;
    const double h = a / n;
    double s = density(0) + density(a);
    for (int i = 1; i < n; ++i) s += density(i * h) * (i % 2 ? 4 : 2);
    return 1.0 - 2.0 * s * h / 3.0;
}

}  // namespace oracle
