#pragma once

// Built-in evaluators (Gaussian naive Bayes, k-nearest neighbours) and the
// cross-validated subset evaluation that serves as the wrapper fitness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "featsel/core.hpp"
#include "featsel/data.hpp"
#include "featsel/metrics.hpp"

namespace featsel {

enum class ClassifierKind { gnb, knn };

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::knn;
    int k = 3;
    /// Absolute variance floor for GNB. Unset: 1e-9 times the largest
    /// training feature variance (or 1e-9 when every feature is constant).
    std::optional<double> variance_floor;

    std::string name() const { return kind == ClassifierKind::gnb ? "gnb" : "knn" + std::to_string(k); }

    void validate() const {
        if (kind == ClassifierKind::knn && k < 1) throw Error("classifier: k must be >= 1");
        if (variance_floor && !(*variance_floor > 0.0)) throw Error("classifier: variance floor must be positive");
    }
};

/// Parses "gnb", "knn" or "knn:<k>".
inline ClassifierSpec parse_classifier(const std::string& text, int default_k = 3) {
    ClassifierSpec spec;
    if (text == "gnb") {
        spec.kind = ClassifierKind::gnb;
    } else if (text == "knn") {
        spec.k = default_k;
    } else if (text.rfind("knn:", 0) == 0) {
        spec.k = std::stoi(text.substr(4));
    } else {
        throw Error("classifier: unknown kind '" + text + "'");
    }
    spec.validate();
    return spec;
}

/// Per-instance class distribution plus the decided label.
struct PredictionScores {
    Matrix<double> scores;
    std::vector<int> predicted;
};

struct GaussianNB {
    int n_classes = 0;
    std::vector<double> prior;
    /// False for classes with no training instance; they score 0.
    std::vector<bool> present;
    Matrix<double> mean;
    Matrix<double> variance;
    double variance_floor = 0.0;

    std::size_t n_features() const noexcept { return mean.cols(); }
};

inline GaussianNB gnb_fit(const Matrix<double>& x, std::span<const int> y, int n_classes,
                          std::optional<double> variance_floor = std::nullopt) {
    if (x.rows() != y.size()) throw Error("gnb: feature rows do not match labels");
    if (x.rows() == 0) throw Error("gnb: empty training set");
    const std::size_t n = x.rows(), d = x.cols(), nc = static_cast<std::size_t>(n_classes);

    GaussianNB model;
    model.n_classes = n_classes;
    model.prior.assign(nc, 0.0);
    model.present.assign(nc, false);
    model.mean = Matrix<double>(nc, d, 0.0);
    model.variance = Matrix<double>(nc, d, 0.0);

    std::vector<std::size_t> counts(nc, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] < 0 || y[i] >= n_classes) throw Error("gnb: label out of range");
        const auto c = static_cast<std::size_t>(y[i]);
        ++counts[c];
        for (std::size_t j = 0; j < d; ++j) model.mean(c, j) += x(i, j);
    }
    for (std::size_t c = 0; c < nc; ++c) {
        if (counts[c] == 0) continue;
        model.present[c] = true;
        model.prior[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
        for (std::size_t j = 0; j < d; ++j) model.mean(c, j) /= static_cast<double>(counts[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        for (std::size_t j = 0; j < d; ++j) {
            const double dev = x(i, j) - model.mean(c, j);
            model.variance(c, j) += dev * dev;
        }
    }

    if (variance_floor) {
        model.variance_floor = *variance_floor;
    } else {
        double max_var = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double mu = 0.0, ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) mu += x(i, j);
            mu /= static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) ss += (x(i, j) - mu) * (x(i, j) - mu);
            max_var = std::max(max_var, ss / static_cast<double>(n));
        }
        model.variance_floor = 1e-9 * (max_var > 0.0 ? max_var : 1.0);
    }
    for (std::size_t c = 0; c < nc; ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            model.variance(c, j) =
                std::max(model.variance(c, j) / static_cast<double>(counts[c]), model.variance_floor);
    }
    return model;
}

/// Posterior proportional to prior times the product of per-feature Gaussian
/// densities, evaluated in log space and normalized per row.
inline PredictionScores gnb_predict(const GaussianNB& model, const Matrix<double>& x) {
    if (x.cols() != model.n_features())
        throw Error("gnb: query has " + std::to_string(x.cols()) + " features, model has " +
                    std::to_string(model.n_features()));
    const std::size_t nc = static_cast<std::size_t>(model.n_classes);
    PredictionScores out{Matrix<double>(x.rows(), nc, 0.0), std::vector<int>(x.rows(), 0)};
    std::vector<double> log_post(nc);
    constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // ln(2*pi)
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < nc; ++c) {
            if (!model.present[c]) {
                log_post[c] = -std::numeric_limits<double>::infinity();
                continue;
            }
            double lp = std::log(model.prior[c]);
            for (std::size_t j = 0; j < x.cols(); ++j) {
                const double var = model.variance(c, j);
                const double dev = x(i, j) - model.mean(c, j);
                lp -= 0.5 * (kLog2Pi + std::log(var)) + dev * dev / (2.0 * var);
            }
            log_post[c] = lp;
            if (lp > best) {
                best = lp;
                best_c = c;
            }
        }
        double z = 0.0;
        for (std::size_t c = 0; c < nc; ++c)
            if (model.present[c]) z += std::exp(log_post[c] - best);
        for (std::size_t c = 0; c < nc; ++c)
            out.scores(i, c) = model.present[c] ? std::exp(log_post[c] - best) / z : 0.0;
        out.predicted[i] = static_cast<int>(best_c);
    }
    return out;
}

/// k-nearest neighbours by Euclidean distance. score(c) is the fraction of
/// the k neighbours in class c. Equal distances prefer the lower training
/// row; a tie between class counts goes to the class of the nearer neighbour.
inline PredictionScores knn_predict(const Matrix<double>& train, std::span<const int> train_labels,
                                    const Matrix<double>& query, int k, int n_classes) {
    if (train.rows() != train_labels.size()) throw Error("knn: training rows do not match labels");
    if (k < 1) throw Error("knn: k must be >= 1");
    if (static_cast<std::size_t>(k) > train.rows())
        throw Error("knn: k=" + std::to_string(k) + " exceeds training size " + std::to_string(train.rows()));
    if (query.cols() != train.cols()) throw Error("knn: query dimensionality does not match training data");

    const std::size_t nc = static_cast<std::size_t>(n_classes), kk = static_cast<std::size_t>(k);
    const std::size_t d = train.cols();
    PredictionScores out{Matrix<double>(query.rows(), nc, 0.0), std::vector<int>(query.rows(), 0)};

    // Ascending (distance, row) of the current k best.
    std::vector<double> best_dist(kk);
    std::vector<std::size_t> best_row(kk);
    std::vector<std::size_t> votes(nc);
    for (std::size_t q = 0; q < query.rows(); ++q) {
        const auto qrow = query.row(q);
        std::size_t filled = 0;
        for (std::size_t r = 0; r < train.rows(); ++r) {
            const auto trow = train.row(r);
            double dist = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double diff = qrow[j] - trow[j];
                dist += diff * diff;
            }
            if (filled == kk && dist >= best_dist[kk - 1]) continue;
            std::size_t pos = filled == kk ? kk - 1 : filled++;
            while (pos > 0 && best_dist[pos - 1] > dist) {
                best_dist[pos] = best_dist[pos - 1];
                best_row[pos] = best_row[pos - 1];
                --pos;
            }
            best_dist[pos] = dist;
            best_row[pos] = r;
        }

        std::fill(votes.begin(), votes.end(), 0);
        for (std::size_t i = 0; i < kk; ++i) {
            const int label = train_labels[best_row[i]];
            if (label < 0 || label >= n_classes) throw Error("knn: label out of range");
            ++votes[static_cast<std::size_t>(label)];
        }
        std::size_t top = *std::max_element(votes.begin(), votes.end());
        for (std::size_t i = 0; i < kk; ++i) {
            const auto label = static_cast<std::size_t>(train_labels[best_row[i]]);
            if (votes[label] == top) {
                out.predicted[q] = static_cast<int>(label);
                break;
            }
        }
        for (std::size_t c = 0; c < nc; ++c)
            out.scores(q, c) = static_cast<double>(votes[c]) / static_cast<double>(kk);
    }
    return out;
}

inline PredictionScores fit_predict(const ClassifierSpec& spec, const Matrix<double>& train,
                                    std::span<const int> train_labels, const Matrix<double>& query, int n_classes) {
    if (spec.kind == ClassifierKind::gnb)
        return gnb_predict(gnb_fit(train, train_labels, n_classes, spec.variance_floor), query);
    return knn_predict(train, train_labels, query, spec.k, n_classes);
}

struct EvaluationReport {
    std::string classifier;
    std::vector<std::size_t> subset;
    std::vector<double> fold_accuracy;
    std::vector<double> fold_macro_f1;
    /// NaN for a fold with no evaluable class.
    std::vector<double> fold_macro_auc;
    MeanStd accuracy;
    MeanStd macro_f1;
    MeanStd macro_auc;
    /// Mean cross-validated accuracy; 0 for the empty subset.
    double fitness = 0.0;
    /// Set for the empty subset, which is not evaluated.
    bool degenerate = false;

    friend bool operator==(const EvaluationReport& a, const EvaluationReport& b) {
        auto same = [](const std::vector<double>& x, const std::vector<double>& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!(x[i] == y[i] || (std::isnan(x[i]) && std::isnan(y[i])))) return false;
            return true;
        };
        return a.classifier == b.classifier && a.subset == b.subset && same(a.fold_accuracy, b.fold_accuracy) &&
               same(a.fold_macro_f1, b.fold_macro_f1) && same(a.fold_macro_auc, b.fold_macro_auc) &&
               a.fitness == b.fitness && a.degenerate == b.degenerate;
    }
};

/// Cross-validated evaluation of the listed feature columns under the fold plan.
inline EvaluationReport evaluate_subset(const Dataset& ds, std::span<const std::size_t> subset,
                                        const ClassifierSpec& spec, const FoldPlan& folds) {
    if (folds.size() != ds.n_instances()) throw Error("evaluate: fold plan does not match dataset");
    for (std::size_t j : subset)
        if (j >= ds.n_features()) throw Error("evaluate: feature index " + std::to_string(j) + " out of range");

    EvaluationReport report;
    report.classifier = spec.name();
    report.subset.assign(subset.begin(), subset.end());
    if (subset.empty()) {
        report.degenerate = true;
        return report;
    }

    const Matrix<double> x = ds.features.select_columns(subset);
    std::vector<double> aucs;
    for (int fold = 0; fold < folds.k; ++fold) {
        const auto train_idx = folds.train_indices(fold);
        const auto test_idx = folds.test_indices(fold);
        if (test_idx.empty() || train_idx.empty()) throw Error("evaluate: empty fold " + std::to_string(fold));
        std::vector<int> train_y(train_idx.size()), test_y(test_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) train_y[i] = ds.labels[train_idx[i]];
        for (std::size_t i = 0; i < test_idx.size(); ++i) test_y[i] = ds.labels[test_idx[i]];

        const auto pred = fit_predict(spec, x.select_rows(train_idx), train_y, x.select_rows(test_idx), ds.n_classes);
        const auto counts = confusion(pred.predicted, test_y, ds.n_classes);
        report.fold_accuracy.push_back(accuracy(counts));
        report.fold_macro_f1.push_back(macro_f1(counts));
        double auc = std::numeric_limits<double>::quiet_NaN();
        try {
            auc = macro_auc_ovr(pred.scores, test_y).macro;
            aucs.push_back(auc);
        } catch (const Error&) {
        }
        report.fold_macro_auc.push_back(auc);
    }
    report.accuracy = mean_std(report.fold_accuracy);
    report.macro_f1 = mean_std(report.fold_macro_f1);
    report.macro_auc = mean_std(aucs);
    report.fitness = report.accuracy.mean;
    return report;
}

}  // namespace featsel
