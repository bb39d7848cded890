#pragma once

// Classification metrics and the paired two-tailed t-test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "featsel/core.hpp"

namespace featsel {

struct BinaryCounts {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    friend bool operator==(const BinaryCounts&, const BinaryCounts&) = default;
};

/// One-vs-rest counts per class.
struct ConfusionCounts {
    std::vector<BinaryCounts> per_class;
    std::size_t n = 0;

    int n_classes() const noexcept { return static_cast<int>(per_class.size()); }
};

inline ConfusionCounts confusion(std::span<const int> predicted, std::span<const int> truth, int n_classes) {
    if (predicted.size() != truth.size()) throw Error("confusion: length mismatch");
    ConfusionCounts out{std::vector<BinaryCounts>(static_cast<std::size_t>(n_classes)), truth.size()};
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int p = predicted[i], t = truth[i];
        if (p < 0 || p >= n_classes || t < 0 || t >= n_classes) throw Error("confusion: label out of range");
        for (int c = 0; c < n_classes; ++c) {
            auto& k = out.per_class[static_cast<std::size_t>(c)];
            const bool pred_c = p == c, true_c = t == c;
            if (pred_c && true_c) ++k.tp;
            else if (pred_c) ++k.fp;
            else if (true_c) ++k.fn;
            else ++k.tn;
        }
    }
    return out;
}

/// (TP + TN) / (TP + TN + FP + FN).
inline double accuracy(const BinaryCounts& k) {
    if (k.total() == 0) throw Error("accuracy: empty counts");
    return static_cast<double>(k.tp + k.tn) / static_cast<double>(k.total());
}

/// Fraction of exact label matches (sum of per-class TP over n).
inline double accuracy(const ConfusionCounts& counts) {
    if (counts.n == 0) throw Error("accuracy: empty counts");
    std::size_t hits = 0;
    for (const auto& k : counts.per_class) hits += k.tp;
    return static_cast<double>(hits) / static_cast<double>(counts.n);
}

inline double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) throw Error("accuracy: length mismatch");
    if (truth.empty()) throw Error("accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

namespace detail {
inline double ratio_or_zero(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace detail

inline double precision(const BinaryCounts& k) { return detail::ratio_or_zero(k.tp, k.tp + k.fp); }
inline double recall(const BinaryCounts& k) { return detail::ratio_or_zero(k.tp, k.tp + k.fn); }

/// 2PR / (P + R); every 0/0 resolves to 0.
inline double f1(const BinaryCounts& k) {
    const double p = precision(k), r = recall(k);
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

/// Unweighted mean of per-class F1 over the classes that occur in the truth
/// or the predictions. Classes absent from both carry no information and
/// are left out of the mean.
inline double macro_f1(const ConfusionCounts& counts) {
    double sum = 0.0;
    std::size_t used = 0;
    for (const auto& k : counts.per_class) {
        if (k.tp + k.fp + k.fn == 0) continue;
        sum += f1(k);
        ++used;
    }
    return used == 0 ? 0.0 : sum / static_cast<double>(used);
}

struct AucResult {
    double macro = 0.0;
    /// Per-class AUC; NaN for classes without both positives and negatives.
    std::vector<double> per_class;
    std::vector<int> skipped;
};

/// Probability that a random positive outranks a random negative, ties
/// counted as one half. Computed by rank-sum over the sorted scores.
inline double binary_auc(std::span<const double> scores, std::span<const std::uint8_t> positive) {
    if (scores.size() != positive.size()) throw Error("auc: length mismatch");
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double pos_rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
        const double mid_rank = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
        for (std::size_t t = i; t < j; ++t)
            if (positive[idx[t]]) {
                pos_rank_sum += mid_rank;
                ++n_pos;
            }
        i = j;
    }
    const std::size_t n_neg = scores.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) throw Error("auc: need at least one positive and one negative");
    const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

/// One-vs-rest AUC per class, averaged over the evaluable classes.
/// scores is instances x classes.
inline AucResult macro_auc_ovr(const Matrix<double>& scores, std::span<const int> truth) {
    if (scores.rows() != truth.size()) throw Error("auc: score rows do not match labels");
    const std::size_t n_classes = scores.cols();
    AucResult out;
    out.per_class.assign(n_classes, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> col(truth.size());
    std::vector<std::uint8_t> pos(truth.size());
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        std::size_t n_pos = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            col[i] = scores(i, c);
            pos[i] = truth[i] == static_cast<int>(c);
            n_pos += pos[i];
        }
        if (n_pos == 0 || n_pos == truth.size()) {
            out.skipped.push_back(static_cast<int>(c));
            continue;
        }
        out.per_class[c] = binary_auc(col, pos);
        sum += out.per_class[c];
        ++used;
    }
    if (used == 0) throw Error("auc: no evaluable class");
    out.macro = sum / static_cast<double>(used);
    return out;
}

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0 || a <= 0.0 || b <= 0.0) throw Error("incomplete beta: argument out of domain");
    if (x == 0.0 || x == 1.0) return x;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(T <= t) for Student's t with df degrees of freedom.
inline double student_t_cdf(double t, double df) {
    if (df <= 0.0) throw Error("student t: df must be positive");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t > 0 ? 1.0 - tail : tail;
}

/// P(|T| >= |t|).
inline double student_t_two_tailed_p(double t, double df) {
    if (df <= 0.0) throw Error("student t: df must be positive");
    if (std::isinf(t)) return 0.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

enum class Verdict { win, tie, loss };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::win: return "win";
        case Verdict::loss: return "loss";
        default: return "tie";
    }
}

/// Table marker: '+' better, '=' equal, '-' worse.
inline char marker(Verdict v) { return v == Verdict::win ? '+' : v == Verdict::loss ? '-' : '='; }

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    Verdict verdict = Verdict::tie;
};

/// Paired two-tailed t-test on d = a - b with n - 1 degrees of freedom.
/// Zero-variance differences: all zero is a tie with p = 1; a nonzero
/// constant shift is decided by its sign with p = 0.
inline TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05) {
    if (a.size() != b.size()) throw Error("t-test: sample length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw Error("t-test: need at least 2 pairs");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    TTestResult out;
    if (sd == 0.0) {
        if (mean == 0.0) return out;
        out.t = mean > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        out.p = 0.0;
        out.verdict = mean > 0 ? Verdict::win : Verdict::loss;
        return out;
    }
    out.t = mean / (sd / std::sqrt(static_cast<double>(n)));
    out.p = student_t_two_tailed_p(out.t, static_cast<double>(n - 1));
    if (out.p < alpha) out.verdict = mean > 0 ? Verdict::win : Verdict::loss;
    return out;
}

/// Sample mean and standard deviation (n - 1 denominator; 0 for n < 2).
struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

inline MeanStd mean_std(std::span<const double> v) {
    MeanStd out;
    if (v.empty()) return out;
    out.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() < 2) return out;
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return out;
}

}  // namespace featsel
