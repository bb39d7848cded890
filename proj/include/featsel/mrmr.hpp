#pragma once

// Greedy minimum-redundancy maximum-relevance ranking.
//
// The first pick is the feature with the largest I(f; y). Each later pick
// maximizes J(f) = I(f; y) - mean_{s in selected} I(s; f). Redundancy sums
// are accumulated incrementally, so every pairwise term is computed once.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "featsel/core.hpp"
#include "featsel/data.hpp"
#include "featsel/infotheory.hpp"
#include "featsel/parallel.hpp"

namespace featsel {

/// Default filter size.
inline constexpr std::size_t kDefaultTopFeatures = 70;

/// Scores closer than this are treated as tied; the lowest index then wins.
/// Plug-in estimates of equal true value can differ by a few ulps depending
/// on summation order, which would otherwise make tie-breaking arbitrary.
inline constexpr double kScoreTieTolerance = 1e-12;

/// Index of the maximum, lowest index among near-ties.
inline std::size_t argmax_lowest_index(std::span<const double> scores, std::span<const std::size_t> indices) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i : indices) best = std::max(best, scores[i]);
    for (std::size_t i : indices)
        if (scores[i] >= best - kScoreTieTolerance) return i;
    throw Error("argmax: empty candidate set");
}

class MrmrState {
public:
    MrmrState(const DiscreteDataset& ds, std::span<const int> labels)
        : ds_(&ds), labels_(labels.begin(), labels.end()) {
        if (labels_.size() != ds.n_instances) throw Error("mrmr: label count does not match dataset rows");
        const std::size_t m = ds.n_features();
        relevance_.assign(m, 0.0);
        redundancy_sum_.assign(m, 0.0);
        is_selected_.assign(m, false);
        const DiscreteVariable y(labels_);
        parallel_for(m, [&](std::size_t j) {
            relevance_[j] = mutual_information(DiscreteVariable(ds.column(j), ds.n_bins), y);
        });
        for (std::size_t j = 0; j < m; ++j) remaining_.push_back(j);
    }

    const std::vector<std::size_t>& selected() const noexcept { return selected_; }
    const std::vector<std::size_t>& remaining() const noexcept { return remaining_; }
    const std::vector<double>& relevance() const noexcept { return relevance_; }
    bool is_selected(std::size_t f) const { return is_selected_.at(f); }

    /// J(f) for a remaining feature against the current selection.
    double score_candidate(std::size_t f) const {
        if (f >= is_selected_.size()) throw Error("mrmr: feature index out of range");
        if (is_selected_[f]) throw Error("mrmr: feature " + std::to_string(f) + " already selected");
        if (selected_.empty()) throw Error("mrmr: score needs a non-empty selection");
        return relevance_[f] - redundancy_sum_[f] / static_cast<double>(selected_.size());
    }

    /// Moves f from remaining to selected and folds I(f; g) into the
    /// redundancy sum of every remaining g.
    void select(std::size_t f) {
        if (f >= is_selected_.size() || is_selected_[f]) throw Error("mrmr: invalid selection");
        is_selected_[f] = true;
        selected_.push_back(f);
        remaining_.erase(std::find(remaining_.begin(), remaining_.end(), f));
        const DiscreteVariable chosen(ds_->column(f), ds_->n_bins);
        parallel_for(remaining_.size(), [&](std::size_t r) {
            const std::size_t g = remaining_[r];
            redundancy_sum_[g] += mutual_information(chosen, DiscreteVariable(ds_->column(g), ds_->n_bins));
        });
    }

private:
    const DiscreteDataset* ds_;
    std::vector<int> labels_;
    std::vector<double> relevance_;
    std::vector<double> redundancy_sum_;
    std::vector<bool> is_selected_;
    std::vector<std::size_t> selected_;
    std::vector<std::size_t> remaining_;
};

struct MrmrRanking {
    std::vector<std::size_t> order;
    /// I(f; y) of each ranked feature.
    std::vector<double> relevance;
    /// J at the step the feature was picked; the first entry is its relevance.
    std::vector<double> score;
};

inline MrmrRanking mrmr_rank(const DiscreteDataset& ds, std::span<const int> labels, std::size_t top) {
    if (top < 1 || top > ds.n_features())
        throw Error("mrmr: T=" + std::to_string(top) + " outside [1, " + std::to_string(ds.n_features()) + "]");
    MrmrState state(ds, labels);
    MrmrRanking out;
    const auto& rel = state.relevance();

    const std::size_t first = argmax_lowest_index(rel, state.remaining());
    out.order.push_back(first);
    out.relevance.push_back(rel[first]);
    out.score.push_back(rel[first]);
    state.select(first);

    std::vector<double> scores(ds.n_features(), 0.0);
    while (out.order.size() < top) {
        for (std::size_t f : state.remaining()) scores[f] = state.score_candidate(f);
        const std::size_t pick = argmax_lowest_index(scores, state.remaining());
        out.order.push_back(pick);
        out.relevance.push_back(rel[pick]);
        out.score.push_back(scores[pick]);
        state.select(pick);
    }
    return out;
}

}  // namespace featsel
