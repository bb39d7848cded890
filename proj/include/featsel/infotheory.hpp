#pragma once

// Plug-in (empirical frequency) entropy and mutual information over discrete
// variables. All quantities are in nats.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "featsel/core.hpp"

namespace featsel {

/// Values in [0, cardinality). A cardinality of 0 means "max value + 1".
struct DiscreteVariable {
    std::span<const int> values;
    int cardinality = 0;

    DiscreteVariable(std::span<const int> v, int card = 0) : values(v), cardinality(card) {
        int max_v = -1;
        for (int x : values) {
            if (x < 0) throw Error("discrete variable: negative symbol");
            max_v = std::max(max_v, x);
        }
        if (cardinality == 0) {
            cardinality = max_v + 1;
        } else if (max_v >= cardinality) {
            throw Error("discrete variable: symbol outside cardinality");
        }
    }
    DiscreteVariable(const std::vector<int>& v, int card = 0) : DiscreteVariable(std::span<const int>(v), card) {}

    std::size_t size() const noexcept { return values.size(); }
};

namespace detail {

// -sum (c/n) ln(c/n) over non-zero counts.
inline double entropy_from_counts(std::span<const std::size_t> counts, std::size_t n) {
    const double total = static_cast<double>(n);
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log(p);
    }
    return h;
}

}  // namespace detail

inline double entropy(const DiscreteVariable& x) {
    if (x.size() == 0) throw Error("entropy: empty input");
    std::vector<std::size_t> counts(static_cast<std::size_t>(x.cardinality), 0);
    for (int v : x.values) ++counts[static_cast<std::size_t>(v)];
    return detail::entropy_from_counts(counts, x.size());
}

/// H(X|Y) = sum_y p(y) H(X | Y=y).
inline double conditional_entropy(const DiscreteVariable& x, const DiscreteVariable& y) {
    if (x.size() != y.size()) throw Error("conditional entropy: length mismatch");
    if (x.size() == 0) throw Error("conditional entropy: empty input");
    const auto cx = static_cast<std::size_t>(x.cardinality);
    const auto cy = static_cast<std::size_t>(y.cardinality);
    // joint[yv * cx + xv]
    std::vector<std::size_t> joint(cx * cy, 0);
    std::vector<std::size_t> y_counts(cy, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto xv = static_cast<std::size_t>(x.values[i]);
        const auto yv = static_cast<std::size_t>(y.values[i]);
        ++joint[yv * cx + xv];
        ++y_counts[yv];
    }
    const double n = static_cast<double>(x.size());
    double h = 0.0;
    for (std::size_t yv = 0; yv < cy; ++yv) {
        if (y_counts[yv] == 0) continue;
        std::span<const std::size_t> slice(joint.data() + yv * cx, cx);
        h += static_cast<double>(y_counts[yv]) / n * detail::entropy_from_counts(slice, y_counts[yv]);
    }
    return std::max(h, 0.0);
}

/// I(X;Y) = H(X) - H(X|Y), clipped to 0 when rounding pushes it slightly negative.
inline double mutual_information(const DiscreteVariable& x, const DiscreteVariable& y) {
    if (x.size() != y.size()) throw Error("mutual information: length mismatch");
    const double mi = entropy(x) - conditional_entropy(x, y);
    return mi < 0.0 && mi > -1e-12 ? 0.0 : mi;
}

}  // namespace featsel
