#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "featsel/featsel.hpp"

namespace fixtures {

using featsel::Dataset;
using featsel::Matrix;

inline Dataset make_dataset(std::size_t rows, std::size_t cols, std::vector<double> values, std::vector<int> labels,
                            int n_classes) {
    Dataset ds;
    ds.features = Matrix<double>(rows, cols, std::move(values));
    ds.labels = std::move(labels);
    ds.n_classes = n_classes;
    for (int c = 0; c < n_classes; ++c) ds.class_names.push_back(std::to_string(c));
    return ds;
}

/// Columns of the planted instance that carry the label.
inline constexpr std::array<std::size_t, 3> kPlantedColumns{2, 7, 11};

/// Rows closer than this to the decision plane are redrawn.
inline constexpr double kPlantedMargin = 0.15;

/// Uniform [0,1) features; the label is 1 when the three planted columns sum
/// past 1.5. Every other column is independent noise. Informative columns sit
/// at kPlantedColumns (for n_features >= 12).
inline Dataset planted_dataset(std::size_t rows = 200, std::size_t n_features = 15, std::uint64_t seed = 2024) {
    featsel::Rng rng(seed);
    std::vector<double> values(rows * n_features);
    std::vector<int> labels(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        double sum = 0.0;
        do {
            sum = 0.0;
            for (std::size_t j = 0; j < n_features; ++j) {
                const double v = rng.uniform();
                values[i * n_features + j] = v;
                for (std::size_t p : kPlantedColumns)
                    if (p == j) sum += v;
            }
        } while (std::abs(sum - 1.5) < kPlantedMargin);
        labels[i] = sum > 1.5 ? 1 : 0;
    }
    Dataset ds = make_dataset(rows, n_features, std::move(values), std::move(labels), 2);
    for (std::size_t j = 0; j < n_features; ++j) ds.feature_names.push_back("f" + std::to_string(j));
    return ds;
}

/// Random discrete columns for property tests.
inline std::vector<int> random_symbols(featsel::Rng& rng, std::size_t n, int cardinality) {
    std::vector<int> v(n);
    for (auto& x : v) x = static_cast<int>(rng.index(static_cast<std::uint64_t>(cardinality)));
    return v;
}

}  // namespace fixtures
