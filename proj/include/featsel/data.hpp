#pragma once

// Tabular datasets: CSV loading, min-max normalization, equal-width
// discretization and stratified k-fold planning.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "featsel/core.hpp"
#include "featsel/rng.hpp"

namespace featsel {

struct Dataset {
    Matrix<double> features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    /// Original label text, indexed by encoded label.
    std::vector<std::string> class_names;
    int n_classes = 0;

    std::size_t n_instances() const noexcept { return features.rows(); }
    std::size_t n_features() const noexcept { return features.cols(); }

    std::vector<std::size_t> class_counts() const {
        std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
        for (int y : labels) ++counts[static_cast<std::size_t>(y)];
        return counts;
    }

    /// Throws unless the row/label/class invariants hold.
    void validate() const {
        if (features.rows() != labels.size())
            throw Error("dataset: feature rows (" + std::to_string(features.rows()) +
                        ") != label count (" + std::to_string(labels.size()) + ")");
        if (n_classes < 2) throw Error("dataset: need at least 2 classes");
        for (int y : labels)
            if (y < 0 || y >= n_classes) throw Error("dataset: label out of range");
        for (double v : features.data())
            if (!std::isfinite(v)) throw Error("dataset: non-finite feature value");
        if (!feature_names.empty() && feature_names.size() != features.cols())
            throw Error("dataset: feature name count mismatch");
    }

    std::string feature_name(std::size_t j) const {
        return j < feature_names.size() ? feature_names[j] : std::to_string(j);
    }
};

/// Equal-width bin indices, stored column-major for per-feature access.
struct DiscreteDataset {
    std::vector<std::vector<int>> columns;
    int n_bins = 10;
    std::size_t n_instances = 0;

    std::size_t n_features() const noexcept { return columns.size(); }
    std::span<const int> column(std::size_t j) const { return columns.at(j); }
};

struct FoldPlan {
    int k = 0;
    std::vector<int> assignments;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return assignments.size(); }

    std::vector<std::size_t> test_indices(int fold) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < assignments.size(); ++i)
            if (assignments[i] == fold) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> train_indices(int fold) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < assignments.size(); ++i)
            if (assignments[i] != fold) out.push_back(i);
        return out;
    }

    friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

/// Label column by zero-based index or header name.
using LabelColumn = std::variant<std::size_t, std::string>;

/// Digits are an index, anything else a header name.
inline LabelColumn parse_label_column(const std::string& text) {
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
        return static_cast<std::size_t>(std::stoull(text));
    return text;
}

namespace detail {

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// Comma-separated with optional double-quoted fields ("" escapes a quote).
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    out.push_back(trim(cell));
    return out;
}

inline std::optional<double> parse_real(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace detail

/// Parses CSV text: first row is the header, every non-label cell must be a
/// finite real. Labels are encoded 0..n_classes-1 by order of first appearance.
/// Without a selector the last column is the label.
inline Dataset parse_csv(std::istream& in, const std::optional<LabelColumn>& label_col = std::nullopt) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::trim(line).empty()) {
            header = detail::split_csv_line(line);
            break;
        }
    }
    if (header.empty()) throw Error("csv: empty file");
    if (header.size() < 2) throw Error("csv: need at least one feature column and a label column");

    std::size_t label_idx = header.size() - 1;
    if (label_col) {
        if (const auto* idx = std::get_if<std::size_t>(&*label_col)) {
            if (*idx >= header.size())
                throw Error("csv: label column index " + std::to_string(*idx) + " out of range");
            label_idx = *idx;
        } else {
            const auto& name = std::get<std::string>(*label_col);
            auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) throw Error("csv: label column '" + name + "' not found");
            label_idx = static_cast<std::size_t>(it - header.begin());
        }
    }

    Dataset ds;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != label_idx) ds.feature_names.push_back(header[c]);

    std::vector<double> values;
    std::unordered_map<std::string, int> codes;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw Error("csv: line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_idx) continue;
            auto v = detail::parse_real(cells[c]);
            if (!v)
                throw Error("csv: unparseable cell '" + cells[c] + "' at row " + std::to_string(line_no) +
                            ", column " + std::to_string(c + 1) + " (" + header[c] + ")");
            values.push_back(*v);
        }
        const auto& label = cells[label_idx];
        auto [it, inserted] = codes.try_emplace(label, static_cast<int>(codes.size()));
        if (inserted) ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
        ++rows;
    }
    if (rows == 0) throw Error("csv: no data rows");
    if (codes.size() < 2) throw Error("csv: label column has a single class");

    ds.n_classes = static_cast<int>(codes.size());
    ds.features = Matrix<double>(rows, header.size() - 1, std::move(values));
    return ds;
}

inline Dataset load_csv(const std::string& path, const std::optional<LabelColumn>& label_col = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw Error("csv: cannot open '" + path + "'");
    return parse_csv(in, label_col);
}

/// Min-max scaling into [0, 1]. A constant column maps to all zeros.
inline std::vector<double> normalize_column(std::span<const double> values) {
    if (values.empty()) throw Error("normalize: empty column");
    for (double v : values)
        if (!std::isfinite(v)) throw Error("normalize: non-finite value");
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<double> out(values.size(), 0.0);
    if (hi == lo) return out;
    const double range = hi - lo;
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / range;
    return out;
}

/// Dataset with every feature column min-max normalized.
inline Dataset normalize(const Dataset& ds) {
    Dataset out = ds;
    for (std::size_t j = 0; j < ds.n_features(); ++j) {
        auto col = normalize_column(ds.features.column(j));
        for (std::size_t i = 0; i < col.size(); ++i) out.features(i, j) = col[i];
    }
    return out;
}

/// Bin of a normalized value: floor(x * B), with 1.0 in the top bin.
inline int bin_of(double normalized, int n_bins) {
    const int b = static_cast<int>(std::floor(normalized * n_bins));
    return std::clamp(b, 0, n_bins - 1);
}

/// Equal-width discretization of every column over the full dataset.
inline DiscreteDataset discretize(const Dataset& ds, int n_bins = 10) {
    if (n_bins < 2) throw Error("discretize: bin count must be >= 2");
    DiscreteDataset out;
    out.n_bins = n_bins;
    out.n_instances = ds.n_instances();
    out.columns.reserve(ds.n_features());
    for (std::size_t j = 0; j < ds.n_features(); ++j) {
        auto col = normalize_column(ds.features.column(j));
        std::vector<int> bins(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) bins[i] = bin_of(col[i], n_bins);
        out.columns.push_back(std::move(bins));
    }
    return out;
}

/// Stratified k-fold assignment. Members of each class are shuffled and dealt
/// round-robin; the dealing position carries over between classes so total
/// fold sizes stay balanced as well.
inline FoldPlan stratified_kfold(std::span<const int> labels, int n_classes, int k, std::uint64_t seed) {
    if (k < 2) throw Error("kfold: K must be >= 2");
    if (static_cast<std::size_t>(k) > labels.size())
        throw Error("kfold: K=" + std::to_string(k) + " exceeds instance count " + std::to_string(labels.size()));

    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(n_classes));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= n_classes) throw Error("kfold: label out of range");
        members[static_cast<std::size_t>(labels[i])].push_back(i);
    }

    FoldPlan plan{k, std::vector<int>(labels.size(), -1), seed};
    Rng rng(seed);
    std::size_t cursor = 0;
    for (auto& group : members) {
        rng.shuffle(group.begin(), group.end());
        for (std::size_t idx : group) {
            plan.assignments[idx] = static_cast<int>(cursor % static_cast<std::size_t>(k));
            ++cursor;
        }
    }
    return plan;
}

inline FoldPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed) {
    return stratified_kfold(ds.labels, ds.n_classes, k, seed);
}

/// Audit format: one fold index per line, in instance order.
inline void write_fold_plan(std::ostream& out, const FoldPlan& plan) {
    for (int f : plan.assignments) out << f << '\n';
}

inline FoldPlan read_fold_plan(std::istream& in, std::uint64_t seed = 0) {
    FoldPlan plan;
    plan.seed = seed;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        plan.assignments.push_back(std::stoi(line));
    }
    int max_fold = -1;
    for (int f : plan.assignments) {
        if (f < 0) throw Error("fold plan: negative fold index");
        max_fold = std::max(max_fold, f);
    }
    plan.k = max_fold + 1;
    return plan;
}

}  // namespace featsel
