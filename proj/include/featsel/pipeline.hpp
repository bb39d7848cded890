#pragma once

// Two-layer pipeline (MRMR filter, then wrapper search) and the batch
// benchmark harness that renders mean/std tables with paired t-test markers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "featsel/classify.hpp"
#include "featsel/data.hpp"
#include "featsel/metrics.hpp"
#include "featsel/mrmr.hpp"
#include "featsel/search.hpp"

namespace featsel {

enum class Method { mrmr, mrmr_gadp, mrmr_ga, full, full_gadp, full_ga };

inline Method parse_method(const std::string& s) {
    if (s == "mrmr") return Method::mrmr;
    if (s == "mrmr+gadp") return Method::mrmr_gadp;
    if (s == "mrmr+ga") return Method::mrmr_ga;
    if (s == "full") return Method::full;
    if (s == "full+gadp") return Method::full_gadp;
    if (s == "full+ga") return Method::full_ga;
    throw Error("plan: unknown method '" + s + "'");
}

inline const char* to_string(Method m) {
    switch (m) {
        case Method::mrmr: return "mrmr";
        case Method::mrmr_gadp: return "mrmr+gadp";
        case Method::mrmr_ga: return "mrmr+ga";
        case Method::full: return "full";
        case Method::full_gadp: return "full+gadp";
        case Method::full_ga: return "full+ga";
    }
    return "?";
}

inline bool uses_filter(Method m) { return m == Method::mrmr || m == Method::mrmr_gadp || m == Method::mrmr_ga; }
inline bool uses_gadp(Method m) { return m == Method::mrmr_gadp || m == Method::full_gadp; }
inline bool uses_ga(Method m) { return m == Method::mrmr_ga || m == Method::full_ga; }

struct Variant {
    std::string name;
    Method method = Method::mrmr_gadp;
    /// Filter size; clamped to the feature count.
    std::size_t top = kDefaultTopFeatures;
    /// GA baseline settings; ga.base is the shared search configuration.
    GaConfig ga{};

    SearchConfig& search() { return ga.base; }
    const SearchConfig& search() const { return ga.base; }
};

struct PipelineResult {
    EvaluationReport report;
    std::vector<std::size_t> candidates;
    std::optional<MrmrRanking> ranking;
    std::optional<SearchResult> search;
    std::vector<std::size_t> selected;
    double filter_seconds = 0.0;
    double search_seconds = 0.0;
};

namespace detail {
inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace detail

/// Normalization and discretization, MRMR top-T (filter variants), wrapper
/// search (search variants), then a final cross-validated report of the
/// selected features. `seed` drives the search.
inline PipelineResult run_pipeline(const Dataset& raw, const Variant& variant, const ClassifierSpec& spec,
                                   const FoldPlan& folds, std::uint64_t seed, int bins = 10) {
    raw.validate();
    spec.validate();
    PipelineResult out;
    const Dataset normalized = normalize(raw);

    auto t0 = std::chrono::steady_clock::now();
    if (uses_filter(variant.method)) {
        const DiscreteDataset discrete = discretize(raw, bins);
        const std::size_t top = std::min(variant.top, raw.n_features());
        out.ranking = mrmr_rank(discrete, raw.labels, top);
        out.candidates = out.ranking->order;
    } else {
        out.candidates.resize(raw.n_features());
        std::iota(out.candidates.begin(), out.candidates.end(), 0);
    }
    out.filter_seconds = detail::seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    if (uses_gadp(variant.method)) {
        SearchConfig cfg = variant.search();
        cfg.seed = seed;
        out.search = gadp_run(normalized, out.candidates, spec, folds, cfg);
        out.selected = decode(out.search->best.genes, out.candidates);
    } else if (uses_ga(variant.method)) {
        GaConfig cfg = variant.ga;
        cfg.base.seed = seed;
        out.search = ga_run(normalized, out.candidates, spec, folds, cfg);
        out.selected = decode(out.search->best.genes, out.candidates);
    } else {
        out.selected = out.candidates;
    }
    out.search_seconds = detail::seconds_since(t0);

    out.report = evaluate_subset(normalized, out.selected, spec, folds);
    return out;
}

/// One-line summary: instances, features, classes and per-class counts.
inline std::string info(const Dataset& ds) {
    std::ostringstream os;
    os << ds.n_instances() << " instances, " << ds.n_features() << " features, " << ds.n_classes << " classes, {";
    const auto counts = ds.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c) os << (c ? ", " : "") << c << ':' << counts[c];
    os << '}';
    return os.str();
}

// ---------------------------------------------------------------------------
// Experiment plans

struct ExperimentPlan {
    std::vector<std::string> datasets;
    std::optional<LabelColumn> label_col;
    std::vector<ClassifierSpec> classifiers;
    std::vector<Variant> variants;
    /// Variant the others are tested against; defaults to the first.
    std::string reference;
    int folds = 5;
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    int bins = 10;
    std::string output_dir;

    const Variant* find_variant(const std::string& name) const {
        for (const auto& v : variants)
            if (v.name == name) return &v;
        return nullptr;
    }

    void validate() const {
        if (datasets.empty()) throw Error("plan: no datasets");
        if (variants.empty()) throw Error("plan: no variants");
        if (classifiers.empty()) throw Error("plan: no classifiers");
        if (repeats < 1) throw Error("plan: repeats must be >= 1");
        if (folds < 2) throw Error("plan: folds must be >= 2");
        for (const auto& path : datasets)
            if (!std::filesystem::exists(path)) throw Error("plan: dataset '" + path + "' does not exist");
        if (!find_variant(reference)) throw Error("plan: reference variant '" + reference + "' not defined");
        std::map<std::string, int> seen;
        for (const auto& v : variants) {
            if (++seen[v.name] > 1) throw Error("plan: duplicate variant '" + v.name + "'");
            v.search().validate();
        }
        for (const auto& c : classifiers) c.validate();
    }
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline ClampBounds parse_clamp(const std::string& s) {
    const auto parts = split_list(s);
    if (parts.size() != 2) throw Error("clamp: expected 'lo,hi', got '" + s + "'");
    ClampBounds c{std::stod(parts[0]), std::stod(parts[1])};
    c.validate();
    return c;
}

inline void apply_variant_key(Variant& v, const std::string& key, const std::string& value) {
    auto& s = v.search();
    if (key == "method") v.method = parse_method(value);
    else if (key == "top") v.top = std::stoul(value);
    else if (key == "population") s.population = std::stoul(value);
    else if (key == "iterations") s.max_iterations = std::stoul(value);
    else if (key == "patience") s.patience = std::stoul(value);
    else if (key == "init_prob") s.init_prob = std::stod(value);
    else if (key == "discard_frac") s.discard_fraction = std::stod(value);
    else if (key == "clamp") s.clamp = parse_clamp(value);
    else if (key == "max_features") s.max_features = std::stoul(value);
    else if (key == "crossover_rate") v.ga.crossover_rate = std::stod(value);
    else if (key == "mutation_rate") v.ga.mutation_rate = std::stod(value);
    else if (key == "tournament") v.ga.tournament_size = std::stoul(value);
    else if (key == "elitism") v.ga.elitism = std::stoul(value);
    else throw Error("plan: unknown variant key '" + key + "'");
}

}  // namespace detail

/// INI-style plan: a [plan] section and one [variant <name>] section per
/// pipeline variant. Relative paths resolve against base_dir.
inline ExperimentPlan parse_plan(std::istream& in, const std::filesystem::path& base_dir = {}) {
    ExperimentPlan plan;
    std::string line, section;
    Variant* current = nullptr;
    std::size_t line_no = 0;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return (path.is_absolute() || base_dir.empty() ? path : base_dir / path).lexically_normal().string();
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        try {
            if (line.front() == '[') {
                if (line.back() != ']') throw Error("malformed section header");
                section = detail::trim(line.substr(1, line.size() - 2));
                current = nullptr;
                if (section.rfind("variant", 0) == 0) {
                    Variant v;
                    v.name = detail::trim(section.substr(7));
                    if (v.name.empty()) throw Error("variant section needs a name");
                    plan.variants.push_back(std::move(v));
                    current = &plan.variants.back();
                } else if (section != "plan") {
                    throw Error("unknown section '" + section + "'");
                }
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw Error("expected key = value");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (current) {
                detail::apply_variant_key(*current, key, value);
            } else if (section == "plan") {
                if (key == "datasets") {
                    for (const auto& p : detail::split_list(value)) plan.datasets.push_back(resolve(p));
                } else if (key == "label_col") {
                    plan.label_col = parse_label_column(value);
                } else if (key == "classifiers") {
                    for (const auto& c : detail::split_list(value)) plan.classifiers.push_back(parse_classifier(c));
                } else if (key == "folds") {
                    plan.folds = std::stoi(value);
                } else if (key == "repeats") {
                    plan.repeats = std::stoul(value);
                } else if (key == "seed") {
                    plan.seed = std::stoull(value);
                } else if (key == "bins") {
                    plan.bins = std::stoi(value);
                } else if (key == "output") {
                    plan.output_dir = resolve(value);
                } else if (key == "reference") {
                    plan.reference = value;
                } else {
                    throw Error("unknown plan key '" + key + "'");
                }
            } else {
                throw Error("key outside of a section");
            }
        } catch (const std::logic_error& e) {
            throw Error("plan line " + std::to_string(line_no) + ": invalid value (" + e.what() + ")");
        } catch (const Error& e) {
            throw Error("plan line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (plan.classifiers.empty()) plan.classifiers.push_back(ClassifierSpec{});
    if (plan.reference.empty() && !plan.variants.empty()) plan.reference = plan.variants.front().name;
    return plan;
}

inline ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("plan: cannot open '" + path + "'");
    return parse_plan(in, std::filesystem::path(path).parent_path());
}

// ---------------------------------------------------------------------------
// Summary tables

struct SummaryCell {
    MeanStd accuracy;
    MeanStd macro_f1;
    MeanStd macro_auc;
    /// Paired-test samples: per-fold accuracy with one repeat, per-repeat
    /// mean accuracy otherwise.
    std::vector<double> samples;
    /// Reference vs this cell; unset for the reference itself and failures.
    std::optional<TTestResult> vs_reference;
    bool failed = false;
    std::string error;
};

struct SummaryTable {
    std::vector<std::string> datasets;
    std::vector<std::string> classifiers;
    std::vector<std::string> variants;
    std::string reference;
    /// "folds" or "runs": what the reported standard deviation is taken over.
    std::string std_over = "folds";
    std::map<std::tuple<std::string, std::string, std::string>, SummaryCell> cells;

    SummaryCell& at(const std::string& d, const std::string& c, const std::string& v) { return cells[{d, c, v}]; }
    const SummaryCell* find(const std::string& d, const std::string& c, const std::string& v) const {
        auto it = cells.find({d, c, v});
        return it == cells.end() ? nullptr : &it->second;
    }
};

struct WinTieLoss {
    std::size_t win = 0, tie = 0, loss = 0;
};

/// Paired t-test of the reference against every other variant, per dataset
/// and classifier. A verdict of win means the reference is better.
inline void compute_verdicts(SummaryTable& table, double alpha = 0.05) {
    for (const auto& d : table.datasets)
        for (const auto& c : table.classifiers) {
            const SummaryCell* ref = table.find(d, c, table.reference);
            for (const auto& v : table.variants) {
                auto& cell = table.at(d, c, v);
                cell.vs_reference.reset();
                if (v == table.reference || cell.failed || !ref || ref->failed) continue;
                if (cell.samples.size() != ref->samples.size() || cell.samples.size() < 2) continue;
                cell.vs_reference = paired_t_test(ref->samples, cell.samples, alpha);
            }
        }
}

inline WinTieLoss win_tie_loss(const SummaryTable& table, const std::string& classifier, const std::string& variant) {
    WinTieLoss w;
    for (const auto& d : table.datasets) {
        const SummaryCell* cell = table.find(d, classifier, variant);
        if (!cell || !cell->vs_reference) continue;
        switch (cell->vs_reference->verdict) {
            case Verdict::win: ++w.win; break;
            case Verdict::tie: ++w.tie; break;
            case Verdict::loss: ++w.loss; break;
        }
    }
    return w;
}

namespace detail {

inline std::string fixed(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string percent_cell(const SummaryCell& cell) {
    if (cell.failed) return "error";
    std::string s = fixed(100.0 * cell.accuracy.mean, 2) + "±" + fixed(100.0 * cell.accuracy.std, 2);
    if (cell.vs_reference) s += std::string(" (") + marker(cell.vs_reference->verdict) + ")";
    return s;
}

// Display width in code points, so '±' counts once.
inline std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char ch : s) w += (ch & 0xC0) != 0x80;
    return w;
}

}  // namespace detail

/// Aligned markdown: one row per dataset, one column per classifier/variant,
/// accuracy as mean±std percent with the reference comparison marker, and a
/// final W/T/L row.
inline std::string render_markdown(const SummaryTable& table) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Dataset"};
    for (const auto& c : table.classifiers)
        for (const auto& v : table.variants) header.push_back(c + "/" + v);
    rows.push_back(header);
    for (const auto& d : table.datasets) {
        std::vector<std::string> row{d};
        for (const auto& c : table.classifiers)
            for (const auto& v : table.variants) {
                const SummaryCell* cell = table.find(d, c, v);
                row.push_back(cell ? detail::percent_cell(*cell) : "");
            }
        rows.push_back(row);
    }
    std::vector<std::string> wtl{"W/T/L"};
    for (const auto& c : table.classifiers)
        for (const auto& v : table.variants) {
            if (v == table.reference) {
                wtl.emplace_back();
                continue;
            }
            const auto w = win_tie_loss(table, c, v);
            wtl.push_back(std::to_string(w.win) + "/" + std::to_string(w.tie) + "/" + std::to_string(w.loss));
        }
    rows.push_back(wtl);

    std::vector<std::size_t> width(header.size(), 3);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], detail::display_width(r[i]));

    auto emit = [&](std::ostringstream& os, const std::vector<std::string>& r) {
        os << '|';
        for (std::size_t i = 0; i < r.size(); ++i)
            os << ' ' << r[i] << std::string(width[i] - detail::display_width(r[i]), ' ') << " |";
        os << '\n';
    };
    std::ostringstream os;
    os << "Accuracy (%), mean±std over " << table.std_over << "; markers compare " << table.reference
       << " against each column (paired two-tailed t-test, p < 0.05).\n\n";
    emit(os, rows.front());
    os << '|';
    for (std::size_t i = 0; i < header.size(); ++i) os << ' ' << std::string(width[i], '-') << " |";
    os << '\n';
    for (std::size_t r = 1; r < rows.size(); ++r) emit(os, rows[r]);
    return os.str();
}

inline std::string render_csv(const SummaryTable& table) {
    std::ostringstream os;
    os << "dataset,classifier,variant,accuracy_mean,accuracy_std,macro_f1_mean,macro_f1_std,"
          "macro_auc_mean,macro_auc_std,std_over,t,p,marker,status\n";
    for (const auto& d : table.datasets)
        for (const auto& c : table.classifiers)
            for (const auto& v : table.variants) {
                const SummaryCell* cell = table.find(d, c, v);
                if (!cell) continue;
                os << d << ',' << c << ',' << v << ',';
                if (cell->failed) {
                    os << ",,,,,," << table.std_over << ",,,,error\n";
                    continue;
                }
                using detail::fixed;
                os << fixed(cell->accuracy.mean, 6) << ',' << fixed(cell->accuracy.std, 6) << ','
                   << fixed(cell->macro_f1.mean, 6) << ',' << fixed(cell->macro_f1.std, 6) << ','
                   << fixed(cell->macro_auc.mean, 6) << ',' << fixed(cell->macro_auc.std, 6) << ','
                   << table.std_over << ',';
                if (cell->vs_reference)
                    os << fixed(cell->vs_reference->t, 6) << ',' << fixed(cell->vs_reference->p, 6) << ','
                       << marker(cell->vs_reference->verdict);
                else
                    os << ",,";
                os << ",ok\n";
            }
    // W/T/L rows, reference perspective.
    for (const auto& c : table.classifiers)
        for (const auto& v : table.variants) {
            if (v == table.reference) continue;
            const auto w = win_tie_loss(table, c, v);
            os << "W/T/L," << c << ',' << v << ",,,,,,," << table.std_over << ",,," << w.win << '/' << w.tie << '/'
               << w.loss << ",summary\n";
        }
    return os.str();
}

// ---------------------------------------------------------------------------
// Benchmark runs

struct BenchmarkResult {
    SummaryTable table;
    /// "<dataset>/<variant>/<classifier>: message" per failed cell.
    std::vector<std::string> errors;
    bool ok() const noexcept { return errors.empty(); }
};

inline std::string dataset_label(const std::string& path) { return std::filesystem::path(path).stem().string(); }

/// Fold seed and search seed of one repeat. Every variant and classifier of a
/// dataset shares them, so the paired tests compare like with like.
inline std::uint64_t repeat_fold_seed(std::uint64_t plan_seed, std::size_t repeat) {
    return derive_seed(plan_seed, {repeat, 0xF01D});
}
inline std::uint64_t repeat_search_seed(std::uint64_t plan_seed, std::size_t repeat) {
    return derive_seed(plan_seed, {repeat, 0x5EA5C4});
}

namespace detail {

struct CellOutput {
    std::string report_rows;
    std::string history_rows;
    std::string selection_rows;
    std::string timing_rows;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace detail

/// Runs every dataset x variant x classifier x repeat cell. Failures are
/// recorded per cell and never abort the batch. When the plan has an output
/// directory the layout is <out>/<dataset>/<variant>/{report.csv,history.csv,
/// selection.txt}, <out>/summary.{csv,md}, and wall times in <out>/timings.csv.
inline BenchmarkResult run_benchmark(const ExperimentPlan& plan) {
    plan.validate();
    BenchmarkResult result;
    auto& table = result.table;
    table.reference = plan.reference;
    table.std_over = plan.repeats > 1 ? "runs" : "folds";
    for (const auto& v : plan.variants) table.variants.push_back(v.name);
    for (const auto& c : plan.classifiers) table.classifiers.push_back(c.name());

    std::ostringstream timings;
    timings << "dataset,variant,classifier,repeat,filter_seconds,search_seconds\n";
    const bool write = !plan.output_dir.empty();
    namespace fs = std::filesystem;

    for (const auto& path : plan.datasets) {
        std::string label = dataset_label(path);
        for (int dup = 2; std::find(table.datasets.begin(), table.datasets.end(), label) != table.datasets.end(); ++dup)
            label = dataset_label(path) + "_" + std::to_string(dup);
        table.datasets.push_back(label);

        std::optional<Dataset> ds;
        std::vector<FoldPlan> fold_plans;
        std::string load_error;
        try {
            ds = load_csv(path, plan.label_col);
            ds->validate();
            for (std::size_t r = 0; r < plan.repeats; ++r)
                fold_plans.push_back(stratified_kfold(*ds, plan.folds, repeat_fold_seed(plan.seed, r)));
        } catch (const std::exception& e) {
            load_error = e.what();
        }

        for (const auto& variant : plan.variants) {
            std::map<std::string, detail::CellOutput> outputs;
            for (const auto& spec : plan.classifiers) {
                auto& cell = table.at(label, spec.name(), variant.name);
                auto& out = outputs[spec.name()];
                if (!load_error.empty()) {
                    cell.failed = true;
                    cell.error = load_error;
                    result.errors.push_back(label + "/" + variant.name + "/" + spec.name() + ": " + load_error);
                    continue;
                }
                try {
                    std::vector<double> accs, f1s, aucs;
                    for (std::size_t r = 0; r < plan.repeats; ++r) {
                        const auto run = run_pipeline(*ds, variant, spec, fold_plans[r],
                                                      repeat_search_seed(plan.seed, r), plan.bins);
                        const auto& rep = run.report;
                        std::ostringstream rows, hist, sel;
                        for (std::size_t f = 0; f < rep.fold_accuracy.size(); ++f)
                            rows << spec.name() << ',' << r << ',' << f << ',' << detail::fixed(rep.fold_accuracy[f], 6)
                                 << ',' << detail::fixed(rep.fold_macro_f1[f], 6) << ','
                                 << detail::fixed(rep.fold_macro_auc[f], 6) << '\n';
                        rows << spec.name() << ',' << r << ",mean," << detail::fixed(rep.accuracy.mean, 6) << ','
                             << detail::fixed(rep.macro_f1.mean, 6) << ',' << detail::fixed(rep.macro_auc.mean, 6)
                             << '\n';
                        if (run.search)
                            for (const auto& h : run.search->history)
                                hist << spec.name() << ',' << r << ',' << h.generation << ','
                                     << detail::fixed(h.best_fitness, 6) << ',' << detail::fixed(h.mean_fitness, 6)
                                     << ',' << detail::fixed(h.entropy, 6) << '\n';
                        sel << spec.name() << ',' << r << ',' << run.selected.size() << ',';
                        for (std::size_t i = 0; i < run.selected.size(); ++i)
                            sel << (i ? ";" : "") << ds->feature_name(run.selected[i]);
                        sel << '\n';
                        out.report_rows += rows.str();
                        out.history_rows += hist.str();
                        out.selection_rows += sel.str();
                        timings << label << ',' << variant.name << ',' << spec.name() << ',' << r << ','
                                << detail::fixed(run.filter_seconds, 4) << ',' << detail::fixed(run.search_seconds, 4)
                                << '\n';

                        if (plan.repeats == 1) {
                            cell.samples = rep.fold_accuracy;
                            accs = rep.fold_accuracy;
                            f1s = rep.fold_macro_f1;
                            for (double a : rep.fold_macro_auc)
                                if (!std::isnan(a)) aucs.push_back(a);
                        } else {
                            cell.samples.push_back(rep.accuracy.mean);
                            accs.push_back(rep.accuracy.mean);
                            f1s.push_back(rep.macro_f1.mean);
                            aucs.push_back(rep.macro_auc.mean);
                        }
                    }
                    cell.accuracy = mean_std(accs);
                    cell.macro_f1 = mean_std(f1s);
                    cell.macro_auc = mean_std(aucs);
                } catch (const std::exception& e) {
                    cell.failed = true;
                    cell.error = e.what();
                    cell.samples.clear();
                    result.errors.push_back(label + "/" + variant.name + "/" + spec.name() + ": " + e.what());
                }
            }
            if (write && load_error.empty()) {
                const fs::path dir = fs::path(plan.output_dir) / label / variant.name;
                fs::create_directories(dir);
                std::string report = "classifier,repeat,fold,accuracy,macro_f1,macro_auc\n";
                std::string history = "classifier,repeat,generation,best,mean,entropy\n";
                std::string selection = "classifier,repeat,n_selected,features\n";
                for (const auto& [name, o] : outputs) {
                    report += o.report_rows;
                    history += o.history_rows;
                    selection += o.selection_rows;
                }
                detail::write_text(dir / "report.csv", report);
                detail::write_text(dir / "history.csv", history);
                detail::write_text(dir / "selection.txt", selection);
            }
        }
    }
    compute_verdicts(table);

    if (write) {
        fs::create_directories(plan.output_dir);
        const fs::path out(plan.output_dir);
        detail::write_text(out / "summary.csv", render_csv(table));
        detail::write_text(out / "summary.md", render_markdown(table));
        detail::write_text(out / "timings.csv", timings.str());
        std::string log;
        for (const auto& e : result.errors) log += e + "\n";
        detail::write_text(out / "errors.log", log);
    }
    return result;
}

}  // namespace featsel
