// featsel command line: info, rank, select, bench.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "featsel/featsel.hpp"

namespace fs = std::filesystem;
using namespace featsel;

namespace {

std::optional<LabelColumn> label_selector(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_label_column(text);
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

std::string fmt6(double v) { return detail::fixed(v, 6); }

std::string report_csv(const EvaluationReport& rep) {
    std::string s = "fold,accuracy,macro_f1,macro_auc\n";
    for (std::size_t f = 0; f < rep.fold_accuracy.size(); ++f)
        s += std::to_string(f) + "," + fmt6(rep.fold_accuracy[f]) + "," + fmt6(rep.fold_macro_f1[f]) + "," +
             fmt6(rep.fold_macro_auc[f]) + "\n";
    s += "mean," + fmt6(rep.accuracy.mean) + "," + fmt6(rep.macro_f1.mean) + "," + fmt6(rep.macro_auc.mean) + "\n";
    s += "std," + fmt6(rep.accuracy.std) + "," + fmt6(rep.macro_f1.std) + "," + fmt6(rep.macro_auc.std) + "\n";
    return s;
}

struct SelectOptions {
    std::string dataset;
    std::string label_col;
    std::string classifier = "knn";
    int k = 3;
    std::size_t top = kDefaultTopFeatures;
    bool full = false;
    std::string algorithm = "gadp";
    std::size_t population = 50;
    std::size_t iterations = 50;
    std::size_t patience = 10;
    double init_prob = 0.65;
    std::string clamp = "0,1";
    double discard_frac = 1.0 / 3.0;
    std::optional<std::size_t> max_features;
    int folds = 5;
    int bins = 10;
    std::uint64_t seed = 0;
    std::string out;
    std::string fold_plan;
};

int run_select(const SelectOptions& o) {
    const Dataset ds = load_csv(o.dataset, label_selector(o.label_col));
    ClassifierSpec spec = parse_classifier(o.classifier, o.k);
    if (spec.kind == ClassifierKind::knn) spec.k = o.k;

    Variant variant;
    variant.name = "select";
    variant.top = o.top;
    if (o.algorithm == "gadp") variant.method = o.full ? Method::full_gadp : Method::mrmr_gadp;
    else if (o.algorithm == "ga") variant.method = o.full ? Method::full_ga : Method::mrmr_ga;
    else if (o.algorithm == "none") variant.method = o.full ? Method::full : Method::mrmr;
    else throw Error("unknown algorithm '" + o.algorithm + "'");
    auto& cfg = variant.search();
    cfg.population = o.population;
    cfg.max_iterations = o.iterations;
    cfg.patience = o.patience;
    cfg.init_prob = o.init_prob;
    cfg.clamp = detail::parse_clamp(o.clamp);
    cfg.discard_fraction = o.discard_frac;
    cfg.max_features = o.max_features;
    cfg.validate();

    const FoldPlan folds = stratified_kfold(ds, o.folds, derive_seed(o.seed, {0xF01D}));
    const auto run = run_pipeline(ds, variant, spec, folds, o.seed, o.bins);

    std::string selection;
    for (std::size_t j : run.selected) selection += std::to_string(j) + "," + ds.feature_name(j) + "\n";
    std::string history = "generation,best,mean,entropy\n";
    std::string probabilities;
    if (run.search) {
        probabilities = "generation";
        for (std::size_t g = 0; g < run.candidates.size(); ++g) probabilities += "," + ds.feature_name(run.candidates[g]);
        probabilities += "\n";
        for (const auto& h : run.search->history) {
            history += std::to_string(h.generation) + "," + fmt6(h.best_fitness) + "," + fmt6(h.mean_fitness) + "," +
                       fmt6(h.entropy) + "\n";
            probabilities += std::to_string(h.generation);
            for (double p : h.probabilities) probabilities += "," + fmt6(p);
            probabilities += "\n";
        }
    }

    if (!o.out.empty()) {
        fs::create_directories(o.out);
        write_file(fs::path(o.out) / "selection.txt", selection);
        write_file(fs::path(o.out) / "report.csv", report_csv(run.report));
        if (run.search) {
            write_file(fs::path(o.out) / "history.csv", history);
            write_file(fs::path(o.out) / "probabilities.csv", probabilities);
        }
    }
    if (!o.fold_plan.empty()) {
        std::ofstream fp(o.fold_plan);
        if (!fp) throw Error("cannot write '" + o.fold_plan + "'");
        write_fold_plan(fp, folds);
    }

    std::cout << "selected " << run.selected.size() << " of " << ds.n_features() << " features:";
    for (std::size_t j : run.selected) std::cout << ' ' << ds.feature_name(j);
    std::cout << "\n";
    if (run.search)
        std::cout << "generations " << run.search->generations_run << " (" << to_string(run.search->stop_reason)
                  << "), evaluations " << run.search->evaluations << "\n";
    std::cout << spec.name() << " " << folds.k << "-fold: accuracy " << fmt6(run.report.accuracy.mean) << " ± "
              << fmt6(run.report.accuracy.std) << ", macro-F1 " << fmt6(run.report.macro_f1.mean) << ", macro-AUC "
              << fmt6(run.report.macro_auc.mean) << "\n";
    std::cerr << "filter " << detail::fixed(run.filter_seconds, 3) << " s, search "
              << detail::fixed(run.search_seconds, 3) << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MRMR filter + dynamic-probability wrapper feature selection"};
    app.require_subcommand(1);

    std::string dataset, label_col;

    auto* info_cmd = app.add_subcommand("info", "Summarize a dataset");
    info_cmd->add_option("--dataset", dataset, "CSV file")->required();
    info_cmd->add_option("--label-col", label_col, "Label column name or zero-based index (default: last)");

    std::size_t top = kDefaultTopFeatures;
    int bins = 10;
    std::string rank_out;
    auto* rank_cmd = app.add_subcommand("rank", "MRMR ranking of the features");
    rank_cmd->add_option("--dataset", dataset, "CSV file")->required();
    rank_cmd->add_option("--label-col", label_col, "Label column name or zero-based index (default: last)");
    rank_cmd->add_option("--top", top, "Number of features to rank")->capture_default_str();
    rank_cmd->add_option("--bins", bins, "Discretization bins")->capture_default_str();
    rank_cmd->add_option("--out", rank_out, "Write the ranking CSV here instead of stdout");

    SelectOptions sel;
    auto* select_cmd = app.add_subcommand("select", "Two-layer feature selection on one dataset");
    select_cmd->add_option("--dataset", sel.dataset, "CSV file")->required();
    select_cmd->add_option("--label-col", sel.label_col, "Label column name or zero-based index (default: last)");
    select_cmd->add_option("--classifier", sel.classifier, "gnb or knn")->check(CLI::IsMember({"gnb", "knn"}))->capture_default_str();
    select_cmd->add_option("--k", sel.k, "Neighbours for knn")->capture_default_str();
    select_cmd->add_option("--top", sel.top, "MRMR filter size")->capture_default_str();
    select_cmd->add_flag("--full", sel.full, "Skip the MRMR filter and search all features");
    select_cmd->add_option("--algorithm", sel.algorithm, "gadp, ga or none")->check(CLI::IsMember({"gadp", "ga", "none"}))->capture_default_str();
    select_cmd->add_option("--population", sel.population, "Population size")->capture_default_str();
    select_cmd->add_option("--iterations", sel.iterations, "Maximum generations")->capture_default_str();
    select_cmd->add_option("--patience", sel.patience, "Stop after this many generations without improvement")->capture_default_str();
    select_cmd->add_option("--init-prob", sel.init_prob, "Initial gene probability")->capture_default_str();
    select_cmd->add_option("--clamp", sel.clamp, "Gene probability bounds lo,hi")->capture_default_str();
    select_cmd->add_option("--discard-frac", sel.discard_frac, "Fraction discarded per generation")->capture_default_str();
    select_cmd->add_option("--max-features", sel.max_features, "Masks selecting more features score 0");
    select_cmd->add_option("--folds", sel.folds, "Cross-validation folds")->capture_default_str();
    select_cmd->add_option("--bins", sel.bins, "Discretization bins")->capture_default_str();
    select_cmd->add_option("--seed", sel.seed, "Random seed")->capture_default_str();
    select_cmd->add_option("--out", sel.out, "Output directory for selection.txt, history.csv, report.csv");
    select_cmd->add_option("--fold-plan", sel.fold_plan, "Write the fold assignment (one index per line)");

    std::string plan_path, bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "Run an experiment plan");
    bench_cmd->add_option("--plan", plan_path, "Plan file")->required();
    bench_cmd->add_option("--out", bench_out, "Override the plan's output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*info_cmd) {
            const Dataset ds = load_csv(dataset, label_selector(label_col));
            std::cout << info(ds) << "\n";
            return 0;
        }
        if (*rank_cmd) {
            const Dataset ds = load_csv(dataset, label_selector(label_col));
            const auto discrete = discretize(ds, bins);
            const auto ranking = mrmr_rank(discrete, ds.labels, std::min(top, ds.n_features()));
            std::string csv = "rank,index,feature,relevance,score\n";
            for (std::size_t r = 0; r < ranking.order.size(); ++r)
                csv += std::to_string(r + 1) + "," + std::to_string(ranking.order[r]) + "," +
                       ds.feature_name(ranking.order[r]) + "," + fmt6(ranking.relevance[r]) + "," +
                       fmt6(ranking.score[r]) + "\n";
            if (rank_out.empty()) std::cout << csv;
            else write_file(rank_out, csv);
            return 0;
        }
        if (*select_cmd) return run_select(sel);
        if (*bench_cmd) {
            auto plan = load_plan(plan_path);
            if (!bench_out.empty()) plan.output_dir = bench_out;
            const auto result = run_benchmark(plan);
            std::cout << render_markdown(result.table);
            for (const auto& e : result.errors) std::cerr << "error: " << e << "\n";
            return result.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
