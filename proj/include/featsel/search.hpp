#pragma once

// Wrapper search over binary feature masks.
//
// gadp_search: every generation is sampled gene-by-gene from a probability
// vector. After evaluation the worst fraction is discarded and each gene's
// probability becomes its frequency among the survivors (optionally clamped).
// No chromosome is carried between generations; only the probability vector
// and the best-ever chromosome persist.
//
// ga_search: classical generational GA used as the comparison baseline
// (tournament selection, single-point crossover, bit-flip mutation, elitism).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "featsel/classify.hpp"
#include "featsel/core.hpp"
#include "featsel/data.hpp"
#include "featsel/parallel.hpp"
#include "featsel/rng.hpp"

namespace featsel {

using Genes = std::vector<std::uint8_t>;

struct Chromosome {
    Genes genes;
    std::optional<double> fitness;

    std::size_t selected_count() const { return static_cast<std::size_t>(std::count(genes.begin(), genes.end(), 1)); }

    std::string key() const {
        std::string s(genes.size(), '0');
        for (std::size_t g = 0; g < genes.size(); ++g)
            if (genes[g]) s[g] = '1';
        return s;
    }

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// Feature indices of the set genes: {candidates[g] : gene g = 1}.
inline std::vector<std::size_t> decode(std::span<const std::uint8_t> genes, std::span<const std::size_t> candidates) {
    if (genes.size() != candidates.size()) throw Error("decode: chromosome length does not match candidates");
    std::vector<std::size_t> subset;
    for (std::size_t g = 0; g < genes.size(); ++g)
        if (genes[g]) subset.push_back(candidates[g]);
    return subset;
}

struct ClampBounds {
    double lo = 0.0;
    double hi = 1.0;

    void validate() const {
        if (!(0.0 <= lo && lo < hi && hi <= 1.0)) throw Error("clamp: need 0 <= lo < hi <= 1");
    }
    double apply(double p) const { return std::clamp(p, lo, hi); }
    friend bool operator==(const ClampBounds&, const ClampBounds&) = default;
};

/// -p ln p - (1 - p) ln(1 - p), with 0 ln 0 = 0.
inline double gene_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("gene entropy: probability outside [0, 1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
    return h;
}

/// Sum of gene entropies.
inline double chromosome_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) h += gene_entropy(p);
    return h;
}

struct GeneProbabilities {
    std::vector<double> p;
    ClampBounds clamp;

    static GeneProbabilities uniform(std::size_t m, double initial, ClampBounds clamp = {}) {
        return {std::vector<double>(m, clamp.apply(initial)), clamp};
    }

    std::size_t size() const noexcept { return p.size(); }
    double entropy() const { return chromosome_entropy(p); }
};

struct SearchConfig {
    std::size_t population = 50;
    /// Generations; 0 still evaluates the initial generation.
    std::size_t max_iterations = 50;
    std::size_t patience = 10;
    double discard_fraction = 1.0 / 3.0;
    double init_prob = 0.65;
    ClampBounds clamp{};
    std::uint64_t seed = 0;
    /// Masks with more selected genes than this score 0. Off when unset.
    std::optional<std::size_t> max_features;

    void validate() const {
        if (population < 1) throw Error("search: population must be >= 1");
        if (patience < 1) throw Error("search: patience must be >= 1");
        if (!(discard_fraction > 0.0 && discard_fraction < 1.0)) throw Error("search: discard fraction must be in (0, 1)");
        if (!(init_prob > 0.0 && init_prob < 1.0)) throw Error("search: initial probability must be in (0, 1)");
        clamp.validate();
    }
};

enum class StopReason { max_iterations, patience };

inline const char* to_string(StopReason r) { return r == StopReason::patience ? "patience" : "max_iterations"; }

struct GenerationRecord {
    std::size_t generation = 0;
    /// Best fitness seen so far in the run.
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    /// Probabilities the generation was sampled from (GA: gene frequencies).
    std::vector<double> probabilities;
    /// Sum of gene entropies of the snapshot.
    double entropy = 0.0;
    /// Distinct masks evaluated so far.
    std::size_t evaluations = 0;

    friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

struct SearchResult {
    Chromosome best;
    std::vector<GenerationRecord> history;
    std::size_t generations_run = 0;
    StopReason stop_reason = StopReason::max_iterations;
    std::size_t evaluations = 0;
    std::vector<double> final_probabilities;

    friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// n chromosomes, gene g set with probability p[g]. Chromosome i draws from
/// its own stream derived from (stream_seed, i).
inline std::vector<Chromosome> sample_population(const GeneProbabilities& probs, std::size_t n,
                                                 std::uint64_t stream_seed) {
    std::vector<Chromosome> population(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(stream_seed, {i}));
        auto& genes = population[i].genes;
        genes.resize(probs.size());
        for (std::size_t g = 0; g < probs.size(); ++g) genes[g] = rng.bernoulli(probs.p[g]) ? 1 : 0;
    }
    return population;
}

/// floor(n * l), leaving at least one survivor.
inline std::size_t discard_count(std::size_t n, double fraction) {
    const auto d = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction + 1e-9));
    return std::min(d, n == 0 ? 0 : n - 1);
}

/// Population indices ordered by descending fitness, lower index first on ties.
inline std::vector<std::size_t> rank_by_fitness(std::span<const Chromosome> population) {
    for (const auto& c : population)
        if (!c.fitness) throw Error("selection: unevaluated chromosome");
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return *population[a].fitness > *population[b].fitness; });
    return order;
}

/// Best n - floor(n * l) chromosomes, best first.
inline std::vector<Chromosome> select_survivors(std::span<const Chromosome> population, double discard_fraction) {
    const auto order = rank_by_fitness(population);
    const std::size_t keep = population.size() - discard_count(population.size(), discard_fraction);
    std::vector<Chromosome> survivors;
    survivors.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) survivors.push_back(population[order[i]]);
    return survivors;
}

/// p[g] = (survivors with gene g set) / (survivor count), clamped.
inline GeneProbabilities update_probabilities(std::span<const Chromosome> survivors, ClampBounds clamp = {}) {
    if (survivors.empty()) throw Error("update: empty survivor list");
    const std::size_t m = survivors.front().genes.size();
    std::vector<std::size_t> counts(m, 0);
    for (const auto& c : survivors) {
        if (c.genes.size() != m) throw Error("update: chromosome length mismatch");
        for (std::size_t g = 0; g < m; ++g) counts[g] += c.genes[g];
    }
    GeneProbabilities out{std::vector<double>(m), clamp};
    const double n = static_cast<double>(survivors.size());
    for (std::size_t g = 0; g < m; ++g) out.p[g] = clamp.apply(static_cast<double>(counts[g]) / n);
    return out;
}

/// Memoized fitness keyed by bit pattern. Distinct unseen masks of a batch
/// are evaluated in parallel; the results do not depend on scheduling.
template <typename Fitness>
class FitnessCache {
public:
    explicit FitnessCache(Fitness& fitness) : fitness_(fitness) {}

    void evaluate(std::vector<Chromosome>& population) {
        std::vector<std::string> keys(population.size());
        std::vector<std::size_t> pending;
        std::unordered_map<std::string, std::size_t> pending_slot;
        for (std::size_t i = 0; i < population.size(); ++i) {
            keys[i] = population[i].key();
            if (memo_.contains(keys[i]) || pending_slot.contains(keys[i])) continue;
            pending_slot.emplace(keys[i], pending.size());
            pending.push_back(i);
        }
        std::vector<double> values(pending.size());
        parallel_for(pending.size(), [&](std::size_t s) {
            values[s] = fitness_(std::span<const std::uint8_t>(population[pending[s]].genes));
        });
        for (std::size_t s = 0; s < pending.size(); ++s) memo_.emplace(keys[pending[s]], values[s]);
        for (std::size_t i = 0; i < population.size(); ++i) population[i].fitness = memo_.at(keys[i]);
    }

    std::size_t evaluations() const noexcept { return memo_.size(); }

private:
    Fitness& fitness_;
    std::unordered_map<std::string, double> memo_;
};

namespace detail {

inline double mean_fitness(std::span<const Chromosome> population) {
    double s = 0.0;
    for (const auto& c : population) s += *c.fitness;
    return population.empty() ? 0.0 : s / static_cast<double>(population.size());
}

inline std::vector<double> gene_frequencies(std::span<const Chromosome> population, std::size_t m) {
    std::vector<double> f(m, 0.0);
    for (const auto& c : population)
        for (std::size_t g = 0; g < m; ++g) f[g] += c.genes[g];
    for (auto& v : f) v /= static_cast<double>(population.size());
    return f;
}

// Strict-improvement bookkeeping shared by both searches.
struct BestTracker {
    Chromosome best;
    bool has_best = false;
    std::size_t stagnant = 0;

    void offer(const Chromosome& candidate) {
        if (!has_best || *candidate.fitness > *best.fitness) {
            best = candidate;
            has_best = true;
            stagnant = 0;
        } else {
            ++stagnant;
        }
    }
};

}  // namespace detail

/// Dynamic-probability search over m genes. fitness maps a gene mask
/// (span<const uint8_t>) to a score where larger is better.
template <typename Fitness>
SearchResult gadp_search(std::size_t m, const SearchConfig& cfg, Fitness&& fitness) {
    cfg.validate();
    if (m == 0) throw Error("search: no candidate features");
    FitnessCache cache(fitness);
    auto probs = GeneProbabilities::uniform(m, cfg.init_prob, cfg.clamp);
    detail::BestTracker tracker;
    SearchResult result;
    const std::size_t generations = std::max<std::size_t>(cfg.max_iterations, 1);

    for (std::size_t gen = 0; gen < generations; ++gen) {
        auto population = sample_population(probs, cfg.population, derive_seed(cfg.seed, {gen}));
        cache.evaluate(population);
        auto survivors = select_survivors(population, cfg.discard_fraction);
        tracker.offer(survivors.front());

        result.history.push_back({gen, *tracker.best.fitness, detail::mean_fitness(population), probs.p,
                                  probs.entropy(), cache.evaluations()});
        result.generations_run = gen + 1;
        if (tracker.stagnant >= cfg.patience) {
            result.stop_reason = StopReason::patience;
            break;
        }
        probs = update_probabilities(survivors, cfg.clamp);
    }
    result.best = tracker.best;
    result.evaluations = cache.evaluations();
    result.final_probabilities = probs.p;
    return result;
}

struct GaConfig {
    /// population, iterations, patience, seed and max_features are shared
    /// with the dynamic-probability search; init_prob is ignored.
    SearchConfig base;
    double init_prob = 0.5;
    double crossover_rate = 0.9;
    /// Per-gene flip probability; unset means 1/m.
    std::optional<double> mutation_rate;
    std::size_t tournament_size = 2;
    std::size_t elitism = 1;
};

/// Children a[:cut] + b[cut:] and b[:cut] + a[cut:].
inline std::pair<Genes, Genes> single_point_crossover(const Genes& a, const Genes& b, std::size_t cut) {
    if (a.size() != b.size()) throw Error("crossover: parent length mismatch");
    if (cut > a.size()) throw Error("crossover: cut outside chromosome");
    Genes c1(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut));
    c1.insert(c1.end(), b.begin() + static_cast<std::ptrdiff_t>(cut), b.end());
    Genes c2(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cut));
    c2.insert(c2.end(), a.begin() + static_cast<std::ptrdiff_t>(cut), a.end());
    return {std::move(c1), std::move(c2)};
}

inline void bit_flip_mutation(Genes& genes, double rate, Rng& rng) {
    for (auto& g : genes)
        if (rng.bernoulli(rate)) g ^= 1;
}

/// Best of `size` uniform draws (with replacement); lower index on ties.
inline std::size_t tournament_select(std::span<const Chromosome> population, std::size_t size, Rng& rng) {
    std::size_t winner = rng.index(population.size());
    for (std::size_t t = 1; t < size; ++t) {
        const std::size_t challenger = rng.index(population.size());
        const double fw = *population[winner].fitness, fc = *population[challenger].fitness;
        if (fc > fw || (fc == fw && challenger < winner)) winner = challenger;
    }
    return winner;
}

/// Crossover with probability crossover_rate at a uniform cut in [1, m-1],
/// then bit-flip mutation of both children.
inline std::pair<Genes, Genes> make_offspring(const Genes& a, const Genes& b, double crossover_rate,
                                              double mutation_rate, Rng& rng) {
    std::pair<Genes, Genes> children{a, b};
    if (a.size() >= 2 && rng.bernoulli(crossover_rate))
        children = single_point_crossover(a, b, 1 + rng.index(a.size() - 1));
    bit_flip_mutation(children.first, mutation_rate, rng);
    bit_flip_mutation(children.second, mutation_rate, rng);
    return children;
}

template <typename Fitness>
SearchResult ga_search(std::size_t m, const GaConfig& cfg, Fitness&& fitness) {
    const auto& base = cfg.base;
    if (base.population < 1) throw Error("ga: population must be >= 1");
    if (base.patience < 1) throw Error("ga: patience must be >= 1");
    if (m == 0) throw Error("ga: no candidate features");
    if (cfg.tournament_size < 1) throw Error("ga: tournament size must be >= 1");
    const double mutation = cfg.mutation_rate.value_or(1.0 / static_cast<double>(m));
    const std::size_t elites = std::min(cfg.elitism, base.population);

    FitnessCache cache(fitness);
    detail::BestTracker tracker;
    SearchResult result;
    const std::size_t generations = std::max<std::size_t>(base.max_iterations, 1);

    auto population = sample_population(GeneProbabilities::uniform(m, cfg.init_prob), base.population,
                                        derive_seed(base.seed, {0}));
    for (std::size_t gen = 0; gen < generations; ++gen) {
        cache.evaluate(population);
        const auto order = rank_by_fitness(population);
        tracker.offer(population[order.front()]);

        auto freq = detail::gene_frequencies(population, m);
        const double h = chromosome_entropy(freq);
        result.history.push_back({gen, *tracker.best.fitness, detail::mean_fitness(population), std::move(freq), h,
                                  cache.evaluations()});
        result.generations_run = gen + 1;
        if (tracker.stagnant >= base.patience) {
            result.stop_reason = StopReason::patience;
            break;
        }
        if (gen + 1 == generations) break;

        Rng rng(derive_seed(base.seed, {gen + 1, 1}));
        std::vector<Chromosome> next;
        next.reserve(base.population);
        for (std::size_t e = 0; e < elites; ++e) next.push_back(population[order[e]]);
        while (next.size() < base.population) {
            const auto& p1 = population[tournament_select(population, cfg.tournament_size, rng)];
            const auto& p2 = population[tournament_select(population, cfg.tournament_size, rng)];
            auto [c1, c2] = make_offspring(p1.genes, p2.genes, cfg.crossover_rate, mutation, rng);
            next.push_back({std::move(c1), std::nullopt});
            if (next.size() < base.population) next.push_back({std::move(c2), std::nullopt});
        }
        population = std::move(next);
    }
    result.best = tracker.best;
    result.evaluations = cache.evaluations();
    result.final_probabilities = result.history.back().probabilities;
    return result;
}

namespace detail {

// Wrapper fitness: decode the mask onto the candidate features and score it
// by cross-validated accuracy.
inline auto subset_fitness(const Dataset& ds, std::span<const std::size_t> candidates, const ClassifierSpec& spec,
                           const FoldPlan& folds, std::optional<std::size_t> max_features) {
    for (std::size_t c : candidates)
        if (c >= ds.n_features()) throw Error("search: candidate feature " + std::to_string(c) + " out of range");
    return [&ds, candidates, &spec, &folds, max_features](std::span<const std::uint8_t> genes) {
        const auto subset = decode(genes, candidates);
        if (max_features && subset.size() > *max_features) return 0.0;
        return evaluate_subset(ds, subset, spec, folds).fitness;
    };
}

}  // namespace detail

/// Dynamic-probability search over the candidate features of ds.
inline SearchResult gadp_run(const Dataset& ds, std::span<const std::size_t> candidates, const ClassifierSpec& spec,
                             const FoldPlan& folds, const SearchConfig& cfg) {
    if (candidates.empty()) throw Error("search: no candidate features");
    auto fitness = detail::subset_fitness(ds, candidates, spec, folds, cfg.max_features);
    return gadp_search(candidates.size(), cfg, fitness);
}

inline SearchResult ga_run(const Dataset& ds, std::span<const std::size_t> candidates, const ClassifierSpec& spec,
                           const FoldPlan& folds, const GaConfig& cfg) {
    if (candidates.empty()) throw Error("ga: no candidate features");
    auto fitness = detail::subset_fitness(ds, candidates, spec, folds, cfg.base.max_features);
    return ga_search(candidates.size(), cfg, fitness);
}

}  // namespace featsel
