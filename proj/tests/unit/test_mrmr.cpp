#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "featsel/infotheory.hpp"
#include "featsel/mrmr.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace featsel;

namespace {

DiscreteDataset make_discrete(std::vector<std::vector<int>> columns, int bins) {
    DiscreteDataset ds;
    ds.n_instances = columns.front().size();
    ds.n_bins = bins;
    ds.columns = std::move(columns);
    return ds;
}

DiscreteDataset random_discrete(Rng& rng, std::size_t m, std::size_t n, int bins) {
    std::vector<std::vector<int>> cols;
    for (std::size_t j = 0; j < m; ++j) cols.push_back(fixtures::random_symbols(rng, n, bins));
    return make_discrete(std::move(cols), bins);
}

}  // namespace

TEST(MrmrScore, CopyIsMaximallyPenalized) {
    const std::vector<int> y{0, 0, 1, 1, 0, 1, 1, 0};
    const std::vector<int> f0{0, 1, 1, 1, 0, 1, 0, 0};
    const auto ds = make_discrete({f0, f0}, 2);
    MrmrState state(ds, y);
    state.select(0);
    const double expected = mutual_information(DiscreteVariable(f0), DiscreteVariable(y)) - entropy(DiscreteVariable(f0));
    EXPECT_NEAR(state.score_candidate(1), expected, 1e-15);
}

TEST(MrmrScore, IndependentFeatureScoresZero) {
    const std::vector<int> y{0, 0, 1, 1};
    const std::vector<int> f0{0, 0, 1, 1}, f1{0, 1, 0, 1};
    const auto ds = make_discrete({f0, f1}, 2);
    MrmrState state(ds, y);
    state.select(0);
    EXPECT_NEAR(state.score_candidate(1), 0.0, 1e-12);
}

TEST(MrmrScore, ToyTableMatchesOracle) {
    const std::vector<int> y{0, 1, 0, 1, 1, 0, 1, 0};
    const std::vector<std::vector<int>> cols{
        {0, 1, 0, 1, 1, 0, 1, 1}, {0, 1, 1, 1, 0, 0, 1, 0}, {1, 1, 0, 0, 1, 0, 1, 0}, {0, 0, 0, 1, 1, 1, 1, 0}};
    const auto ds = make_discrete(cols, 2);
    MrmrState state(ds, y);
    state.select(0);
    state.select(2);
    for (std::size_t f : {1u, 3u})
        EXPECT_NEAR(state.score_candidate(f), oracle::mrmr_score(cols, y, {0, 2}, f), 1e-15);
}

TEST(MrmrScore, Errors) {
    const std::vector<int> y{0, 1, 0, 1};
    const auto ds = make_discrete({{0, 1, 0, 1}, {1, 1, 0, 0}}, 2);
    MrmrState state(ds, y);
    EXPECT_THROW(state.score_candidate(1), Error);
    state.select(0);
    EXPECT_THROW(state.score_candidate(0), Error);
    EXPECT_THROW(state.select(0), Error);
    EXPECT_EQ(state.remaining(), (std::vector<std::size_t>{1}));
}

TEST(MrmrRank, FirstPickIsMostRelevant) {
    Rng rng(21);
    const auto ds = random_discrete(rng, 6, 30, 3);
    const auto y = fixtures::random_symbols(rng, 30, 2);
    const auto r = mrmr_rank(ds, y, 1);
    ASSERT_EQ(r.order.size(), 1u);
    double best = -1;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < 6; ++j) {
        const double mi = oracle::mutual_information(ds.columns[j], y);
        if (mi > best + 1e-12) best = mi, arg = j;
    }
    EXPECT_EQ(r.order.front(), arg);
    EXPECT_DOUBLE_EQ(r.score.front(), r.relevance.front());
}

TEST(MrmrRank, DuplicateRankedAfterIndependentInformativeFeature) {
    // f0 and f1 each carry one of the two label bits; f2 duplicates f0.
    std::vector<int> f0, f1, y;
    for (int rep = 0; rep < 3; ++rep)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                f0.push_back(a);
                f1.push_back(b);
                y.push_back(2 * a + b);
            }
    f0.push_back(1), f1.push_back(1), y.push_back(3);
    const auto ds = make_discrete({f0, f1, f0}, 2);
    const auto r = mrmr_rank(ds, y, 3);
    EXPECT_EQ(r.order, oracle::mrmr_greedy(ds.columns, y, 3));
    EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(MrmrRank, PrefixProperty) {
    Rng rng(8);
    const auto ds = random_discrete(rng, 10, 40, 4);
    const auto y = fixtures::random_symbols(rng, 40, 3);
    const auto full = mrmr_rank(ds, y, 10).order;
    for (std::size_t t = 1; t <= 10; ++t) {
        const auto part = mrmr_rank(ds, y, t).order;
        EXPECT_TRUE(std::equal(part.begin(), part.end(), full.begin()));
    }
    std::vector<std::size_t> sorted = full;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(sorted[j], j);
}

TEST(MrmrRank, MatchesBruteForceOracle) {
    Rng rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng.index(12), n = 2 + rng.index(39);
        const int bins = 2 + static_cast<int>(rng.index(3));
        const auto ds = random_discrete(rng, m, n, bins);
        const auto y = fixtures::random_symbols(rng, n, 2 + static_cast<int>(rng.index(2)));
        const std::size_t top = 1 + rng.index(m);
        EXPECT_EQ(mrmr_rank(ds, y, top).order, oracle::mrmr_greedy(ds.columns, y, top)) << "trial " << trial;
    }
}

TEST(MrmrRank, TiesGoToLowestIndex) {
    const std::vector<int> y{0, 1, 0, 1};
    const std::vector<int> f{0, 1, 0, 1};
    const auto ds = make_discrete({{0, 0, 0, 0}, f, f, f}, 2);
    EXPECT_EQ(mrmr_rank(ds, y, 1).order.front(), 1u);
}

TEST(MrmrRank, TopOutOfRangeThrows) {
    const std::vector<int> y{0, 1};
    const auto ds = make_discrete({{0, 1}, {1, 0}}, 2);
    EXPECT_THROW(mrmr_rank(ds, y, 0), Error);
    EXPECT_THROW(mrmr_rank(ds, y, 3), Error);
}

TEST(MrmrRank, PlantedFeaturesLeadTheRanking) {
    const auto raw = fixtures::planted_dataset(200, 30, 5);
    const auto r = mrmr_rank(discretize(raw, 10), raw.labels, 3);
    auto order = r.order;
    std::sort(order.begin(), order.end());
    EXPECT_EQ(order, (std::vector<std::size_t>{2, 7, 11}));
}
