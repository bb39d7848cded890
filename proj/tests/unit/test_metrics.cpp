#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "featsel/metrics.hpp"
#include "featsel/rng.hpp"
#include "support/oracles.hpp"

using namespace featsel;

namespace {

// 3-class, 12-instance fixture.
const std::vector<int> kTruth12{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
const std::vector<int> kPred12{0, 0, 1, 2, 1, 1, 1, 0, 2, 2, 1, 2};

}  // namespace

TEST(Confusion, PerfectPrediction) {
    const auto c = confusion(kTruth12, kTruth12, 3);
    for (const auto& k : c.per_class) {
        EXPECT_EQ(k.fp, 0u);
        EXPECT_EQ(k.fn, 0u);
    }
}

TEST(Confusion, AllPredictedZero) {
    std::vector<int> truth(10), pred(10, 0);
    for (std::size_t i = 0; i < 10; ++i) truth[i] = i < 5 ? 0 : 1;
    const auto c = confusion(pred, truth, 2);
    EXPECT_EQ(c.per_class[0], (BinaryCounts{5, 0, 5, 0}));
}

TEST(Confusion, HandTally) {
    const auto c = confusion(kPred12, kTruth12, 3);
    // class 0: TP 2 (i0,i1), FP 1 (i7), FN 2 (i2,i3)
    EXPECT_EQ(c.per_class[0], (BinaryCounts{2, 7, 1, 2}));
    // class 1: TP 3, FP 2 (i2,i10), FN 1 (i7)
    EXPECT_EQ(c.per_class[1], (BinaryCounts{3, 6, 2, 1}));
    // class 2: TP 3, FP 1 (i3), FN 1 (i10)
    EXPECT_EQ(c.per_class[2], (BinaryCounts{3, 7, 1, 1}));
    EXPECT_THROW(confusion(std::vector<int>{3}, std::vector<int>{0}, 3), Error);
    EXPECT_THROW(confusion(std::vector<int>{0, 1}, std::vector<int>{0}, 3), Error);
}

TEST(Accuracy, Values) {
    EXPECT_DOUBLE_EQ(accuracy(BinaryCounts{50, 40, 5, 5}), 0.9);
    EXPECT_DOUBLE_EQ(accuracy(kTruth12, kTruth12), 1.0);
    EXPECT_DOUBLE_EQ(accuracy(kPred12, kTruth12), 8.0 / 12.0);
    EXPECT_DOUBLE_EQ(accuracy(confusion(kPred12, kTruth12, 3)), 8.0 / 12.0);
    EXPECT_THROW(accuracy(std::vector<int>{}, std::vector<int>{}), Error);
    EXPECT_THROW(accuracy(BinaryCounts{}), Error);
}

TEST(MacroF1, HandFormula) {
    const auto c = confusion(kPred12, kTruth12, 3);
    const double f0 = 2 * (2.0 / 3) * 0.5 / (2.0 / 3 + 0.5);
    const double f1 = 2 * 0.6 * 0.75 / (0.6 + 0.75);
    const double f2 = 0.75;
    EXPECT_NEAR(macro_f1(c), (f0 + f1 + f2) / 3, 1e-12);
}

TEST(MacroF1, EqualPrecisionRecallFixedPoint) {
    // Each class: P = R = 0.5.
    const std::vector<int> truth{0, 0, 1, 1}, pred{0, 1, 1, 0};
    EXPECT_NEAR(macro_f1(confusion(pred, truth, 2)), 0.5, 1e-15);
}

TEST(MacroF1, NeverPredictedClassScoresZero) {
    const std::vector<int> truth{0, 0, 1, 1}, pred{0, 0, 0, 0};
    const auto c = confusion(pred, truth, 2);
    EXPECT_DOUBLE_EQ(f1(c.per_class[1]), 0.0);
    EXPECT_NEAR(macro_f1(c), (2 * 0.5 / 1.5 + 0.0) / 2, 1e-15);
    EXPECT_DOUBLE_EQ(precision(c.per_class[1]), 0.0);
    EXPECT_DOUBLE_EQ(recall(c.per_class[1]), 0.0);
}

TEST(MacroF1, ClassAbsentEverywhereIsNotAveraged) {
    const std::vector<int> truth{0, 0, 1, 1}, pred{0, 0, 1, 1};
    EXPECT_DOUBLE_EQ(macro_f1(confusion(pred, truth, 3)), 1.0);
}

TEST(Auc, SeparatingAndConstantScores) {
    const std::vector<double> s{0.1, 0.2, 0.8, 0.9};
    const std::vector<std::uint8_t> pos{0, 0, 1, 1};
    EXPECT_DOUBLE_EQ(binary_auc(s, pos), 1.0);
    const std::vector<double> flat(4, 0.3);
    EXPECT_DOUBLE_EQ(binary_auc(flat, pos), 0.5);
    const std::vector<std::uint8_t> none(4, 0);
    EXPECT_THROW(binary_auc(s, none), Error);
}

TEST(Auc, OneInversion) {
    const std::vector<double> s{0.1, 0.2, 0.3, 0.5, 0.4, 0.6, 0.7, 0.8};
    const std::vector<int> truth{0, 0, 0, 0, 1, 1, 1, 1};
    const std::vector<std::uint8_t> pos(truth.begin(), truth.end());
    EXPECT_NEAR(binary_auc(s, pos), 15.0 / 16.0, 1e-15);
    EXPECT_NEAR(binary_auc(s, pos), oracle::pairwise_auc(s, truth, 1), 1e-15);
}

TEST(Auc, RandomScoresMatchPairOracleAndMonotoneInvariance) {
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.index(40);
        std::vector<double> s(n);
        std::vector<int> truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = static_cast<double>(rng.index(6)) / 5.0;  // coarse, many ties
            truth[i] = static_cast<int>(rng.index(2));
        }
        truth[0] = 0, truth[1] = 1;
        const std::vector<std::uint8_t> pos(truth.begin(), truth.end());
        const double auc = binary_auc(s, pos);
        EXPECT_NEAR(auc, oracle::pairwise_auc(s, truth, 1), 1e-12);
        std::vector<double> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = std::exp(3 * s[i]) - 7;
        EXPECT_NEAR(binary_auc(t, pos), auc, 1e-15);
        EXPECT_GE(auc, 0.0);
        EXPECT_LE(auc, 1.0);
    }
}

TEST(Auc, MacroOneVsRestSkipsUnevaluableClasses) {
    const std::vector<int> truth{0, 0, 1, 1};
    Matrix<double> scores(4, 3, std::vector<double>{0.9, 0.1, 0, 0.6, 0.4, 0, 0.3, 0.7, 0, 0.2, 0.8, 0});
    const auto r = macro_auc_ovr(scores, truth);
    EXPECT_EQ(r.skipped, (std::vector<int>{2}));
    EXPECT_TRUE(std::isnan(r.per_class[2]));
    EXPECT_DOUBLE_EQ(r.macro, 1.0);
    const std::vector<int> single{0, 0, 0, 0};
    EXPECT_THROW(macro_auc_ovr(scores, single), Error);
}

TEST(StudentT, IncompleteBetaEdges) {
    EXPECT_DOUBLE_EQ(incomplete_beta(2, 3, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(incomplete_beta(2, 3, 1.0), 1.0);
    // I_x(1, 1) = x; I_x(a, 1) = x^a.
    EXPECT_NEAR(incomplete_beta(1, 1, 0.37), 0.37, 1e-14);
    EXPECT_NEAR(incomplete_beta(3, 1, 0.5), 0.125, 1e-14);
    EXPECT_THROW(incomplete_beta(0, 1, 0.5), Error);
}

TEST(StudentT, MatchesIndependentOracles) {
    for (int df = 2; df <= 60; ++df)
        for (double t : {0.0, 0.3, 1.0, 2.0, 2.7, 4.5, 9.0}) {
            const double p = student_t_two_tailed_p(t, df);
            EXPECT_NEAR(p, oracle::t_two_tailed_p(t, df), 1e-6) << "df " << df << " t " << t;
            EXPECT_NEAR(p, oracle::t_two_tailed_p_quadrature(t, df), 1e-6) << "df " << df << " t " << t;
            EXPECT_NEAR(student_t_cdf(t, df) + student_t_cdf(-t, df), 1.0, 1e-12);
        }
}

TEST(PairedTTest, ReferenceExample) {
    const std::vector<double> a{1.2, 0.8, 1.1, 0.9, 1.0}, b(5, 0.0);
    const auto r = paired_t_test(a, b);
    const double sd = std::sqrt(0.1 / 4);
    const double t = 1.0 / (sd / std::sqrt(5.0));
    EXPECT_NEAR(r.t, t, 1e-9);
    EXPECT_NEAR(r.p, oracle::t_two_tailed_p(t, 4), 1e-6);
    EXPECT_EQ(r.verdict, Verdict::win);
}

TEST(PairedTTest, DegenerateCases) {
    const std::vector<double> a{0.5, 0.75, 1.0};
    const auto same = paired_t_test(a, a);
    EXPECT_EQ(same.verdict, Verdict::tie);
    EXPECT_DOUBLE_EQ(same.p, 1.0);
    EXPECT_DOUBLE_EQ(same.t, 0.0);
    const std::vector<double> shifted{0.75, 1.0, 1.25};
    EXPECT_EQ(paired_t_test(shifted, a).verdict, Verdict::win);
    EXPECT_EQ(paired_t_test(shifted, a).p, 0.0);
    EXPECT_EQ(paired_t_test(a, shifted).verdict, Verdict::loss);
    EXPECT_THROW(paired_t_test(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
    EXPECT_THROW(paired_t_test(a, std::vector<double>{1.0, 2.0}), Error);
}

TEST(PairedTTest, Antisymmetry) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.index(10);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = rng.uniform(), b[i] = rng.uniform() + 0.2;
        const auto ab = paired_t_test(a, b), ba = paired_t_test(b, a);
        EXPECT_NEAR(ab.t, -ba.t, 1e-12);
        EXPECT_NEAR(ab.p, ba.p, 1e-15);
        const Verdict mirrored = ab.verdict == Verdict::win    ? Verdict::loss
                                 : ab.verdict == Verdict::loss ? Verdict::win
                                                               : Verdict::tie;
        EXPECT_EQ(ba.verdict, mirrored);
    }
}

TEST(MeanStd, SampleStandardDeviation) {
    const std::vector<double> v{1, 2, 3, 4};
    const auto s = mean_std(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.std, std::sqrt(5.0 / 3.0), 1e-15);
    EXPECT_DOUBLE_EQ(mean_std(std::vector<double>{7}).std, 0.0);
}

TEST(Verdict, Markers) {
    EXPECT_EQ(marker(Verdict::win), '+');
    EXPECT_EQ(marker(Verdict::tie), '=');
    EXPECT_EQ(marker(Verdict::loss), '-');
    EXPECT_STREQ(to_string(Verdict::loss), "loss");
}
