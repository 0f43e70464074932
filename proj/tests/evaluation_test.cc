#include "revspam/evaluation.h"

#include <algorithm>
#include <random>
#include <vector>

#include <boost/rational.hpp>
#include <gtest/gtest.h>

#include "revspam/error.h"
#include "support/fixtures.h"
#include "support/synthetic_corpus.h"

namespace revspam {
namespace {

using testing::FixtureLexicons;
using testing::FixtureOntology;
using Rational = boost::rational<long long>;

constexpr Label kSpam = Label::kUntruthful;
constexpr Label kTrue = Label::kTruthful;

double ToDouble(const Rational &r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

TEST(ConfusionTest, CountsCells) {
  std::vector<Label> pred = {kSpam, kSpam, kTrue};
  std::vector<Label> gold = {kSpam, kTrue, kSpam};
  EXPECT_EQ(Confusion(pred, gold), (ConfusionMatrix{1, 1, 1, 0}));
}

TEST(ConfusionTest, SpamTypesAreInterchangeable) {
  std::vector<Label> pred = {Label::kNonReview, Label::kOffTopic};
  std::vector<Label> gold = {Label::kBrandOnly, Label::kUntruthful};
  EXPECT_EQ(Confusion(pred, gold), (ConfusionMatrix{2, 0, 0, 0}));
}

TEST(ConfusionTest, AllCorrect) {
  std::vector<Label> labels = {kSpam, kTrue, kTrue, kSpam, kTrue,
                               kTrue, kSpam, kTrue, kTrue, kTrue};
  ConfusionMatrix cm = Confusion(labels, labels);
  EXPECT_EQ(cm.fp, 0);
  EXPECT_EQ(cm.fn, 0);
  EXPECT_EQ(cm.total(), 10);
}

TEST(ConfusionTest, Errors) {
  std::vector<Label> one = {kSpam};
  std::vector<Label> two = {kSpam, kTrue};
  std::vector<Label> none;
  try {
    Confusion(one, two);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  try {
    Confusion(none, none);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(MetricsTest, Formula) {
  Metrics m = ComputeMetrics({3, 1, 1, 0});
  EXPECT_DOUBLE_EQ(m.precision, 0.75);
  EXPECT_DOUBLE_EQ(m.recall, 0.75);
  EXPECT_DOUBLE_EQ(m.f_measure, 0.75);
}

TEST(MetricsTest, ZeroConvention) {
  EXPECT_EQ(ComputeMetrics({0, 0, 0, 10}), (Metrics{0, 0, 0}));
  EXPECT_EQ(ComputeMetrics({0, 4, 0, 0}), (Metrics{0, 0, 0}));
  EXPECT_EQ(ComputeMetrics({0, 0, 4, 0}), (Metrics{0, 0, 0}));
}

TEST(MetricsTest, Perfect) {
  EXPECT_EQ(ComputeMetrics({10, 0, 0, 0}), (Metrics{1, 1, 1}));
}

TEST(MetricsTest, MatchesExactRationals) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    ConfusionMatrix cm{static_cast<long>(rng() % 1000), static_cast<long>(rng() % 1000),
                       static_cast<long>(rng() % 1000), static_cast<long>(rng() % 1000)};
    if (i % 10 == 0) cm.tp = 0;
    Metrics m = ComputeMetrics(cm);
    Rational p = cm.tp + cm.fp == 0 ? Rational(0) : Rational(cm.tp, cm.tp + cm.fp);
    Rational r = cm.tp + cm.fn == 0 ? Rational(0) : Rational(cm.tp, cm.tp + cm.fn);
    Rational f = (p + r).numerator() == 0 ? Rational(0) : 2 * p * r / (p + r);
    EXPECT_NEAR(m.precision, ToDouble(p), 1e-12);
    EXPECT_NEAR(m.recall, ToDouble(r), 1e-12);
    EXPECT_NEAR(m.f_measure, ToDouble(f), 1e-12);
  }
}

TEST(EvaluateCorpusTest, TruthfulOnlyCorpus) {
  std::vector<Review> corpus;
  for (const Review &r : testing::GenerateCorpus({.seed = 3, .per_type = 0, .truthful = 30})) {
    corpus.push_back(r);
  }
  EvalReport report = EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(),
                                     Thresholds{});
  // Predictions may not all be truthful; force that with unreachable thresholds.
  Thresholds never;
  never.min_patterns = 1000;
  never.min_opinion_ratio = 0.0;
  never.min_mentions = 1000;
  never.min_foreign_ratio = 1.0;
  never.min_name_mismatch = 1.0;
  never.min_untruthful_score = 1.0;
  never.min_opinion_words = 1000;
  report = EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(), never);
  EXPECT_EQ(report.overall.matrix, (ConfusionMatrix{0, 0, 0, 30}));
  EXPECT_EQ(report.overall.metrics, (Metrics{0, 0, 0}));
}

TEST(EvaluateCorpusTest, TableShapedSubsets) {
  auto corpus = testing::GenerateCorpus({.seed = 9, .per_type = 100, .truthful = 100});
  EvalReport report = EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(),
                                     Thresholds{}, 4);
  ASSERT_EQ(report.per_type.size(), 4u);
  for (const auto &[type, scored] : report.per_type) {
    EXPECT_EQ(scored.matrix.total(), 200) << LabelName(type);
    EXPECT_EQ(scored.matrix.tp + scored.matrix.fn, 100);
  }
  EXPECT_EQ(report.overall.matrix.total(), 500);
  EXPECT_EQ(report.overall.matrix.tp + report.overall.matrix.fn, 400);
}

TEST(EvaluateCorpusTest, SyntheticPrecisionAboveThreeQuarters) {
  EvalReport report = EvaluateCorpus(testing::GenerateCorpus(), FixtureOntology(),
                                     FixtureLexicons(), Thresholds{});
  EXPECT_GT(report.overall.metrics.precision, 0.75);
}

TEST(EvaluateCorpusTest, GoldSpamEqualsTpPlusFn) {
  auto corpus = testing::GenerateCorpus({.seed = 21});
  EvalReport report = EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(),
                                     Thresholds{});
  long spam = std::count_if(corpus.begin(), corpus.end(), [](const Review &r) {
    return IsSpam(*r.label());
  });
  EXPECT_EQ(report.overall.matrix.tp + report.overall.matrix.fn, spam);
  long predicted = 0;
  for (const auto &[label, n] : report.predicted_counts) predicted += n;
  EXPECT_EQ(predicted, static_cast<long>(corpus.size()));
}

TEST(EvaluateCorpusTest, PermutationInvariant) {
  auto corpus = testing::GenerateCorpus({.seed = 77});
  EvalReport base = EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(),
                                   Thresholds{});
  std::mt19937_64 rng(5);
  for (int round = 0; round < 3; ++round) {
    std::shuffle(corpus.begin(), corpus.end(), rng);
    EXPECT_EQ(EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(),
                             Thresholds{}, 1 + round),
              base);
  }
}

TEST(EvaluateCorpusTest, ThreadCountDoesNotMatter) {
  auto corpus = testing::GenerateCorpus({.seed = 13});
  auto one = ProfileCorpus(corpus, FixtureOntology(), FixtureLexicons(), 1);
  auto many = ProfileCorpus(corpus, FixtureOntology(), FixtureLexicons(), 7);
  EXPECT_EQ(one.profiles, many.profiles);
  EXPECT_EQ(one.gold, many.gold);
}

TEST(EvaluateCorpusTest, Errors) {
  try {
    EvaluateCorpus({}, FixtureOntology(), FixtureLexicons(), Thresholds{});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
  std::vector<Review> corpus = {Review("phone", "x", "fine phone", kTrue),
                                Review("phone", "x", "no label here")};
  try {
    EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(), Thresholds{});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnlabeledReview);
    EXPECT_EQ(e.subject(), "1");
  }
  corpus[1] = Review("toaster", "x", "hot toast", kTrue);
  try {
    EvaluateCorpus(corpus, FixtureOntology(), FixtureLexicons(), Thresholds{});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownCategory);
  }
}

TEST(ReportJsonTest, Shape) {
  EvalReport report = EvaluateCorpus(testing::GenerateCorpus(), FixtureOntology(),
                                     FixtureLexicons(), Thresholds{});
  auto j = ReportToJson(report);
  std::vector<std::string> overall_keys;
  for (const auto &[k, v] : j["overall"].items()) overall_keys.push_back(k);
  EXPECT_EQ(overall_keys, (std::vector<std::string>{"tp", "fp", "fn", "tn",
                                                    "precision", "recall", "f"}));
  for (const char *type : {"non_review", "brand_only", "off_topic", "untruthful"}) {
    EXPECT_TRUE(j["per_type"].contains(type)) << type;
  }
  EXPECT_EQ(j["counts"]["gold"]["truthful"], 80);
  EXPECT_EQ(j["overall"]["tp"], report.overall.matrix.tp);
}

}  // namespace
}  // namespace revspam
