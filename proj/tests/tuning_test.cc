#include "revspam/tuning.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "revspam/error.h"
#include "revspam/evaluation.h"
#include "support/fixtures.h"
#include "support/synthetic_corpus.h"

namespace revspam {
namespace {

using testing::FixtureLexicons;
using testing::FixtureOntology;

const LabeledProfiles &SyntheticProfiles() {
  static const LabeledProfiles data = ProfileCorpus(
      testing::GenerateCorpus(), FixtureOntology(), FixtureLexicons(), 4);
  return data;
}

std::vector<PreprocessedReview> PreprocessAll(const std::vector<Review> &reviews) {
  std::vector<PreprocessedReview> out;
  for (const Review &r : reviews) {
    out.push_back(Preprocess(r, FixtureOntology(), FixtureLexicons()));
  }
  return out;
}

// Reviews whose URL count alone separates the non-review label: spam carries
// two or more URLs, truthful at most one.
std::vector<Review> UrlPlantedCorpus() {
  std::vector<Review> out;
  auto text = [](int urls) {
    std::string s = "The screen is good but the battery is bad.";
    for (int i = 0; i < urls; ++i) s += " See www.site" + std::to_string(i) + ".com now.";
    return s;
  };
  for (int urls : {2, 2, 3, 4, 5, 6}) {
    out.emplace_back("phone", "iphone", text(urls), Label::kNonReview);
  }
  for (int urls : {0, 0, 1, 1, 0, 1}) {
    out.emplace_back("phone", "iphone", text(urls), Label::kTruthful);
  }
  return out;
}

// Plain nested enumeration used as the optimality oracle.
double EnumeratedMax(const LabeledProfiles &data, const GridSpec &g) {
  double best = 0;
  Thresholds t;
  for (int u : g.min_patterns)
    for (double o : g.min_opinion_ratio)
      for (double b : g.min_brand_ratio)
        for (int m : g.min_mentions)
          for (double f : g.min_foreign_ratio)
            for (double n : g.min_name_mismatch)
              for (double ut : g.min_untruthful_score)
                for (const auto &w : g.weights)
                  for (int op : g.min_opinion_words)
                    for (double e : g.extreme_ref) {
                      t = Thresholds{u, o, b, m, f, n, ut, w, op, e};
                      best = std::max(best, PipelineF(data, t));
                    }
  return best;
}

GridSpec RandomGrid(std::mt19937_64 &rng) {
  auto pick = [&](std::vector<double> pool) {
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(1 + rng() % 3);
    return pool;
  };
  GridSpec g;
  g.min_patterns = {1, 2, 3};
  g.min_opinion_ratio = pick({0.0, 0.01, 0.02, 0.04, 0.08});
  g.min_brand_ratio = pick({0.2, 0.4, 0.6, 0.8});
  g.min_mentions = {2, 3};
  g.min_foreign_ratio = pick({0.2, 0.3, 0.4, 0.6});
  g.min_name_mismatch = pick({0.0, 0.5, 1.0});
  g.min_untruthful_score = pick({0.3, 0.4, 0.5, 0.6});
  g.min_opinion_words = {1, 2};
  return g;
}

TEST(TuneTest, OnePointGrid) {
  GridSpec g;
  g.min_patterns = {3};
  g.min_brand_ratio = {0.7};
  for (TuneMode mode : {TuneMode::kExhaustive, TuneMode::kCoordinate}) {
    TuneResult r = TuneProfiles(SyntheticProfiles(), g, mode);
    EXPECT_EQ(r.best.min_patterns, 3);
    EXPECT_EQ(r.best.min_brand_ratio, 0.7);
    if (mode == TuneMode::kExhaustive) EXPECT_EQ(r.evaluations, 1u);
  }
}

TEST(TuneTest, PlantedPatternThreshold) {
  auto corpus = PreprocessAll(UrlPlantedCorpus());
  GridSpec g;
  g.min_patterns = {1, 2, 3, 4, 5};
  TuneResult r = Tune(corpus, FixtureLexicons(), g, TuneMode::kExhaustive);
  EXPECT_EQ(r.best.min_patterns, 2);
  EXPECT_EQ(r.best_f, 1.0);
  EXPECT_EQ(r.evaluations, 5u);
  // Independent check over the five candidates.
  LabeledProfiles data = ProfilePreprocessed(corpus, FixtureLexicons());
  for (int u = 1; u <= 5; ++u) {
    Thresholds t;
    t.min_patterns = u;
    EXPECT_EQ(PipelineF(data, t) == 1.0, u == 2) << u;
  }
}

TEST(TuneTest, ExhaustiveMatchesEnumeration) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 6; ++round) {
    GridSpec g = RandomGrid(rng);
    ASSERT_LE(g.PointCount(), 10000u);
    TuneResult r = TuneProfiles(SyntheticProfiles(), g, TuneMode::kExhaustive,
                                1 + round % 4);
    EXPECT_EQ(r.best_f, EnumeratedMax(SyntheticProfiles(), g));
    EXPECT_EQ(r.evaluations, g.PointCount());
  }
}

TEST(TuneTest, BestFRecomputes) {
  std::mt19937_64 rng(8);
  for (TuneMode mode : {TuneMode::kExhaustive, TuneMode::kCoordinate}) {
    TuneResult r = TuneProfiles(SyntheticProfiles(), RandomGrid(rng), mode);
    EXPECT_EQ(PipelineF(SyntheticProfiles(), r.best), r.best_f);
  }
}

TEST(TuneTest, ReproducibleAcrossRunsAndThreads) {
  std::mt19937_64 rng(55);
  GridSpec g = RandomGrid(rng);
  for (TuneMode mode : {TuneMode::kExhaustive, TuneMode::kCoordinate}) {
    TuneResult first = TuneProfiles(SyntheticProfiles(), g, mode, 1);
    for (int threads : {1, 2, 3, 8}) {
      EXPECT_EQ(TuneProfiles(SyntheticProfiles(), g, mode, threads), first);
    }
  }
}

TEST(TuneTest, TiesGoToSmallerKey) {
  // ext_ref cannot change any verdict when the untruthful detector is gated
  // off, so every candidate ties.
  GridSpec g;
  g.min_opinion_words = {100000};
  g.extreme_ref = {0.2, 0.05, 0.1};
  for (TuneMode mode : {TuneMode::kExhaustive, TuneMode::kCoordinate}) {
    TuneResult r = TuneProfiles(SyntheticProfiles(), g, mode, 2);
    EXPECT_EQ(r.best.extreme_ref, 0.05);
  }
}

TEST(TuneTest, BetterCandidateOrdering) {
  Thresholds a, b;
  b.min_patterns = 3;
  EXPECT_TRUE(BetterCandidate(0.9, b, 0.8, a));
  EXPECT_FALSE(BetterCandidate(0.8, a, 0.9, b));
  EXPECT_TRUE(BetterCandidate(0.8, a, 0.8, b));
  EXPECT_FALSE(BetterCandidate(0.8, b, 0.8, a));
  EXPECT_FALSE(BetterCandidate(0.8, a, 0.8, a));
}

TEST(TuneTest, CoordinateEvaluationCount) {
  std::mt19937_64 rng(3);
  GridSpec g = RandomGrid(rng);
  std::uint64_t axis_total = g.min_patterns.size() + g.min_opinion_ratio.size() +
                             g.min_brand_ratio.size() + g.min_mentions.size() +
                             g.min_foreign_ratio.size() + g.min_name_mismatch.size() +
                             g.min_untruthful_score.size() + g.weights.size() +
                             g.min_opinion_words.size() + g.extreme_ref.size();
  TuneResult r = TuneProfiles(SyntheticProfiles(), g, TuneMode::kCoordinate);
  EXPECT_EQ(r.evaluations, 2 * axis_total);
}

TEST(TuneTest, CoordinateNeverBeatsExhaustive) {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 5; ++round) {
    GridSpec g = RandomGrid(rng);
    double co = TuneProfiles(SyntheticProfiles(), g, TuneMode::kCoordinate).best_f;
    double ex = TuneProfiles(SyntheticProfiles(), g, TuneMode::kExhaustive, 4).best_f;
    EXPECT_LE(co, ex);
  }
}

TEST(TuneTest, CoordinateReachesExhaustiveOnAcceptanceGrid) {
  GridSpec g = LoadGrid(testing::DataDir() / "grids" / "acceptance_grid.json");
  EXPECT_EQ(g.PointCount(), 864u);
  double co = TuneProfiles(SyntheticProfiles(), g, TuneMode::kCoordinate).best_f;
  double ex = TuneProfiles(SyntheticProfiles(), g, TuneMode::kExhaustive, 4).best_f;
  EXPECT_EQ(co, ex);
}

TEST(TuneTest, Errors) {
  GridSpec empty;
  empty.min_foreign_ratio.clear();
  try {
    TuneProfiles(SyntheticProfiles(), empty, TuneMode::kExhaustive);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGrid);
    EXPECT_EQ(e.subject(), "theta_f");
  }
  try {
    Tune({}, FixtureLexicons(), GridSpec{}, TuneMode::kCoordinate);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
  auto corpus = PreprocessAll({Review("phone", "x", "good phone", Label::kTruthful),
                               Review("phone", "x", "bad phone")});
  try {
    Tune(corpus, FixtureLexicons(), GridSpec{}, TuneMode::kCoordinate);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnlabeledReview);
    EXPECT_EQ(e.subject(), "1");
  }
}

TEST(GridJsonTest, ParsesAllFields) {
  auto doc = nlohmann::ordered_json::parse(R"({
    "theta_u": [1, 2], "theta_o": [0.01], "theta_b": [0.5, 0.7],
    "m_min": [2], "theta_f": [0.3], "theta_n": [0.5], "theta_ut": [0.4],
    "weights": [[0.25, 0.25, 0.25, 0.25], [0.4, 0.2, 0.2, 0.2]],
    "op_min": [1], "ext_ref": [0.05, 0.1]})");
  GridSpec g = GridFromJson(doc);
  EXPECT_EQ(g.min_patterns, (std::vector<int>{1, 2}));
  EXPECT_EQ(g.weights.size(), 2u);
  EXPECT_EQ(g.PointCount(), 16u);
}

TEST(GridJsonTest, MissingFieldsKeepDefaults) {
  GridSpec g = GridFromJson(nlohmann::ordered_json::parse(R"({"theta_u": [4]})"));
  EXPECT_EQ(g.min_brand_ratio, std::vector<double>{0.6});
  EXPECT_EQ(g.PointCount(), 1u);
}

TEST(GridJsonTest, Rejects) {
  auto code_of = [](const char *text) {
    try {
      GridFromJson(nlohmann::ordered_json::parse(text));
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::kEmptyInput;
  };
  EXPECT_EQ(code_of(R"({"theta_u": []})"), ErrorCode::kEmptyGrid);
  EXPECT_EQ(code_of(R"({"theta_q": [1]})"), ErrorCode::kInvalidThresholds);
  EXPECT_EQ(code_of(R"({"theta_u": [1.5]})"), ErrorCode::kInvalidThresholds);
  EXPECT_EQ(code_of(R"({"theta_b": 0.5})"), ErrorCode::kInvalidThresholds);
  EXPECT_EQ(code_of(R"({"theta_b": [2.0]})"), ErrorCode::kInvalidThresholds);
  EXPECT_EQ(code_of(R"({"weights": [[0.5, 0.5]]})"), ErrorCode::kInvalidThresholds);
  EXPECT_EQ(code_of(R"({"weights": [[0.5, 0.5, 0.5, 0.5]]})"),
            ErrorCode::kInvalidThresholds);
}

TEST(TuneResultJsonTest, Shape) {
  TuneResult r = TuneProfiles(SyntheticProfiles(), GridSpec{}, TuneMode::kExhaustive);
  auto j = TuneResultToJson(r, TuneMode::kExhaustive);
  EXPECT_EQ(j["mode"], "exhaustive");
  EXPECT_EQ(j["evaluations"], 1);
  EXPECT_EQ(ThresholdsFromJson(j["best"]), r.best);
}

}  // namespace
}  // namespace revspam
