#ifndef REVSPAM_DETECTORS_H_
#define REVSPAM_DETECTORS_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revspam/lexicons.h"
#include "revspam/preprocess.h"

namespace revspam {

// Per-review feature ratios. Count fields are kept alongside the ratios so
// that a verdict can be explained and independently re-derived.
struct FeatureProfile {
  int u = 0;            // unusual pattern hits
  double o = 0;         // opinion words / tokens
  double brand_ratio = 0;
  int mention_total = 0;
  double foreign_ratio = 0;
  double name_mismatch_ratio = 0;
  double polarity = 0;  // |pos - neg| / max(1, pos + neg)
  double dup_name = 0;  // name mentions per sentence
  double caps_ratio = 0;
  double extreme_ratio = 0;
  int pos_count = 0;
  int neg_count = 0;

  int token_count = 0;
  int sentence_count = 0;
  int extreme_count = 0;
  int origin_mentions = 0;
  int foreign_mentions = 0;
  int popular_name_mentions = 0;
  int mismatched_names = 0;
  int name_mentions = 0;
  int name_mentions_caps = 0;

  friend bool operator==(const FeatureProfile &, const FeatureProfile &) =
      default;
};

// Decision parameters. JSON keys (in declaration order): theta_u, theta_o,
// theta_b, m_min, theta_f, theta_n, theta_ut, w1..w4, op_min, ext_ref.
struct Thresholds {
  int min_patterns = 2;              // theta_u
  double min_opinion_ratio = 0.02;   // theta_o
  double min_brand_ratio = 0.6;      // theta_b
  int min_mentions = 3;              // m_min
  double min_foreign_ratio = 0.4;    // theta_f
  double min_name_mismatch = 0.5;    // theta_n
  double min_untruthful_score = 0.5; // theta_ut
  // polarity, duplicate name, capitalized name, extreme words
  std::array<double, 4> weights{0.25, 0.25, 0.25, 0.25};
  int min_opinion_words = 2;         // op_min
  double extreme_ref = 0.05;         // ext_ref

  // Field values in declaration order; compared lexicographically to break
  // ties between equally scoring candidates.
  std::array<double, 13> Key() const;

  friend bool operator==(const Thresholds &, const Thresholds &) = default;
};

// Throws InvalidThresholds when a field is out of range or the weights do not
// sum to 1.
void ValidateThresholds(const Thresholds &t);

nlohmann::ordered_json ThresholdsToJson(const Thresholds &t);
// Unknown keys are rejected; missing keys keep their defaults.
Thresholds ThresholdsFromJson(const nlohmann::ordered_json &doc);
Thresholds LoadThresholds(const std::filesystem::path &path);

struct Trigger {
  std::string feature;
  double value = 0;
  double threshold = 0;

  friend bool operator==(const Trigger &, const Trigger &) = default;
};

struct Verdict {
  Label label = Label::kTruthful;
  std::vector<Trigger> triggered;
  FeatureProfile profile;

  friend bool operator==(const Verdict &, const Verdict &) = default;
};

FeatureProfile ComputeFeatures(const PreprocessedReview &p,
                               const LexiconSet &lex);

// True when the PopularName surface names the reviewed product: one token
// sequence is a contiguous run inside the other.
bool NameCoincides(std::string_view mention_surface,
                   std::string_view product_name);

double UntruthfulScore(const FeatureProfile &f, const Thresholds &t);

// Each detector appends the features that fired to `why` when given.
bool DetectNonReview(const FeatureProfile &f, const Thresholds &t,
                     std::vector<Trigger> *why = nullptr);
bool DetectBrandOnly(const FeatureProfile &f, const Thresholds &t,
                     std::vector<Trigger> *why = nullptr);
bool DetectOffTopic(const FeatureProfile &f, const Thresholds &t,
                    std::vector<Trigger> *why = nullptr);
bool DetectUntruthful(const FeatureProfile &f, const Thresholds &t,
                      std::vector<Trigger> *why = nullptr);

// Runs the single detector for a spam label; kTruthful is never detected.
bool Detect(Label type, const FeatureProfile &f, const Thresholds &t,
            std::vector<Trigger> *why = nullptr);

// Pipeline: non_review, brand_only, off_topic, untruthful; first hit wins.
Verdict ClassifyProfile(const FeatureProfile &f, const Thresholds &t);
Verdict Classify(const PreprocessedReview &p, const LexiconSet &lex,
                 const Thresholds &t);

nlohmann::ordered_json ProfileToJson(const FeatureProfile &f);
nlohmann::ordered_json VerdictToJson(const Verdict &v);

}  // namespace revspam

#endif  // REVSPAM_DETECTORS_H_
