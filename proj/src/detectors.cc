#include "revspam/detectors.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "revspam/error.h"

namespace revspam {
namespace {

double Ratio(int num, int den) {
  return static_cast<double>(num) / static_cast<double>(std::max(1, den));
}

std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t sp = s.find(' ', pos);
    if (sp == std::string_view::npos) sp = s.size();
    if (sp > pos) out.emplace_back(s.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return out;
}

bool ContainsRun(const std::vector<std::string> &hay,
                 const std::vector<std::string> &needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) !=
         hay.end();
}

void Fire(std::vector<Trigger> *why, std::string_view feature, double value,
          double threshold) {
  if (why) why->push_back({std::string(feature), value, threshold});
}

bool InUnit(double v) { return v >= 0.0 && v <= 1.0; }

void Require(bool ok, std::string_view key, const std::string &message) {
  if (!ok) {
    throw Error(ErrorCode::kInvalidThresholds, std::string(key), message);
  }
}

// JSON key table, declaration order.
constexpr std::string_view kKeys[] = {
    "theta_u", "theta_o", "theta_b", "m_min",  "theta_f", "theta_n", "theta_ut",
    "w1",      "w2",      "w3",      "w4",     "op_min",  "ext_ref"};

}  // namespace

std::array<double, 13> Thresholds::Key() const {
  return {static_cast<double>(min_patterns),
          min_opinion_ratio,
          min_brand_ratio,
          static_cast<double>(min_mentions),
          min_foreign_ratio,
          min_name_mismatch,
          min_untruthful_score,
          weights[0],
          weights[1],
          weights[2],
          weights[3],
          static_cast<double>(min_opinion_words),
          extreme_ref};
}

void ValidateThresholds(const Thresholds &t) {
  Require(t.min_patterns >= 1, "theta_u", "theta_u must be >= 1");
  Require(InUnit(t.min_opinion_ratio), "theta_o", "theta_o must be in [0,1]");
  Require(InUnit(t.min_brand_ratio), "theta_b", "theta_b must be in [0,1]");
  Require(t.min_mentions >= 1, "m_min", "m_min must be >= 1");
  Require(InUnit(t.min_foreign_ratio), "theta_f", "theta_f must be in [0,1]");
  Require(InUnit(t.min_name_mismatch), "theta_n", "theta_n must be in [0,1]");
  Require(InUnit(t.min_untruthful_score), "theta_ut",
          "theta_ut must be in [0,1]");
  double sum = 0;
  for (std::size_t i = 0; i < t.weights.size(); ++i) {
    Require(InUnit(t.weights[i]), kKeys[7 + i], "weights must be in [0,1]");
    sum += t.weights[i];
  }
  Require(std::abs(sum - 1.0) <= 1e-9, "w1", "weights must sum to 1");
  Require(t.min_opinion_words >= 0, "op_min", "op_min must be >= 0");
  Require(t.extreme_ref > 0.0 && t.extreme_ref <= 1.0, "ext_ref",
          "ext_ref must be in (0,1]");
}

nlohmann::ordered_json ThresholdsToJson(const Thresholds &t) {
  nlohmann::ordered_json doc;
  const auto key = t.Key();
  for (std::size_t i = 0; i < key.size(); ++i) {
    std::string_view name = kKeys[i];
    if (name == "theta_u" || name == "m_min" || name == "op_min") {
      doc[std::string(name)] = static_cast<int>(key[i]);
    } else {
      doc[std::string(name)] = key[i];
    }
  }
  return doc;
}

Thresholds ThresholdsFromJson(const nlohmann::ordered_json &doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidThresholds, "", "thresholds must be an object");
  }
  Thresholds t;
  for (const auto &[key, value] : doc.items()) {
    auto number = [&]() -> double {
      Require(value.is_number(), key, key + " must be a number");
      return value.get<double>();
    };
    auto integer = [&]() -> int {
      Require(value.is_number_integer(), key, key + " must be an integer");
      return value.get<int>();
    };
    if (key == "theta_u") t.min_patterns = integer();
    else if (key == "theta_o") t.min_opinion_ratio = number();
    else if (key == "theta_b") t.min_brand_ratio = number();
    else if (key == "m_min") t.min_mentions = integer();
    else if (key == "theta_f") t.min_foreign_ratio = number();
    else if (key == "theta_n") t.min_name_mismatch = number();
    else if (key == "theta_ut") t.min_untruthful_score = number();
    else if (key == "w1") t.weights[0] = number();
    else if (key == "w2") t.weights[1] = number();
    else if (key == "w3") t.weights[2] = number();
    else if (key == "w4") t.weights[3] = number();
    else if (key == "op_min") t.min_opinion_words = integer();
    else if (key == "ext_ref") t.extreme_ref = number();
    else Require(false, key, "unknown thresholds key '" + key + "'");
  }
  ValidateThresholds(t);
  return t;
}

Thresholds LoadThresholds(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, path.string(),
                "cannot open thresholds file " + path.string());
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::kInvalidThresholds, path.string(),
                "thresholds file is not valid JSON");
  }
  return ThresholdsFromJson(doc);
}

bool NameCoincides(std::string_view mention_surface,
                   std::string_view product_name) {
  std::vector<std::string> mention = SplitWords(mention_surface);
  std::vector<std::string> name = Tokenize(Normalize(product_name));
  return ContainsRun(name, mention) || ContainsRun(mention, name);
}

FeatureProfile ComputeFeatures(const PreprocessedReview &p,
                               const LexiconSet &lex) {
  FeatureProfile f;
  f.u = static_cast<int>(MatchUnusualPatterns(p.normalized, lex).size());

  f.token_count = static_cast<int>(p.tokens.size());
  f.sentence_count = static_cast<int>(p.sentences.size());
  for (const Token &t : p.tokens) {
    if (lex.IsPositive(t.surface_norm)) ++f.pos_count;
    if (lex.IsNegative(t.surface_norm)) ++f.neg_count;
    if (lex.IsExtreme(t.surface_norm)) ++f.extreme_count;
  }
  f.o = Ratio(f.pos_count + f.neg_count, f.token_count);
  f.polarity = Ratio(std::abs(f.pos_count - f.neg_count),
                     f.pos_count + f.neg_count);
  f.extreme_ratio = Ratio(f.extreme_count, f.token_count);

  f.mention_total = static_cast<int>(p.mentions.size());
  for (const EntityMention &m : p.mentions) {
    if (m.native_role == EntityRole::kOrigin) ++f.origin_mentions;
    if (m.role == EntityRole::kForeign) ++f.foreign_mentions;
    if (m.native_role == EntityRole::kPopularName) {
      ++f.popular_name_mentions;
      if (!NameCoincides(m.surface_norm, p.review.product_name())) {
        ++f.mismatched_names;
      }
    }
  }
  f.brand_ratio = Ratio(f.origin_mentions, f.mention_total);
  f.foreign_ratio = Ratio(f.foreign_mentions, f.mention_total);
  f.name_mismatch_ratio = Ratio(f.mismatched_names, f.popular_name_mentions);

  f.name_mentions = p.name_mentions;
  f.name_mentions_caps = p.name_mentions_caps;
  f.dup_name = Ratio(p.name_mentions, f.sentence_count);
  f.caps_ratio = Ratio(p.name_mentions_caps, p.name_mentions);
  return f;
}

double UntruthfulScore(const FeatureProfile &f, const Thresholds &t) {
  return t.weights[0] * f.polarity +
         t.weights[1] * std::min(f.dup_name, 1.0) +
         t.weights[2] * f.caps_ratio +
         t.weights[3] * std::min(f.extreme_ratio / t.extreme_ref, 1.0);
}

bool DetectNonReview(const FeatureProfile &f, const Thresholds &t,
                     std::vector<Trigger> *why) {
  bool ads = f.u >= t.min_patterns;
  bool no_opinion = f.o < t.min_opinion_ratio;
  if (ads) Fire(why, "u", f.u, t.min_patterns);
  if (no_opinion) Fire(why, "o", f.o, t.min_opinion_ratio);
  return ads || no_opinion;
}

bool DetectBrandOnly(const FeatureProfile &f, const Thresholds &t,
                     std::vector<Trigger> *why) {
  bool hit = f.mention_total >= t.min_mentions &&
             f.brand_ratio >= t.min_brand_ratio;
  if (hit) {
    Fire(why, "mention_total", f.mention_total, t.min_mentions);
    Fire(why, "brand_ratio", f.brand_ratio, t.min_brand_ratio);
  }
  return hit;
}

bool DetectOffTopic(const FeatureProfile &f, const Thresholds &t,
                    std::vector<Trigger> *why) {
  bool hit = f.foreign_ratio >= t.min_foreign_ratio &&
             f.name_mismatch_ratio >= t.min_name_mismatch;
  if (hit) {
    Fire(why, "foreign_ratio", f.foreign_ratio, t.min_foreign_ratio);
    Fire(why, "name_mismatch_ratio", f.name_mismatch_ratio,
         t.min_name_mismatch);
  }
  return hit;
}

bool DetectUntruthful(const FeatureProfile &f, const Thresholds &t,
                      std::vector<Trigger> *why) {
  int opinions = f.pos_count + f.neg_count;
  double score = UntruthfulScore(f, t);
  bool hit = opinions >= t.min_opinion_words &&
             score >= t.min_untruthful_score;
  if (hit) {
    Fire(why, "opinion_words", opinions, t.min_opinion_words);
    Fire(why, "untruthful_score", score, t.min_untruthful_score);
  }
  return hit;
}

bool Detect(Label type, const FeatureProfile &f, const Thresholds &t,
            std::vector<Trigger> *why) {
  switch (type) {
    case Label::kNonReview: return DetectNonReview(f, t, why);
    case Label::kBrandOnly: return DetectBrandOnly(f, t, why);
    case Label::kOffTopic: return DetectOffTopic(f, t, why);
    case Label::kUntruthful: return DetectUntruthful(f, t, why);
    case Label::kTruthful: break;
  }
  return false;
}

Verdict ClassifyProfile(const FeatureProfile &f, const Thresholds &t) {
  Verdict v;
  v.profile = f;
  for (Label type : kSpamLabels) {
    if (Detect(type, f, t, &v.triggered)) {
      v.label = type;
      return v;
    }
  }
  return v;
}

Verdict Classify(const PreprocessedReview &p, const LexiconSet &lex,
                 const Thresholds &t) {
  return ClassifyProfile(ComputeFeatures(p, lex), t);
}

nlohmann::ordered_json ProfileToJson(const FeatureProfile &f) {
  nlohmann::ordered_json j;
  j["u"] = f.u;
  j["o"] = f.o;
  j["brand_ratio"] = f.brand_ratio;
  j["mention_total"] = f.mention_total;
  j["foreign_ratio"] = f.foreign_ratio;
  j["name_mismatch_ratio"] = f.name_mismatch_ratio;
  j["polarity"] = f.polarity;
  j["dup_name"] = f.dup_name;
  j["caps_ratio"] = f.caps_ratio;
  j["extreme_ratio"] = f.extreme_ratio;
  j["pos_count"] = f.pos_count;
  j["neg_count"] = f.neg_count;
  j["token_count"] = f.token_count;
  j["sentence_count"] = f.sentence_count;
  j["extreme_count"] = f.extreme_count;
  j["origin_mentions"] = f.origin_mentions;
  j["foreign_mentions"] = f.foreign_mentions;
  j["popular_name_mentions"] = f.popular_name_mentions;
  j["mismatched_names"] = f.mismatched_names;
  j["name_mentions"] = f.name_mentions;
  j["name_mentions_caps"] = f.name_mentions_caps;
  return j;
}

nlohmann::ordered_json VerdictToJson(const Verdict &v) {
  nlohmann::ordered_json j;
  j["label"] = LabelName(v.label);
  nlohmann::ordered_json triggered = nlohmann::ordered_json::array();
  for (const Trigger &t : v.triggered) {
    nlohmann::ordered_json item;
    item["feature"] = t.feature;
    item["value"] = t.value;
    item["threshold"] = t.threshold;
    triggered.push_back(item);
  }
  j["triggered"] = triggered;
  j["profile"] = ProfileToJson(v.profile);
  return j;
}

}  // namespace revspam
