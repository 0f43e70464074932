#include "revspam/evaluation.h"

#include <string>

#include "revspam/error.h"
#include "revspam/parallel.h"

namespace revspam {
namespace {

void Tally(ConfusionMatrix &cm, bool predicted_spam, bool gold_spam) {
  if (predicted_spam && gold_spam) ++cm.tp;
  else if (predicted_spam) ++cm.fp;
  else if (gold_spam) ++cm.fn;
  else ++cm.tn;
}

double SafeDiv(double num, double den) { return den == 0 ? 0.0 : num / den; }

nlohmann::ordered_json ScoredToJson(const Scored &s) {
  nlohmann::ordered_json j;
  j["tp"] = s.matrix.tp;
  j["fp"] = s.matrix.fp;
  j["fn"] = s.matrix.fn;
  j["tn"] = s.matrix.tn;
  j["precision"] = s.metrics.precision;
  j["recall"] = s.metrics.recall;
  j["f"] = s.metrics.f_measure;
  return j;
}

std::vector<Label> RequireLabels(const std::vector<Review> &corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "", "corpus has no reviews");
  }
  std::vector<Label> gold;
  gold.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus[i].label()) {
      throw Error(ErrorCode::kUnlabeledReview, std::to_string(i),
                  "review " + std::to_string(i) + " has no label");
    }
    gold.push_back(*corpus[i].label());
  }
  return gold;
}

}  // namespace

ConfusionMatrix Confusion(std::span<const Label> predicted,
                          std::span<const Label> gold) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorCode::kLengthMismatch, "",
                "predicted has " + std::to_string(predicted.size()) +
                    " labels, gold has " + std::to_string(gold.size()));
  }
  if (predicted.empty()) {
    throw Error(ErrorCode::kEmptyInput, "", "no labels to compare");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    Tally(cm, IsSpam(predicted[i]), IsSpam(gold[i]));
  }
  return cm;
}

Metrics ComputeMetrics(const ConfusionMatrix &cm) {
  Metrics m;
  m.precision = SafeDiv(cm.tp, cm.tp + cm.fp);
  m.recall = SafeDiv(cm.tp, cm.tp + cm.fn);
  m.f_measure = SafeDiv(2.0 * m.precision * m.recall, m.precision + m.recall);
  return m;
}

LabeledProfiles ProfileCorpus(const std::vector<Review> &corpus,
                              const Ontology &ontology, const LexiconSet &lex,
                              int threads) {
  LabeledProfiles data;
  data.gold = RequireLabels(corpus);
  data.profiles.resize(corpus.size());
  ParallelFor(corpus.size(), threads, [&](std::size_t i) {
    data.profiles[i] = ComputeFeatures(Preprocess(corpus[i], ontology, lex), lex);
  });
  return data;
}

LabeledProfiles ProfilePreprocessed(
    const std::vector<PreprocessedReview> &corpus, const LexiconSet &lex) {
  std::vector<Review> reviews;
  reviews.reserve(corpus.size());
  for (const PreprocessedReview &p : corpus) reviews.push_back(p.review);
  LabeledProfiles data;
  data.gold = RequireLabels(reviews);
  for (const PreprocessedReview &p : corpus) {
    data.profiles.push_back(ComputeFeatures(p, lex));
  }
  return data;
}

ConfusionMatrix PipelineConfusion(const LabeledProfiles &data,
                                  const Thresholds &t) {
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < data.profiles.size(); ++i) {
    bool predicted_spam = false;
    for (Label type : kSpamLabels) {
      if (Detect(type, data.profiles[i], t)) {
        predicted_spam = true;
        break;
      }
    }
    Tally(cm, predicted_spam, IsSpam(data.gold[i]));
  }
  return cm;
}

EvalReport EvaluateProfiles(const LabeledProfiles &data, const Thresholds &t) {
  if (data.profiles.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "", "corpus has no reviews");
  }
  EvalReport report;
  std::vector<Label> predicted;
  predicted.reserve(data.profiles.size());
  for (const FeatureProfile &f : data.profiles) {
    predicted.push_back(ClassifyProfile(f, t).label);
  }
  report.overall.matrix = Confusion(predicted, data.gold);
  report.overall.metrics = ComputeMetrics(report.overall.matrix);

  for (Label type : kSpamLabels) {
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < data.profiles.size(); ++i) {
      if (data.gold[i] != type && data.gold[i] != Label::kTruthful) continue;
      Tally(cm, Detect(type, data.profiles[i], t), data.gold[i] == type);
    }
    report.per_type[type] = {cm, ComputeMetrics(cm)};
  }
  for (std::size_t i = 0; i < data.gold.size(); ++i) {
    ++report.gold_counts[data.gold[i]];
    ++report.predicted_counts[predicted[i]];
  }
  return report;
}

EvalReport EvaluateCorpus(const std::vector<Review> &corpus,
                          const Ontology &ontology, const LexiconSet &lex,
                          const Thresholds &t, int threads) {
  return EvaluateProfiles(ProfileCorpus(corpus, ontology, lex, threads), t);
}

nlohmann::ordered_json ReportToJson(const EvalReport &report) {
  nlohmann::ordered_json j;
  j["overall"] = ScoredToJson(report.overall);
  nlohmann::ordered_json per_type = nlohmann::ordered_json::object();
  for (Label type : kSpamLabels) {
    auto it = report.per_type.find(type);
    if (it != report.per_type.end()) {
      per_type[std::string(LabelName(type))] = ScoredToJson(it->second);
    }
  }
  j["per_type"] = per_type;
  nlohmann::ordered_json gold = nlohmann::ordered_json::object();
  nlohmann::ordered_json predicted = nlohmann::ordered_json::object();
  for (Label l : {Label::kTruthful, Label::kNonReview, Label::kBrandOnly,
                  Label::kOffTopic, Label::kUntruthful}) {
    auto g = report.gold_counts.find(l);
    auto p = report.predicted_counts.find(l);
    gold[std::string(LabelName(l))] =
        g == report.gold_counts.end() ? 0 : g->second;
    predicted[std::string(LabelName(l))] =
        p == report.predicted_counts.end() ? 0 : p->second;
  }
  j["counts"] = {{"gold", gold}, {"predicted", predicted}};
  return j;
}

}  // namespace revspam
