#ifndef REVSPAM_EVALUATION_H_
#define REVSPAM_EVALUATION_H_

#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "revspam/detectors.h"
#include "revspam/lexicons.h"
#include "revspam/ontology.h"
#include "revspam/preprocess.h"

namespace revspam {

struct ConfusionMatrix {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long tn = 0;

  long total() const { return tp + fp + fn + tn; }
  ConfusionMatrix &operator+=(const ConfusionMatrix &o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix &, const ConfusionMatrix &) =
      default;
};

struct Metrics {
  double precision = 0;
  double recall = 0;
  double f_measure = 0;

  friend bool operator==(const Metrics &, const Metrics &) = default;
};

// Spam is any label other than truthful. Throws LengthMismatch or EmptyInput.
ConfusionMatrix Confusion(std::span<const Label> predicted,
                          std::span<const Label> gold);

// P = tp/(tp+fp), R = tp/(tp+fn), F = 2PR/(P+R); each is 0 when its
// denominator is 0.
Metrics ComputeMetrics(const ConfusionMatrix &cm);

struct Scored {
  ConfusionMatrix matrix;
  Metrics metrics;

  friend bool operator==(const Scored &, const Scored &) = default;
};

struct EvalReport {
  Scored overall;
  // Per spam type on the {type, truthful} subset with only that detector on.
  std::map<Label, Scored> per_type;
  std::map<Label, long> gold_counts;
  std::map<Label, long> predicted_counts;

  friend bool operator==(const EvalReport &, const EvalReport &) = default;
};

// Feature profiles plus gold labels: everything evaluation and tuning need.
struct LabeledProfiles {
  std::vector<FeatureProfile> profiles;
  std::vector<Label> gold;
};

// Preprocesses and profiles every review. Throws EmptyCorpus, or
// UnlabeledReview with the 0-based index as subject.
LabeledProfiles ProfileCorpus(const std::vector<Review> &corpus,
                              const Ontology &ontology, const LexiconSet &lex,
                              int threads = 1);
LabeledProfiles ProfilePreprocessed(
    const std::vector<PreprocessedReview> &corpus, const LexiconSet &lex);

EvalReport EvaluateProfiles(const LabeledProfiles &data, const Thresholds &t);
EvalReport EvaluateCorpus(const std::vector<Review> &corpus,
                          const Ontology &ontology, const LexiconSet &lex,
                          const Thresholds &t, int threads = 1);

// Overall spam-vs-truthful matrix under the full pipeline.
ConfusionMatrix PipelineConfusion(const LabeledProfiles &data,
                                  const Thresholds &t);

nlohmann::ordered_json ReportToJson(const EvalReport &report);

}  // namespace revspam

#endif  // REVSPAM_EVALUATION_H_
