#ifndef REVSPAM_TUNING_H_
#define REVSPAM_TUNING_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revspam/detectors.h"
#include "revspam/evaluation.h"

namespace revspam {

// Ordered candidate values per threshold field. Weights are searched as whole
// vectors. Every list must be non-empty; FromJson fills absent fields with the
// single default value.
struct GridSpec {
  std::vector<int> min_patterns{2};
  std::vector<double> min_opinion_ratio{0.02};
  std::vector<double> min_brand_ratio{0.6};
  std::vector<int> min_mentions{3};
  std::vector<double> min_foreign_ratio{0.4};
  std::vector<double> min_name_mismatch{0.5};
  std::vector<double> min_untruthful_score{0.5};
  std::vector<std::array<double, 4>> weights{{0.25, 0.25, 0.25, 0.25}};
  std::vector<int> min_opinion_words{2};
  std::vector<double> extreme_ref{0.05};

  // Number of points in the full Cartesian grid (saturates at UINT64_MAX).
  std::uint64_t PointCount() const;
};

// Throws EmptyGrid(field) or InvalidThresholds for an out-of-range candidate.
void ValidateGrid(const GridSpec &grid);

// Keys are Thresholds field names (theta_u, ...) plus "weights" holding a list
// of [w1, w2, w3, w4] vectors. Unknown keys are rejected.
GridSpec GridFromJson(const nlohmann::ordered_json &doc);
GridSpec LoadGrid(const std::filesystem::path &path);

enum class TuneMode { kExhaustive, kCoordinate };

std::string_view TuneModeName(TuneMode mode);

struct TuneResult {
  Thresholds best;
  double best_f = 0;
  std::uint64_t evaluations = 0;

  friend bool operator==(const TuneResult &, const TuneResult &) = default;
};

// Overall spam-vs-truthful F of the full pipeline.
double PipelineF(const LabeledProfiles &data, const Thresholds &t);

// True when candidate (f, t) beats the incumbent: higher F, or equal F and a
// lexicographically smaller Thresholds::Key().
bool BetterCandidate(double f, const Thresholds &t, double incumbent_f,
                     const Thresholds &incumbent);

// Exhaustive mode enumerates the full grid. Coordinate mode starts from the
// default Thresholds and, for two passes, sets each field in declaration order
// (weights as one step) to its best grid value with the others held fixed.
TuneResult TuneProfiles(const LabeledProfiles &data, const GridSpec &grid,
                        TuneMode mode, int threads = 1);
TuneResult Tune(const std::vector<PreprocessedReview> &corpus,
                const LexiconSet &lex, const GridSpec &grid, TuneMode mode,
                int threads = 1);

nlohmann::ordered_json TuneResultToJson(const TuneResult &result,
                                        TuneMode mode);

}  // namespace revspam

#endif  // REVSPAM_TUNING_H_
