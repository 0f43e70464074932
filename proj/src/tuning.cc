#include "revspam/tuning.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>

#include "revspam/error.h"
#include "revspam/parallel.h"

namespace revspam {
namespace {

// One searchable coordinate of the grid.
struct Axis {
  std::string_view name;
  std::size_t size;
  std::function<void(Thresholds &, std::size_t)> set;
};

template <typename T, typename Field>
Axis MakeAxis(std::string_view name, const std::vector<T> &values,
              Field field) {
  return {name, values.size(),
          [&values, field](Thresholds &t, std::size_t i) {
            t.*field = values[i];
          }};
}

std::vector<Axis> Axes(const GridSpec &g) {
  return {
      MakeAxis("theta_u", g.min_patterns, &Thresholds::min_patterns),
      MakeAxis("theta_o", g.min_opinion_ratio, &Thresholds::min_opinion_ratio),
      MakeAxis("theta_b", g.min_brand_ratio, &Thresholds::min_brand_ratio),
      MakeAxis("m_min", g.min_mentions, &Thresholds::min_mentions),
      MakeAxis("theta_f", g.min_foreign_ratio, &Thresholds::min_foreign_ratio),
      MakeAxis("theta_n", g.min_name_mismatch, &Thresholds::min_name_mismatch),
      MakeAxis("theta_ut", g.min_untruthful_score,
               &Thresholds::min_untruthful_score),
      MakeAxis("weights", g.weights, &Thresholds::weights),
      MakeAxis("op_min", g.min_opinion_words, &Thresholds::min_opinion_words),
      MakeAxis("ext_ref", g.extreme_ref, &Thresholds::extreme_ref),
  };
}

struct Best {
  double f = -1;
  Thresholds t;
  bool set = false;

  void Offer(double cand_f, const Thresholds &cand) {
    if (!set || BetterCandidate(cand_f, cand, f, t)) {
      f = cand_f;
      t = cand;
      set = true;
    }
  }
};

template <typename T>
std::vector<T> ReadList(const nlohmann::ordered_json &value,
                        const std::string &key) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kInvalidThresholds, key,
                "grid field '" + key + "' must be an array");
  }
  std::vector<T> out;
  for (const auto &v : value) {
    bool ok = std::is_integral_v<T> ? v.is_number_integer() : v.is_number();
    if (!ok) {
      throw Error(ErrorCode::kInvalidThresholds, key,
                  "grid field '" + key + "' has a non-numeric entry");
    }
    out.push_back(v.get<T>());
  }
  return out;
}

}  // namespace

std::uint64_t GridSpec::PointCount() const {
  std::uint64_t total = 1;
  for (const Axis &axis : Axes(*this)) {
    if (axis.size == 0) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / axis.size) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= axis.size;
  }
  return total;
}

void ValidateGrid(const GridSpec &grid) {
  for (const Axis &axis : Axes(grid)) {
    if (axis.size == 0) {
      throw Error(ErrorCode::kEmptyGrid, std::string(axis.name),
                  "grid field '" + std::string(axis.name) + "' is empty");
    }
    // Each candidate must be valid on its own with the other fields at their
    // defaults.
    for (std::size_t i = 0; i < axis.size; ++i) {
      Thresholds t;
      axis.set(t, i);
      ValidateThresholds(t);
    }
  }
}

GridSpec GridFromJson(const nlohmann::ordered_json &doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidThresholds, "", "grid must be an object");
  }
  GridSpec g;
  for (const auto &[key, value] : doc.items()) {
    if (key == "theta_u") g.min_patterns = ReadList<int>(value, key);
    else if (key == "theta_o") g.min_opinion_ratio = ReadList<double>(value, key);
    else if (key == "theta_b") g.min_brand_ratio = ReadList<double>(value, key);
    else if (key == "m_min") g.min_mentions = ReadList<int>(value, key);
    else if (key == "theta_f") g.min_foreign_ratio = ReadList<double>(value, key);
    else if (key == "theta_n") g.min_name_mismatch = ReadList<double>(value, key);
    else if (key == "theta_ut")
      g.min_untruthful_score = ReadList<double>(value, key);
    else if (key == "op_min") g.min_opinion_words = ReadList<int>(value, key);
    else if (key == "ext_ref") g.extreme_ref = ReadList<double>(value, key);
    else if (key == "weights") {
      if (!value.is_array()) {
        throw Error(ErrorCode::kInvalidThresholds, key,
                    "grid field 'weights' must be an array");
      }
      g.weights.clear();
      for (const auto &vec : value) {
        std::vector<double> w = ReadList<double>(vec, key);
        if (w.size() != 4) {
          throw Error(ErrorCode::kInvalidThresholds, key,
                      "each weights entry needs exactly 4 values");
        }
        g.weights.push_back({w[0], w[1], w[2], w[3]});
      }
    } else {
      throw Error(ErrorCode::kInvalidThresholds, key,
                  "unknown grid key '" + key + "'");
    }
  }
  ValidateGrid(g);
  return g;
}

GridSpec LoadGrid(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, path.string(),
                "cannot open grid file " + path.string());
  }
  auto doc = nlohmann::ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::kInvalidThresholds, path.string(),
                "grid file is not valid JSON");
  }
  return GridFromJson(doc);
}

std::string_view TuneModeName(TuneMode mode) {
  return mode == TuneMode::kExhaustive ? "exhaustive" : "coordinate";
}

double PipelineF(const LabeledProfiles &data, const Thresholds &t) {
  return ComputeMetrics(PipelineConfusion(data, t)).f_measure;
}

bool BetterCandidate(double f, const Thresholds &t, double incumbent_f,
                     const Thresholds &incumbent) {
  if (f != incumbent_f) return f > incumbent_f;
  return t.Key() < incumbent.Key();
}

TuneResult TuneProfiles(const LabeledProfiles &data, const GridSpec &grid,
                        TuneMode mode, int threads) {
  if (data.profiles.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "", "corpus has no reviews");
  }
  ValidateGrid(grid);
  const std::vector<Axis> axes = Axes(grid);
  TuneResult result;

  if (mode == TuneMode::kExhaustive) {
    const std::uint64_t points = grid.PointCount();
    const std::size_t workers =
        static_cast<std::size_t>(std::max(1, threads));
    const std::uint64_t block = (points + workers - 1) / workers;
    std::vector<Best> partial(workers);
    ParallelFor(workers, static_cast<int>(workers), [&](std::size_t w) {
      for (std::uint64_t p = w * block; p < std::min(points, (w + 1) * block);
           ++p) {
        Thresholds t;
        std::uint64_t rest = p;
        // Mixed radix with the last axis varying fastest.
        for (std::size_t a = axes.size(); a-- > 0;) {
          axes[a].set(t, rest % axes[a].size);
          rest /= axes[a].size;
        }
        partial[w].Offer(PipelineF(data, t), t);
      }
    });
    Best best;
    for (const Best &b : partial) {
      if (b.set) best.Offer(b.f, b.t);
    }
    result.best = best.t;
    result.best_f = best.f;
    result.evaluations = points;
    return result;
  }

  Thresholds current;
  double current_f = 0;
  constexpr int kPasses = 2;
  for (int pass = 0; pass < kPasses; ++pass) {
    for (const Axis &axis : axes) {
      Best best;
      for (std::size_t i = 0; i < axis.size; ++i) {
        Thresholds t = current;
        axis.set(t, i);
        best.Offer(PipelineF(data, t), t);
        ++result.evaluations;
      }
      current = best.t;
      current_f = best.f;
    }
  }
  result.best = current;
  result.best_f = current_f;
  return result;
}

TuneResult Tune(const std::vector<PreprocessedReview> &corpus,
                const LexiconSet &lex, const GridSpec &grid, TuneMode mode,
                int threads) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "", "corpus has no reviews");
  }
  ValidateGrid(grid);
  return TuneProfiles(ProfilePreprocessed(corpus, lex), grid, mode, threads);
}

nlohmann::ordered_json TuneResultToJson(const TuneResult &result,
                                        TuneMode mode) {
  nlohmann::ordered_json j;
  j["mode"] = TuneModeName(mode);
  j["best_f"] = result.best_f;
  j["evaluations"] = result.evaluations;
  j["best"] = ThresholdsToJson(result.best);
  return j;
}

}  // namespace revspam
