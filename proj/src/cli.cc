#include "revspam/cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "revspam/corpus_io.h"
#include "revspam/detectors.h"
#include "revspam/error.h"
#include "revspam/evaluation.h"
#include "revspam/lexicons.h"
#include "revspam/ontology.h"
#include "revspam/parallel.h"
#include "revspam/preprocess.h"
#include "revspam/tuning.h"

namespace revspam {
namespace {

// Carries an exit code alongside the library error.
struct Failure {
  int exit_code;
  std::string kind;
  std::string message;
  int line = 0;
};

struct Options {
  std::string ontology;
  std::string lexicons;
  std::string thresholds;
  std::string input;
  std::string output;
  std::string grid;
  std::string mode;
  int threads = 1;
};

Failure FromError(const Error &e, int exit_code, int line = 0) {
  return {exit_code, std::string(ErrorCodeName(e.code())), e.what(),
          line > 0 ? line : e.line()};
}

Ontology LoadOntologyOrFail(const std::string &path) {
  try {
    return LoadOntology(path);
  } catch (const Error &e) {
    throw FromError(e, kExitLoadFailure);
  }
}

LexiconSet LoadLexiconsOrFail(const std::string &dir) {
  try {
    return LoadLexicons(dir);
  } catch (const Error &e) {
    throw FromError(e, kExitLoadFailure);
  }
}

Thresholds LoadThresholdsOrFail(const std::string &path) {
  if (path.empty()) return Thresholds{};
  try {
    return LoadThresholds(path);
  } catch (const Error &e) {
    throw FromError(e, kExitBadInput);
  }
}

Corpus LoadCorpusOrFail(const std::string &path) {
  try {
    return LoadCorpus(path);
  } catch (const Error &e) {
    throw FromError(e, kExitBadInput);
  }
}

void RequireLabels(const Corpus &corpus) {
  for (std::size_t i = 0; i < corpus.reviews.size(); ++i) {
    if (!corpus.reviews[i].label()) {
      throw Failure{kExitBadInput,
                    std::string(ErrorCodeName(ErrorCode::kUnlabeledReview)),
                    "review on line " + std::to_string(corpus.lines[i]) +
                        " has no label",
                    corpus.lines[i]};
    }
  }
  if (corpus.reviews.empty()) {
    throw Failure{kExitBadInput,
                  std::string(ErrorCodeName(ErrorCode::kEmptyCorpus)),
                  "corpus has no reviews"};
  }
}

// Profiles every review; the first failing review (by input order) is
// reported with its line.
std::vector<FeatureProfile> ProfileAll(const Corpus &corpus,
                                       const Ontology &ontology,
                                       const LexiconSet &lex, int threads) {
  const std::size_t n = corpus.reviews.size();
  std::vector<FeatureProfile> profiles(n);
  std::vector<std::optional<Error>> errors(n);
  ParallelFor(n, threads, [&](std::size_t i) {
    try {
      profiles[i] =
          ComputeFeatures(Preprocess(corpus.reviews[i], ontology, lex), lex);
    } catch (const Error &e) {
      errors[i] = e;
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) throw FromError(*errors[i], kExitBadInput, corpus.lines[i]);
  }
  return profiles;
}

void Emit(const Options &opts, const std::string &text, std::ostream &out) {
  if (opts.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.output, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    throw Failure{kExitBadInput, "OutputError",
                  "cannot write " + opts.output};
  }
}

std::string RunCheckOntology(const Options &opts) {
  Ontology o = LoadOntologyOrFail(opts.ontology);
  return "classes=" + std::to_string(o.classes().size()) +
         " entities=" + std::to_string(o.entities().size()) + "\n";
}

std::string RunClassify(const Options &opts) {
  Ontology o = LoadOntologyOrFail(opts.ontology);
  LexiconSet lex = LoadLexiconsOrFail(opts.lexicons);
  Thresholds t = LoadThresholdsOrFail(opts.thresholds);
  Corpus corpus = LoadCorpusOrFail(opts.input);
  std::ostringstream text;
  for (const FeatureProfile &f : ProfileAll(corpus, o, lex, opts.threads)) {
    text << VerdictToJson(ClassifyProfile(f, t)).dump() << "\n";
  }
  return text.str();
}

LabeledProfiles LabeledOrFail(const Options &opts, const Ontology &o,
                              const LexiconSet &lex) {
  Corpus corpus = LoadCorpusOrFail(opts.input);
  RequireLabels(corpus);
  LabeledProfiles data;
  data.profiles = ProfileAll(corpus, o, lex, opts.threads);
  for (const Review &r : corpus.reviews) data.gold.push_back(*r.label());
  return data;
}

std::string RunEvaluate(const Options &opts) {
  Ontology o = LoadOntologyOrFail(opts.ontology);
  LexiconSet lex = LoadLexiconsOrFail(opts.lexicons);
  Thresholds t = LoadThresholdsOrFail(opts.thresholds);
  LabeledProfiles data = LabeledOrFail(opts, o, lex);
  return ReportToJson(EvaluateProfiles(data, t)).dump(2) + "\n";
}

std::string RunTune(const Options &opts) {
  Ontology o = LoadOntologyOrFail(opts.ontology);
  LexiconSet lex = LoadLexiconsOrFail(opts.lexicons);
  GridSpec grid;
  try {
    grid = LoadGrid(opts.grid);
  } catch (const Error &e) {
    throw FromError(e, kExitBadInput);
  }
  TuneMode mode = opts.mode == "exhaustive" ? TuneMode::kExhaustive
                                            : TuneMode::kCoordinate;
  LabeledProfiles data = LabeledOrFail(opts, o, lex);
  TuneResult result = TuneProfiles(data, grid, mode, opts.threads);
  return TuneResultToJson(result, mode).dump(2) + "\n";
}

void WriteFailure(const Failure &f, std::ostream &err) {
  nlohmann::ordered_json j;
  j["error"] = f.kind;
  j["exit"] = f.exit_code;
  if (f.line > 0) j["line"] = f.line;
  j["message"] = f.message;
  err << j.dump() << "\n";
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  Options opts;
  CLI::App app{"Ontology-backed opinion spam detector", "revspam"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App *cmd, bool needs_lexicons, bool needs_input) {
    cmd->add_option("--ontology", opts.ontology, "Ontology file")->required();
    if (needs_lexicons) {
      cmd->add_option("--lexicons", opts.lexicons, "Lexicon directory")
          ->required();
      cmd->add_option("--thresholds", opts.thresholds,
                      "Thresholds JSON (defaults when absent)");
    }
    if (needs_input) {
      cmd->add_option("--input", opts.input, "Corpus (JSON Lines)")->required();
      cmd->add_option("--threads", opts.threads, "Worker threads")
          ->check(CLI::Range(1, 256));
    }
    cmd->add_option("--output", opts.output, "Output path (default stdout)");
  };

  CLI::App *classify = app.add_subcommand("classify", "Label every review");
  add_common(classify, true, true);
  CLI::App *evaluate =
      app.add_subcommand("evaluate", "Precision/recall/F on a labeled corpus");
  add_common(evaluate, true, true);
  CLI::App *tune = app.add_subcommand("tune", "Grid-search thresholds");
  add_common(tune, true, true);
  tune->add_option("--grid", opts.grid, "Grid JSON")->required();
  tune->add_option("--mode", opts.mode, "exhaustive|coordinate")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "coordinate"}));
  CLI::App *check =
      app.add_subcommand("check-ontology", "Validate an ontology file");
  add_common(check, false, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    WriteFailure({kExitUsage, "UsageError", e.what()}, err);
    return kExitUsage;
  }

  try {
    std::string text;
    if (*classify) text = RunClassify(opts);
    else if (*evaluate) text = RunEvaluate(opts);
    else if (*tune) text = RunTune(opts);
    else text = RunCheckOntology(opts);
    Emit(opts, text, out);
  } catch (const Failure &f) {
    WriteFailure(f, err);
    return f.exit_code;
  } catch (const Error &e) {
    WriteFailure(FromError(e, kExitBadInput), err);
    return kExitBadInput;
  }
  return kExitOk;
}

}  // namespace revspam
