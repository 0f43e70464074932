#include "revspam/corpus_io.h"

#include <fstream>
#include <string>

#include <json.hpp>

#include "revspam/error.h"

namespace revspam {
namespace {

[[noreturn]] void Malformed(int line, const std::string &message) {
  throw Error(ErrorCode::kMalformedRecord, std::to_string(line), message, line);
}

std::string RequireString(const nlohmann::json &record, const char *key,
                          int line) {
  auto it = record.find(key);
  if (it == record.end()) Malformed(line, std::string("missing '") + key + "'");
  if (!it->is_string()) {
    Malformed(line, std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus ReadCorpus(std::istream &in) {
  Corpus corpus;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      Malformed(line_no, "not a JSON object");
    }
    for (const auto &[key, value] : record.items()) {
      if (key != "category" && key != "product_name" && key != "content" &&
          key != "label") {
        Malformed(line_no, "unknown field '" + key + "'");
      }
    }
    std::optional<Label> label;
    if (auto it = record.find("label"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) Malformed(line_no, "'label' must be a string");
      label = ParseLabel(it->get<std::string>());
      if (!label) {
        Malformed(line_no, "unknown label '" + it->get<std::string>() + "'");
      }
    }
    try {
      corpus.reviews.emplace_back(RequireString(record, "category", line_no),
                                  RequireString(record, "product_name", line_no),
                                  RequireString(record, "content", line_no),
                                  label);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kInvalidReview) throw;
      throw Error(e.code(), e.subject(), "invalid review: " + e.subject() +
                                             " is empty", line_no);
    }
    corpus.lines.push_back(line_no);
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, path.string(),
                "cannot open corpus " + path.string());
  }
  return ReadCorpus(in);
}

}  // namespace revspam
