#include "revspam/lexicons.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>

#include "revspam/error.h"

namespace revspam {
namespace {

struct TermLine {
  std::string text;
  int line;
};

std::vector<TermLine> ReadTermLines(const std::filesystem::path &path,
                                    bool required) {
  std::ifstream in(path);
  if (!in) {
    if (!required) return {};
    throw Error(ErrorCode::kMissingFile, path.filename().string(),
                "cannot open lexicon file " + path.string());
  }
  std::vector<TermLine> lines;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string term = Normalize(line);
    if (!term.empty()) lines.push_back({std::move(term), line_no});
  }
  return lines;
}

std::set<std::string, std::less<>> LoadTermFile(
    const std::filesystem::path &dir, const std::string &name,
    bool allow_phrases) {
  std::set<std::string, std::less<>> terms;
  for (TermLine &t : ReadTermLines(dir / name, /*required=*/true)) {
    if (!allow_phrases && t.text.find(' ') != std::string::npos) {
      throw Error(ErrorCode::kSyntaxError, name,
                  "multi-word term '" + t.text + "' in " + name, t.line);
    }
    terms.insert(std::move(t.text));
  }
  if (terms.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, name, name + " has no terms");
  }
  return terms;
}

struct CompiledPattern {
  PatternKind kind;
  std::regex regex;
};

const std::vector<CompiledPattern> &BuiltinPatterns() {
  static const std::vector<CompiledPattern> patterns = [] {
    const auto flags = std::regex::ECMAScript | std::regex::icase;
    std::vector<CompiledPattern> p;
    p.push_back({PatternKind::kUrl,
                 std::regex(R"((https?://|www\.)[^\s]+)", flags)});
    p.push_back({PatternKind::kEmail,
                 std::regex(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})",
                            flags)});
    p.push_back({PatternKind::kPhone,
                 std::regex(R"(\+?\d[\d\-\s().]{6,}\d)", flags)});
    // Currency signs are multi-byte in UTF-8, so they are alternatives rather
    // than a bracket class.
    p.push_back(
        {PatternKind::kPrice,
         std::regex(
             "(\\$|\xE2\x82\xAC|\xC2\xA3)\\s?\\d+([.,]\\d+)?"
             R"(|\b\d+(\.\d+)?\s?(usd|dollars?)\b)",
             flags)});
    return p;
  }();
  return patterns;
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun: return "NOUN";
    case PosTag::kAdj: return "ADJ";
    case PosTag::kVerb: return "VERB";
    case PosTag::kAdv: return "ADV";
    case PosTag::kPron: return "PRON";
    case PosTag::kDet: return "DET";
    case PosTag::kOther: return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  for (PosTag tag : {PosTag::kNoun, PosTag::kAdj, PosTag::kVerb, PosTag::kAdv,
                     PosTag::kPron, PosTag::kDet, PosTag::kOther}) {
    if (PosTagName(tag) == name) return tag;
  }
  return std::nullopt;
}

std::string_view PatternKindName(PatternKind kind) {
  switch (kind) {
    case PatternKind::kUrl: return "url";
    case PatternKind::kEmail: return "email";
    case PatternKind::kPhone: return "phone";
    case PatternKind::kPrice: return "price";
    case PatternKind::kAdPhrase: return "ad_phrase";
  }
  return "";
}

LexiconSet LoadLexicons(const std::filesystem::path &dir) {
  LexiconSet lex;
  lex.positive = LoadTermFile(dir, "positive.txt", false);
  lex.negative = LoadTermFile(dir, "negative.txt", false);
  lex.extreme = LoadTermFile(dir, "extreme.txt", false);
  lex.ad_phrases = LoadTermFile(dir, "adphrases.txt", true);
  for (const std::string &term : lex.positive) {
    if (lex.negative.contains(term)) {
      throw Error(ErrorCode::kOverlapError, term,
                  "'" + term + "' is both positive and negative");
    }
  }

  for (TermLine &t : ReadTermLines(dir / "tags.txt", /*required=*/false)) {
    auto space = t.text.rfind(' ');
    // Tag names are upper case in the file but Normalize folded them.
    std::optional<PosTag> tag;
    if (space != std::string::npos) {
      std::string name = t.text.substr(space + 1);
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return std::toupper(c); });
      tag = ParsePosTag(name);
    }
    if (!tag || t.text.find(' ') != space) {
      throw Error(ErrorCode::kSyntaxError, "tags.txt",
                  "expected '<term> <TAG>', got '" + t.text + "'", t.line);
    }
    lex.tags[t.text.substr(0, space)] = *tag;
  }
  return lex;
}

std::vector<PatternHit> MatchUnusualPatterns(std::string_view normalized,
                                             const LexiconSet &lex) {
  std::vector<PatternHit> hits;
  const std::string text(normalized);
  for (const CompiledPattern &p : BuiltinPatterns()) {
    for (auto it = std::sregex_iterator(text.begin(), text.end(), p.regex);
         it != std::sregex_iterator(); ++it) {
      const std::smatch &m = *it;
      if (m.length(0) == 0) continue;
      std::size_t begin = static_cast<std::size_t>(m.position(0));
      hits.push_back({p.kind, {begin, begin + m.length(0)}, m.str(0)});
    }
  }

  // Ad phrases: literal matches that begin at a word start and end at a word
  // end; longest phrase wins at each start, scanning left to right.
  if (!lex.ad_phrases.empty()) {
    std::vector<TextSpan> words = WordSpans(text);
    std::set<std::size_t> word_ends;
    for (const TextSpan &w : words) word_ends.insert(w.end);
    std::vector<std::string_view> phrases(lex.ad_phrases.begin(),
                                          lex.ad_phrases.end());
    std::stable_sort(phrases.begin(), phrases.end(),
                     [](std::string_view a, std::string_view b) {
                       return a.size() > b.size();
                     });
    std::size_t covered_until = 0;
    for (const TextSpan &w : words) {
      if (w.begin < covered_until) continue;
      for (std::string_view phrase : phrases) {
        if (text.compare(w.begin, phrase.size(), phrase) != 0) continue;
        std::size_t end = w.begin + phrase.size();
        if (!word_ends.contains(end)) continue;
        hits.push_back({PatternKind::kAdPhrase, {w.begin, end},
                        std::string(phrase)});
        covered_until = end;
        break;
      }
    }
  }

  std::stable_sort(hits.begin(), hits.end(),
                   [](const PatternHit &a, const PatternHit &b) {
                     if (a.span.begin != b.span.begin) {
                       return a.span.begin < b.span.begin;
                     }
                     return a.kind < b.kind;
                   });
  return hits;
}

}  // namespace revspam
