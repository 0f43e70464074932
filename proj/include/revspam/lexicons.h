#ifndef REVSPAM_LEXICONS_H_
#define REVSPAM_LEXICONS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "revspam/text.h"

namespace revspam {

// Coarse part-of-speech tags.
enum class PosTag { kNoun, kAdj, kVerb, kAdv, kPron, kDet, kOther };

std::string_view PosTagName(PosTag tag);
std::optional<PosTag> ParsePosTag(std::string_view name);

// Word lists consulted by the tagger and the detectors. All terms are
// normalized; positive and negative are disjoint.
struct LexiconSet {
  std::set<std::string, std::less<>> positive;
  std::set<std::string, std::less<>> negative;
  std::set<std::string, std::less<>> extreme;
  std::set<std::string, std::less<>> ad_phrases;
  // Closed-class tag lexicon (tags.txt); may be empty.
  std::map<std::string, PosTag, std::less<>> tags;

  bool IsPositive(std::string_view w) const { return positive.contains(w); }
  bool IsNegative(std::string_view w) const { return negative.contains(w); }
  bool IsOpinion(std::string_view w) const {
    return IsPositive(w) || IsNegative(w);
  }
  bool IsExtreme(std::string_view w) const { return extreme.contains(w); }
};

// Loads positive.txt, negative.txt, extreme.txt and adphrases.txt (required)
// plus tags.txt (optional) from `dir`.
LexiconSet LoadLexicons(const std::filesystem::path &dir);

enum class PatternKind { kUrl, kEmail, kPhone, kPrice, kAdPhrase };

std::string_view PatternKindName(PatternKind kind);

struct PatternHit {
  PatternKind kind;
  TextSpan span;  // byte offsets into the normalized text
  std::string matched;

  friend bool operator==(const PatternHit &, const PatternHit &) = default;
};

// All non-overlapping hits per kind on normalized text, ordered by span start
// (ties by kind).
std::vector<PatternHit> MatchUnusualPatterns(std::string_view normalized,
                                             const LexiconSet &lex);

}  // namespace revspam

#endif  // REVSPAM_LEXICONS_H_
