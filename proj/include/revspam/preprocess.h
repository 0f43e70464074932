#ifndef REVSPAM_PREPROCESS_H_
#define REVSPAM_PREPROCESS_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "revspam/lexicons.h"
#include "revspam/ontology.h"
#include "revspam/text.h"

namespace revspam {

enum class Label { kTruthful, kNonReview, kBrandOnly, kOffTopic, kUntruthful };

inline constexpr Label kSpamLabels[] = {Label::kNonReview, Label::kBrandOnly,
                                        Label::kOffTopic, Label::kUntruthful};

std::string_view LabelName(Label label);
std::optional<Label> ParseLabel(std::string_view name);
inline bool IsSpam(Label label) { return label != Label::kTruthful; }

// A raw review record. Construction rejects an empty category or content.
class Review {
 public:
  Review(std::string category, std::string product_name, std::string content,
         std::optional<Label> label = std::nullopt);

  const std::string &category() const { return category_; }
  const std::string &product_name() const { return product_name_; }
  const std::string &content() const { return content_; }
  const std::optional<Label> &label() const { return label_; }

  friend bool operator==(const Review &, const Review &) = default;

 private:
  std::string category_;  // normalized
  std::string product_name_;
  std::string content_;
  std::optional<Label> label_;
};

struct Token {
  std::string surface_raw;
  std::string surface_norm;
  PosTag tag = PosTag::kNoun;

  friend bool operator==(const Token &, const Token &) = default;
};

struct TokenRange {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const TokenRange &, const TokenRange &) = default;
};

struct EntityMention {
  std::string surface_norm;  // the ontology surface that matched
  EntityRole role = EntityRole::kUnknown;
  EntityRole native_role = EntityRole::kUnknown;
  TokenRange token_span;
  bool is_all_caps = false;

  friend bool operator==(const EntityMention &, const EntityMention &) =
      default;
};

struct EntityExtraction {
  std::vector<EntityMention> mentions;
  // Noun/adjective words that matched nothing in the ontology.
  std::vector<std::string> candidates;
  int name_mentions = 0;
  int name_mentions_caps = 0;
};

struct PreprocessedReview {
  Review review;
  std::string normalized;  // Normalize(review.content())
  std::vector<Token> tokens;
  std::vector<TokenRange> sentences;
  std::vector<EntityMention> mentions;
  std::vector<std::string> candidates;
  int name_mentions = 0;
  int name_mentions_caps = 0;

  friend bool operator==(const PreprocessedReview &,
                         const PreprocessedReview &) = default;
};

// Candidate n-grams are capped at this many words.
inline constexpr int kMaxEntityWords = 3;

// Lexicon lookup, then suffix heuristics, then NOUN.
PosTag TagWord(std::string_view word, const LexiconSet &lex);
std::vector<Token> TagTokens(const std::vector<std::string> &words,
                            const LexiconSet &lex);

// Looks a normalized surface up in the ontology, retrying without a trailing
// possessive and then without a plural 's'. Returns the matched surface.
std::optional<std::pair<std::string, EntityMatch>> LookupEntity(
    const Ontology &ontology, std::string_view category,
    std::string_view surface);

// Longest-match-first gazetteer pass over runs of NOUN/ADJ tokens plus
// product-name counting. Throws UnknownCategory.
EntityExtraction ExtractEntities(const std::vector<Token> &tokens,
                                 const Ontology &ontology,
                                 std::string_view category,
                                 std::string_view product_name);

// Occurrences of the normalized product name as a token phrase, scanning left
// to right without overlap; `caps` counts those whose raw words are all caps.
void CountNameMentions(const std::vector<Token> &tokens,
                       std::string_view product_name, int *total, int *caps);

PreprocessedReview Preprocess(const Review &review, const Ontology &ontology,
                              const LexiconSet &lex);

// Distinct matched entity surfaces, sorted.
std::set<std::string> EntityList(const PreprocessedReview &p);

}  // namespace revspam

#endif  // REVSPAM_PREPROCESS_H_
