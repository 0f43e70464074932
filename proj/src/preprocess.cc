#include "revspam/preprocess.h"

#include <algorithm>
#include <array>

#include "revspam/error.h"

namespace revspam {
namespace {

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

struct SuffixRule {
  std::string_view suffix;
  PosTag tag;
};

// Checked in order; the first rule whose suffix leaves a stem of at least
// kMinStem bytes wins.
constexpr std::array<SuffixRule, 12> kSuffixRules{{
    {"ly", PosTag::kAdv},
    {"ous", PosTag::kAdj},
    {"ful", PosTag::kAdj},
    {"ive", PosTag::kAdj},
    {"able", PosTag::kAdj},
    {"ible", PosTag::kAdj},
    {"al", PosTag::kAdj},
    {"ic", PosTag::kAdj},
    {"ing", PosTag::kVerb},
    {"ed", PosTag::kVerb},
    {"ize", PosTag::kVerb},
    {"ise", PosTag::kVerb},
}};
constexpr std::size_t kMinStem = 3;

std::string JoinNorm(const std::vector<Token> &tokens, std::size_t start,
                     std::size_t length) {
  std::string out;
  for (std::size_t i = start; i < start + length; ++i) {
    if (i > start) out += ' ';
    out += tokens[i].surface_norm;
  }
  return out;
}

bool IsCandidateTag(PosTag tag) {
  return tag == PosTag::kNoun || tag == PosTag::kAdj;
}

}  // namespace

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kTruthful: return "truthful";
    case Label::kNonReview: return "non_review";
    case Label::kBrandOnly: return "brand_only";
    case Label::kOffTopic: return "off_topic";
    case Label::kUntruthful: return "untruthful";
  }
  return "";
}

std::optional<Label> ParseLabel(std::string_view name) {
  for (Label l : {Label::kTruthful, Label::kNonReview, Label::kBrandOnly,
                  Label::kOffTopic, Label::kUntruthful}) {
    if (LabelName(l) == name) return l;
  }
  return std::nullopt;
}

Review::Review(std::string category, std::string product_name,
               std::string content, std::optional<Label> label)
    : category_(Normalize(category)),
      product_name_(std::move(product_name)),
      content_(std::move(content)),
      label_(label) {
  if (category_.empty()) {
    throw Error(ErrorCode::kInvalidReview, "category",
                "review category is empty");
  }
  if (SentenceSpans(content_).empty()) {
    throw Error(ErrorCode::kInvalidReview, "content",
                "review content is empty");
  }
}

PosTag TagWord(std::string_view word, const LexiconSet &lex) {
  if (auto it = lex.tags.find(word); it != lex.tags.end()) return it->second;
  for (const SuffixRule &rule : kSuffixRules) {
    if (word.size() >= rule.suffix.size() + kMinStem &&
        EndsWith(word, rule.suffix)) {
      return rule.tag;
    }
  }
  return PosTag::kNoun;
}

std::vector<Token> TagTokens(const std::vector<std::string> &words,
                             const LexiconSet &lex) {
  std::vector<Token> tokens;
  tokens.reserve(words.size());
  for (const std::string &w : words) {
    tokens.push_back({w, Normalize(w), PosTag::kNoun});
    tokens.back().tag = TagWord(tokens.back().surface_norm, lex);
  }
  return tokens;
}

std::optional<std::pair<std::string, EntityMatch>> LookupEntity(
    const Ontology &ontology, std::string_view category,
    std::string_view surface) {
  std::string current(surface);
  auto try_match = [&](const std::string &s)
      -> std::optional<std::pair<std::string, EntityMatch>> {
    EntityMatch m = ontology.Match(category, s);
    if (m.role == EntityRole::kUnknown) return std::nullopt;
    return std::make_pair(s, m);
  };
  if (auto m = try_match(current)) return m;
  for (std::string_view possessive : {"'s", "\xE2\x80\x99s"}) {
    if (EndsWith(current, possessive)) {
      current.resize(current.size() - possessive.size());
      if (auto m = try_match(current)) return m;
      break;
    }
  }
  // Plural: drop one trailing 's' from a word longer than three letters.
  std::size_t last_word = current.rfind(' ');
  last_word = last_word == std::string::npos ? 0 : last_word + 1;
  if (current.size() - last_word > 3 && EndsWith(current, "s") &&
      !EndsWith(current, "ss")) {
    current.pop_back();
    if (auto m = try_match(current)) return m;
  }
  return std::nullopt;
}

void CountNameMentions(const std::vector<Token> &tokens,
                       std::string_view product_name, int *total, int *caps) {
  *total = 0;
  *caps = 0;
  const std::vector<std::string> name = Tokenize(Normalize(product_name));
  if (name.empty()) return;
  std::size_t i = 0;
  while (i + name.size() <= tokens.size()) {
    bool match = true;
    for (std::size_t k = 0; k < name.size() && match; ++k) {
      match = tokens[i + k].surface_norm == name[k];
    }
    if (!match) {
      ++i;
      continue;
    }
    ++*total;
    bool all_caps = true;
    for (std::size_t k = 0; k < name.size(); ++k) {
      all_caps = all_caps && IsAllCaps(tokens[i + k].surface_raw);
    }
    if (all_caps) ++*caps;
    i += name.size();
  }
}

EntityExtraction ExtractEntities(const std::vector<Token> &tokens,
                                 const Ontology &ontology,
                                 std::string_view category,
                                 std::string_view product_name) {
  if (!ontology.HasCategory(category)) {
    throw Error(ErrorCode::kUnknownCategory, std::string(category),
                "no product branch '" + std::string(category) + "'");
  }
  EntityExtraction out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!IsCandidateTag(tokens[i].tag)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < tokens.size() && IsCandidateTag(tokens[run_end].tag)) {
      ++run_end;
    }
    while (i < run_end) {
      std::size_t longest =
          std::min<std::size_t>(kMaxEntityWords, run_end - i);
      bool matched = false;
      for (std::size_t n = longest; n >= 1 && !matched; --n) {
        auto hit = LookupEntity(ontology, category, JoinNorm(tokens, i, n));
        if (!hit) continue;
        EntityMention mention;
        mention.surface_norm = hit->first;
        mention.role = hit->second.role;
        mention.native_role = hit->second.native_role;
        mention.token_span = {i, n};
        mention.is_all_caps = true;
        for (std::size_t k = i; k < i + n; ++k) {
          mention.is_all_caps =
              mention.is_all_caps && IsAllCaps(tokens[k].surface_raw);
        }
        out.mentions.push_back(std::move(mention));
        i += n;
        matched = true;
      }
      if (!matched) {
        out.candidates.push_back(tokens[i].surface_norm);
        ++i;
      }
    }
  }
  CountNameMentions(tokens, product_name, &out.name_mentions,
                    &out.name_mentions_caps);
  return out;
}

PreprocessedReview Preprocess(const Review &review, const Ontology &ontology,
                              const LexiconSet &lex) {
  PreprocessedReview p{review, Normalize(review.content()), {}, {}, {}, {}, 0,
                       0};
  const std::string &content = review.content();

  std::vector<TextSpan> word_spans = WordSpans(content);
  p.tokens.reserve(word_spans.size());
  for (const TextSpan &span : word_spans) {
    Token t;
    t.surface_raw = std::string(span.in(content));
    t.surface_norm = Normalize(t.surface_raw);
    t.tag = TagWord(t.surface_norm, lex);
    p.tokens.push_back(std::move(t));
  }

  // Each token belongs to the sentence that contains its first byte.
  std::vector<TextSpan> sentence_spans = SentenceSpans(content);
  std::size_t w = 0;
  for (const TextSpan &s : sentence_spans) {
    TokenRange range{w, 0};
    while (w < word_spans.size() && word_spans[w].begin < s.end) {
      ++range.length;
      ++w;
    }
    p.sentences.push_back(range);
  }

  EntityExtraction ex = ExtractEntities(p.tokens, ontology, review.category(),
                                        review.product_name());
  p.mentions = std::move(ex.mentions);
  p.candidates = std::move(ex.candidates);
  p.name_mentions = ex.name_mentions;
  p.name_mentions_caps = ex.name_mentions_caps;
  return p;
}

std::set<std::string> EntityList(const PreprocessedReview &p) {
  std::set<std::string> out;
  for (const EntityMention &m : p.mentions) out.insert(m.surface_norm);
  return out;
}

}  // namespace revspam
