#ifndef REVSPAM_TEXT_H_
#define REVSPAM_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace revspam {

// Half-open byte range [begin, end) into some UTF-8 buffer.
struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  std::string_view in(std::string_view text) const {
    return text.substr(begin, end - begin);
  }
  friend bool operator==(const TextSpan &, const TextSpan &) = default;
};

// NFC, full case folding, control characters dropped, whitespace runs
// collapsed to one ASCII space, trimmed. Invalid UTF-8 sequences are dropped.
std::string Normalize(std::string_view text);

// Word spans: maximal runs of letters/digits. An apostrophe (' or U+2019)
// between two alphanumerics stays inside the word. Non-whitespace control
// characters are transparent so that Normalize(slice) equals the normalized
// word.
std::vector<TextSpan> WordSpans(std::string_view text);

// Word surfaces of already-normalized text.
std::vector<std::string> Tokenize(std::string_view normalized);

// Splits after a run of '.', '!' or '?' that is followed by whitespace or the
// end of input. Returned spans are trimmed and never empty; any text with a
// non-whitespace character yields at least one sentence.
std::vector<TextSpan> SentenceSpans(std::string_view text);
std::vector<std::string> SplitSentences(std::string_view text);

// True when the slice has at least one letter and no lowercase letter.
bool IsAllCaps(std::string_view raw);

}  // namespace revspam

#endif  // REVSPAM_TEXT_H_
