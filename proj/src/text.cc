#include "revspam/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace revspam {
namespace {

struct CodePoint {
  UChar32 value;
  std::size_t begin;
  std::size_t end;
};

// Decodes the code point at `pos`; invalid bytes come back as U_SENTINEL.
CodePoint DecodeAt(std::string_view text, std::size_t pos) {
  int32_t i = static_cast<int32_t>(pos);
  const int32_t length = static_cast<int32_t>(text.size());
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t *>(text.data()), i, length, c);
  return {c, pos, static_cast<std::size_t>(i)};
}

bool IsSpace(UChar32 c) { return c >= 0 && u_isUWhiteSpace(c); }
bool IsControl(UChar32 c) { return c >= 0 && u_iscntrl(c) && !IsSpace(c); }
bool IsWordChar(UChar32 c) { return c >= 0 && u_isalnum(c); }
bool IsApostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }

icu::UnicodeString Nfc(const icu::UnicodeString &in) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return in;
  icu::UnicodeString out = nfc->normalize(in, status);
  return U_FAILURE(status) ? in : out;
}

}  // namespace

std::string Normalize(std::string_view text) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u = Nfc(u);
  u.foldCase(U_FOLD_CASE_DEFAULT);
  u = Nfc(u);

  icu::UnicodeString cleaned;
  bool pending_space = false;
  for (int32_t i = 0; i < u.length();) {
    UChar32 c = u.char32At(i);
    i += U16_LENGTH(c);
    // fromUTF8 maps malformed input to U+FFFD.
    if (c == 0xFFFD) continue;
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (IsControl(c) || u_charType(c) == U_FORMAT_CHAR) continue;
    if (pending_space && !cleaned.isEmpty()) cleaned.append(UChar32{0x20});
    pending_space = false;
    cleaned.append(c);
  }
  std::string out;
  cleaned.toUTF8String(out);
  return out;
}

std::vector<TextSpan> WordSpans(std::string_view text) {
  std::vector<TextSpan> spans;
  std::size_t pos = 0;
  while (pos < text.size()) {
    CodePoint cp = DecodeAt(text, pos);
    if (!IsWordChar(cp.value)) {
      pos = cp.end;
      continue;
    }
    TextSpan span{cp.begin, cp.end};
    pos = cp.end;
    while (pos < text.size()) {
      CodePoint next = DecodeAt(text, pos);
      if (IsWordChar(next.value)) {
        span.end = next.end;
        pos = next.end;
        continue;
      }
      if (IsControl(next.value) || IsApostrophe(next.value)) {
        // Keep going only if a word character follows, possibly after more
        // transparent control characters.
        std::size_t look = next.end;
        bool apostrophe_seen = IsApostrophe(next.value);
        bool joined = false;
        while (look < text.size()) {
          CodePoint ahead = DecodeAt(text, look);
          if (IsWordChar(ahead.value)) {
            joined = true;
            break;
          }
          if (IsControl(ahead.value)) {
            look = ahead.end;
            continue;
          }
          if (IsApostrophe(ahead.value) && !apostrophe_seen) {
            apostrophe_seen = true;
            look = ahead.end;
            continue;
          }
          break;
        }
        if (joined) {
          pos = look;
          continue;
        }
      }
      break;
    }
    spans.push_back(span);
  }
  return spans;
}

std::vector<std::string> Tokenize(std::string_view normalized) {
  std::vector<std::string> words;
  for (const TextSpan &span : WordSpans(normalized)) {
    words.emplace_back(span.in(normalized));
  }
  return words;
}

std::vector<TextSpan> SentenceSpans(std::string_view text) {
  std::vector<TextSpan> sentences;
  auto flush = [&](std::size_t begin, std::size_t end) {
    while (begin < end) {
      CodePoint cp = DecodeAt(text, begin);
      if (!IsSpace(cp.value)) break;
      begin = cp.end;
    }
    // Trim trailing whitespace; all whitespace we care about is ASCII or
    // multi-byte separators, so walk forward and remember the last non-space.
    std::size_t last = begin;
    for (std::size_t p = begin; p < end;) {
      CodePoint cp = DecodeAt(text, p);
      if (!IsSpace(cp.value)) last = cp.end;
      p = cp.end;
    }
    if (last > begin) sentences.push_back({begin, last});
  };

  std::size_t start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char ch = text[pos];
    if (ch == '.' || ch == '!' || ch == '?') {
      std::size_t run_end = pos;
      while (run_end < text.size() &&
             (text[run_end] == '.' || text[run_end] == '!' ||
              text[run_end] == '?')) {
        ++run_end;
      }
      bool boundary = run_end == text.size() ||
                      IsSpace(DecodeAt(text, run_end).value);
      if (boundary) {
        flush(start, run_end);
        start = run_end;
      }
      pos = run_end;
      continue;
    }
    pos = DecodeAt(text, pos).end;
  }
  flush(start, text.size());
  return sentences;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> out;
  for (const TextSpan &span : SentenceSpans(text)) {
    out.emplace_back(span.in(text));
  }
  return out;
}

bool IsAllCaps(std::string_view raw) {
  bool has_letter = false;
  for (std::size_t pos = 0; pos < raw.size();) {
    CodePoint cp = DecodeAt(raw, pos);
    pos = cp.end;
    if (cp.value < 0 || !u_isalpha(cp.value)) continue;
    has_letter = true;
    if (u_hasBinaryProperty(cp.value, UCHAR_LOWERCASE)) return false;
  }
  return has_letter;
}

}  // namespace revspam
