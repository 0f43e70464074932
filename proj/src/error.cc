#include "revspam/error.h"

#include <utility>

namespace revspam {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownParent: return "UnknownParent";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kDuplicateEntity: return "DuplicateEntity";
    case ErrorCode::kInvalidOntology: return "InvalidOntology";
    case ErrorCode::kUnknownCategory: return "UnknownCategory";
    case ErrorCode::kEmptyLexicon: return "EmptyLexicon";
    case ErrorCode::kOverlapError: return "OverlapError";
    case ErrorCode::kInvalidReview: return "InvalidReview";
    case ErrorCode::kInvalidThresholds: return "InvalidThresholds";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnlabeledReview: return "UnlabeledReview";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
  }
  return "Unknown";
}

static std::string Describe(ErrorCode code, const std::string &message,
                            int line) {
  std::string out(ErrorCodeName(code));
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": " + message;
  return out;
}

Error::Error(ErrorCode code, std::string subject, std::string message, int line)
    : std::runtime_error(Describe(code, message, line)),
      code_(code),
      subject_(std::move(subject)),
      line_(line) {}

}  // namespace revspam
