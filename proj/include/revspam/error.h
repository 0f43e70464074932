#ifndef REVSPAM_ERROR_H_
#define REVSPAM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace revspam {

enum class ErrorCode {
  kMissingFile,
  kSyntaxError,
  kUnknownParent,
  kUnknownClass,
  kCycleDetected,
  kDuplicateEntity,
  kInvalidOntology,
  kUnknownCategory,
  kEmptyLexicon,
  kOverlapError,
  kInvalidReview,
  kInvalidThresholds,
  kEmptyCorpus,
  kUnlabeledReview,
  kEmptyGrid,
  kLengthMismatch,
  kEmptyInput,
  kMalformedRecord,
};

// Stable machine-readable name, e.g. "CycleDetected".
std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error. `subject` carries the offending
// identifier, term or file name; `line` is 1-based when the error comes from a
// line-oriented file and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, std::string message, int line = 0);

  ErrorCode code() const { return code_; }
  const std::string &subject() const { return subject_; }
  int line() const { return line_; }

 private:
  ErrorCode code_;
  std::string subject_;
  int line_;
};

}  // namespace revspam

#endif  // REVSPAM_ERROR_H_
