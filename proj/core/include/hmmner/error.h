#ifndef HMMNER_ERROR_H_
#define HMMNER_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hmmner {

enum class ErrorCode {
  kMalformedLine,
  kEmptyCorpus,
  kUnbalancedGroup,
  kMissingSentenceDelimiter,
  kMalformedTokenLine,
  kInvalidScheme,
  kOverlappingSpans,
  kSpanOutOfBounds,
  kUntaggedSentence,
  kDegenerateCorpus,
  kUnknownTag,
  kUnknownObservation,
  kNoRareWords,
  kEmptySentence,
  kNoViablePath,
  kCorpusMismatch,
  kModelFormat,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `line` is the
// 1-based input line when the failure is tied to one, otherwise 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace hmmner

#endif  // HMMNER_ERROR_H_
