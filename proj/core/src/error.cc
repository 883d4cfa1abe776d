#include "hmmner/error.h"

namespace hmmner {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnbalancedGroup: return "UnbalancedGroup";
    case ErrorCode::kMissingSentenceDelimiter: return "MissingSentenceDelimiter";
    case ErrorCode::kMalformedTokenLine: return "MalformedTokenLine";
    case ErrorCode::kInvalidScheme: return "InvalidScheme";
    case ErrorCode::kOverlappingSpans: return "OverlappingSpans";
    case ErrorCode::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorCode::kUntaggedSentence: return "UntaggedSentence";
    case ErrorCode::kDegenerateCorpus: return "DegenerateCorpus";
    case ErrorCode::kUnknownTag: return "UnknownTag";
    case ErrorCode::kUnknownObservation: return "UnknownObservation";
    case ErrorCode::kNoRareWords: return "NoRareWords";
    case ErrorCode::kEmptySentence: return "EmptySentence";
    case ErrorCode::kNoViablePath: return "NoViablePath";
    case ErrorCode::kCorpusMismatch: return "CorpusMismatch";
    case ErrorCode::kModelFormat: return "ModelFormat";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string Decorate(ErrorCode code, const std::string& message,
                     std::size_t line) {
  std::string out(ErrorCodeName(code));
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(Decorate(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace hmmner
