#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stylevox {

// Every failure surfaced by the library carries one of these codes.
enum class ErrorCode {
  // MR parsing and validation.
  kUnknownSlot,
  kDuplicateSlot,
  kMalformedBrackets,
  kUnknownPersonality,
  kTooManyStyleTags,
  kDuplicateStyleTag,
  kUnsupportedAct,
  kUnboundPlaceholder,
  // Profiles and lexicons.
  kInvalidProfile,
  kInvalidLexicon,
  kLexiconGap,
  // Realizer.
  kEmptyMr,
  kPlanMrMismatch,
  kInvalidVoices,
  // Statistics and metrics.
  kEmptyCorpus,
  kLengthMismatch,
  kConstantVector,
  kTooFewObservations,
  kDegenerateInput,
  kMrSetMismatch,
  // Ingestion and I/O.
  kFileNotFound,
  kCsvSyntax,
  kMrParse,
  kUnknownMrId,
  kSchemaError,
  kIoError,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stylevox
