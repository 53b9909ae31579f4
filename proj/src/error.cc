#include "stylevox/error.h"

namespace stylevox {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSlot: return "UnknownSlot";
    case ErrorCode::kDuplicateSlot: return "DuplicateSlot";
    case ErrorCode::kMalformedBrackets: return "MalformedBrackets";
    case ErrorCode::kUnknownPersonality: return "UnknownPersonality";
    case ErrorCode::kTooManyStyleTags: return "TooManyStyleTags";
    case ErrorCode::kDuplicateStyleTag: return "DuplicateStyleTag";
    case ErrorCode::kUnsupportedAct: return "UnsupportedAct";
    case ErrorCode::kUnboundPlaceholder: return "UnboundPlaceholder";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kInvalidLexicon: return "InvalidLexicon";
    case ErrorCode::kLexiconGap: return "LexiconGap";
    case ErrorCode::kEmptyMr: return "EmptyMr";
    case ErrorCode::kPlanMrMismatch: return "PlanMrMismatch";
    case ErrorCode::kInvalidVoices: return "InvalidVoices";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kConstantVector: return "ConstantVector";
    case ErrorCode::kTooFewObservations: return "TooFewObservations";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kMrSetMismatch: return "MrSetMismatch";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kCsvSyntax: return "CsvSyntax";
    case ErrorCode::kMrParse: return "MrParse";
    case ErrorCode::kUnknownMrId: return "UnknownMrId";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace stylevox
