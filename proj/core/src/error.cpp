#include "hyperrag/error.hpp"

namespace hyperrag {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kUnknownDocId: return "UnknownDocId";
    case ErrorCode::kUnknownDimension: return "UnknownDimension";
    case ErrorCode::kNonPositiveCount: return "NonPositiveCount";
    case ErrorCode::kFormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kUnencodableText: return "UnencodableText";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kMissingKey: return "MissingKey";
    case ErrorCode::kMissingGold: return "MissingGold";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& subject, const std::string& detail) {
  std::string msg(to_string(code));
  msg += '(';
  msg += subject;
  msg += ')';
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string subject, const std::string& detail)
    : std::runtime_error(compose(code, subject, detail)), code_(code), subject_(std::move(subject)) {}

}  // namespace hyperrag
