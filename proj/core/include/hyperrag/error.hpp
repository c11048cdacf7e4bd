#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperrag {

enum class ErrorCode {
  kIoFailure,
  kMalformedRecord,
  kMissingField,
  kDuplicateId,
  kEmptyText,
  kUnknownDocId,
  kUnknownDimension,
  kNonPositiveCount,
  kFormatVersionMismatch,
  kChecksumMismatch,
  kUnencodableText,
  kDimMismatch,
  kMissingKey,
  kMissingGold,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Data-level failure raised by every loader and engine operation.
///
/// `subject()` names the offending entity: a document id, a line number,
/// a dimension name or a key, depending on the code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

}  // namespace hyperrag
