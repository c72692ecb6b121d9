#include "docforge/error.hpp"

namespace docforge {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::malformed_document: return "malformed-document";
    case ErrorKind::unknown_version: return "unknown-version";
    case ErrorKind::signature_parse: return "signature-parse-error";
    case ErrorKind::validation_failure: return "validation-failure";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::ambiguous_name: return "ambiguous-name";
    case ErrorKind::unknown_filter_name: return "unknown-filter-name";
    case ErrorKind::unknown_subject: return "unknown-subject";
    case ErrorKind::io_failure: return "io-failure";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error(ErrorKind::parse,
            "parse-error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      detail_(message) {}

}  // namespace docforge
