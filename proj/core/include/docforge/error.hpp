#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace docforge {

enum class ErrorKind {
  malformed_document,
  unknown_version,
  signature_parse,
  validation_failure,
  parse,
  ambiguous_name,
  unknown_filter_name,
  unknown_subject,
  io_failure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base for every failure the library reports. The kind is stable and maps
/// onto the error identifiers used in diagnostics (e.g. "unknown-version").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Grammar failure; offset is the 0-based character position of the first
/// invalid token.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message);

  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

}  // namespace docforge
