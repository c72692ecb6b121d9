#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "docforge/api_model.hpp"
#include "docforge/error.hpp"

namespace docforge {

inline constexpr int kFormatVersion = 1;

/// Failure while reading an interchange document. Depending on kind():
///  - malformed_document: not JSON, or a field has the wrong shape
///  - unknown_version: format_version is not 1
///  - signature_parse: entity() and offset() locate the bad signature text
///  - validation_failure: report() lists every violated invariant
class DocumentError : public Error {
 public:
  DocumentError(ErrorKind kind, const std::string& message, std::string entity = {},
                std::optional<std::size_t> offset = std::nullopt, ValidationReport report = {});

  [[nodiscard]] const std::string& entity() const noexcept { return entity_; }
  [[nodiscard]] std::optional<std::size_t> offset() const noexcept { return offset_; }
  [[nodiscard]] const ValidationReport& report() const noexcept { return report_; }

 private:
  std::string entity_;
  std::optional<std::size_t> offset_;
  ValidationReport report_;
};

/// Decodes and validates an interchange document.
ApiGraph load_api_document(std::string_view bytes);

/// Reads a file and forwards to load_api_document. I/O failures are reported
/// as io_failure.
ApiGraph load_api_file(const std::string& path);

/// Canonical serialization: entities sorted by qualified name, keys sorted,
/// 2-space indentation, LF line endings, trailing newline.
std::string emit_api_document(const ApiGraph& graph);

}  // namespace docforge
