#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/api_model.hpp"

namespace docforge {

enum class Grouping { first_arg, receiver, return_type, annotation };

std::string_view to_string(Grouping grouping) noexcept;
std::optional<Grouping> parse_grouping(std::string_view text) noexcept;

inline constexpr std::string_view kNoArgumentLabel = "(none)";
inline constexpr std::string_view kUngroupedLabel = "ungrouped";
inline constexpr std::size_t kDefaultMatrixWidth = 100;

struct MethodCell {
  std::string name;
  /// e.g. "(ro) (pred: Fn1<T, Bool>) -> Int"
  std::string signature;
  std::string target;  // qualified name

  friend auto operator<=>(const MethodCell&, const MethodCell&) = default;
};

struct MatrixRow {
  std::string label;
  std::vector<MethodCell> cells;

  friend bool operator==(const MatrixRow&, const MatrixRow&) = default;
};

struct MethodMatrix {
  std::string subject;
  Grouping grouping = Grouping::first_arg;
  std::vector<MatrixRow> rows;

  friend bool operator==(const MethodMatrix&, const MethodMatrix&) = default;
};

/// Signature in the grammar notation, prefixed with "(ro) ", "(mut) ",
/// "(own) " or "(static) " for methods; free functions carry no marker.
std::string compact_signature(const FunctionDef& fn);

/// Removes a leading receiver marker, if any.
std::string_view strip_receiver_marker(std::string_view signature) noexcept;

/// Groups the public methods of a type. Rows are sorted by label with
/// "ungrouped" last; cells by method name. Throws unknown-subject when the
/// subject is not a declared type.
MethodMatrix build_method_matrix(const ApiGraph& graph, std::string_view subject,
                                 Grouping grouping, bool include_private = false);

/// One line per row label followed by cells laid out in equal-width columns,
/// wrapping at width. Cells are never truncated.
std::string render_matrix_text(const MethodMatrix& matrix, std::size_t width = kDefaultMatrixWidth);

/// "name  signature" as shown in a cell.
std::string cell_text(const MethodCell& cell);

}  // namespace docforge
