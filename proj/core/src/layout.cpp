#include "docforge/layout.hpp"

#include <algorithm>
#include <map>

#include "docforge/error.hpp"

namespace docforge {

std::string_view to_string(Grouping grouping) noexcept {
  switch (grouping) {
    case Grouping::first_arg: return "first-arg";
    case Grouping::receiver: return "receiver";
    case Grouping::return_type: return "return";
    case Grouping::annotation: return "annotation";
  }
  return "first-arg";
}

std::optional<Grouping> parse_grouping(std::string_view text) noexcept {
  for (auto g : {Grouping::first_arg, Grouping::receiver, Grouping::return_type,
                 Grouping::annotation}) {
    if (to_string(g) == text) return g;
  }
  return std::nullopt;
}

std::string compact_signature(const FunctionDef& fn) {
  std::string out;
  if (fn.receiver != Receiver::none) {
    out += "(";
    out += receiver_marker(fn.receiver);
    out += ") ";
  }
  out += render(FunctionShape{fn.params, fn.ret});
  return out;
}

std::string_view strip_receiver_marker(std::string_view signature) noexcept {
  for (auto r : {Receiver::readonly, Receiver::mutating, Receiver::consuming, Receiver::static_}) {
    const std::string marker = "(" + std::string(receiver_marker(r)) + ") ";
    if (signature.substr(0, marker.size()) == marker) return signature.substr(marker.size());
  }
  return signature;
}

MethodMatrix build_method_matrix(const ApiGraph& graph, std::string_view subject,
                                 Grouping grouping, bool include_private) {
  if (graph.find_type(subject) == nullptr) {
    throw Error(ErrorKind::unknown_subject,
                "unknown-subject: '" + std::string(subject) + "' is not a declared type");
  }
  std::map<std::string, std::vector<MethodCell>> groups;
  std::vector<MethodCell> ungrouped;
  for (const auto& f : graph.functions) {
    if (!f.owner || *f.owner != subject) continue;
    if (!f.is_public() && !include_private) continue;
    MethodCell cell{f.name, compact_signature(f), qualified_name(f)};
    switch (grouping) {
      case Grouping::first_arg:
        groups[f.params.empty() ? std::string(kNoArgumentLabel) : render(f.params.front().type)]
            .push_back(std::move(cell));
        break;
      case Grouping::receiver:
        groups[std::string(to_string(f.receiver))].push_back(std::move(cell));
        break;
      case Grouping::return_type:
        groups[render(f.ret)].push_back(std::move(cell));
        break;
      case Grouping::annotation:
        if (f.groups.empty()) {
          ungrouped.push_back(std::move(cell));
        } else {
          std::vector<std::string> tags = f.groups;
          std::sort(tags.begin(), tags.end());
          tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
          for (const auto& tag : tags) groups[tag].push_back(cell);
        }
        break;
    }
  }
  MethodMatrix matrix{std::string(subject), grouping, {}};
  auto by_name = [](const MethodCell& a, const MethodCell& b) {
    return a.name != b.name ? a.name < b.name : a.target < b.target;
  };
  for (auto& [label, cells] : groups) {
    std::sort(cells.begin(), cells.end(), by_name);
    matrix.rows.push_back({label, std::move(cells)});
  }
  if (!ungrouped.empty()) {
    std::sort(ungrouped.begin(), ungrouped.end(), by_name);
    matrix.rows.push_back({std::string(kUngroupedLabel), std::move(ungrouped)});
  }
  return matrix;
}

std::string cell_text(const MethodCell& cell) { return cell.name + "  " + cell.signature; }

std::string render_matrix_text(const MethodMatrix& matrix, std::size_t width) {
  constexpr std::size_t kIndent = 2;
  constexpr std::size_t kGap = 3;
  std::size_t column = 0;
  for (const auto& row : matrix.rows) {
    for (const auto& cell : row.cells) column = std::max(column, cell_text(cell).size());
  }
  const std::size_t usable = width > kIndent ? width - kIndent : 0;
  const std::size_t per_line =
      std::max<std::size_t>(1, (usable + kGap) / (column + kGap));

  std::string out;
  for (const auto& row : matrix.rows) {
    out += row.label;
    out += '\n';
    for (std::size_t i = 0; i < row.cells.size(); i += per_line) {
      std::string line(kIndent, ' ');
      const std::size_t end = std::min(row.cells.size(), i + per_line);
      for (std::size_t k = i; k < end; ++k) {
        std::string text = cell_text(row.cells[k]);
        if (k + 1 < end) text.resize(column + kGap, ' ');
        line += text;
      }
      out += line;
      out += '\n';
    }
  }
  return out;
}

}  // namespace docforge
