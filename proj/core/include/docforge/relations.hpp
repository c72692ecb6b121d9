#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "docforge/api_model.hpp"

namespace docforge {

enum class RelationKind { inputs, outputs, contains, inherits, implements };

std::string_view to_string(RelationKind kind) noexcept;
std::optional<RelationKind> parse_relation_kind(std::string_view text) noexcept;

struct ContainsEntry {
  std::string container;  // qualified name of the containing type
  std::string field;

  friend auto operator<=>(const ContainsEntry&, const ContainsEntry&) = default;
};

/// Declared parents of a type or interface (inherits, implements and extends
/// clauses), written against its own type parameters.
struct ParentEdges {
  std::vector<std::string> type_params;
  std::vector<TypeExpr> parents;
};

/// Relation maps keyed by simple type name. All lists are sorted and
/// duplicate-free. Function lists hold qualified names and are computed over
/// desugared shapes, so a receiver counts as an input.
struct RelationIndex {
  std::map<std::string, std::vector<std::string>, std::less<>> inputs;
  std::map<std::string, std::vector<std::string>, std::less<>> outputs;
  std::map<std::string, std::vector<ContainsEntry>, std::less<>> contains;
  /// Type -> direct class supertypes (names).
  std::map<std::string, std::vector<std::string>, std::less<>> inherits_up;
  /// Type or interface -> qualified names of direct subtypes/sub-interfaces.
  std::map<std::string, std::vector<std::string>, std::less<>> inherited_by;
  /// Interface -> qualified names of types that directly implement it.
  std::map<std::string, std::vector<std::string>, std::less<>> implements;
  /// Minimal hop count over inherits, implements and extends edges.
  std::map<std::pair<std::string, std::string>, int> subtype_reach;
  std::map<std::string, ParentEdges, std::less<>> parents;
  /// Simple type/interface name -> qualified name.
  std::map<std::string, std::string, std::less<>> qualified;
};

RelationIndex build_relation_index(const ApiGraph& graph);

/// Exact lookup; unknown names yield an empty list. Contains results are
/// rendered "container::field".
std::vector<std::string> relation_query(const RelationIndex& index, RelationKind kind,
                                        std::string_view name);

std::optional<int> subtype_distance(const RelationIndex& index, std::string_view sub,
                                    std::string_view super);

struct TreeNode {
  std::string name;
  std::string qualified_name;
  /// Set on every occurrence after the first; such nodes are not expanded.
  bool repeated = false;
  std::vector<TreeNode> children;
};

/// Class inheritance forest (inherits edges only). Roots are types without
/// supertypes; a type appears once under each direct supertype and its
/// subtree is expanded at its first occurrence in depth-first order.
std::vector<TreeNode> inheritance_tree(const RelationIndex& index, const ApiGraph& graph);

}  // namespace docforge
