#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/type_expr.hpp"

namespace docforge {

/// Module path segments, e.g. {"collections", "inner"}.
using ModulePath = std::vector<std::string>;

std::string join_path(const ModulePath& path, std::string_view sep = "::");

enum class TypeKind { struct_, enum_, class_ };
enum class Receiver { none, readonly, mutating, consuming, static_ };
enum class Visibility { public_, private_ };

std::string_view to_string(TypeKind kind) noexcept;
std::string_view to_string(Receiver receiver) noexcept;
std::string_view to_string(Visibility visibility) noexcept;
std::optional<TypeKind> parse_type_kind(std::string_view text) noexcept;
std::optional<Receiver> parse_receiver(std::string_view text) noexcept;
std::optional<Visibility> parse_visibility(std::string_view text) noexcept;

/// Short marker used in compact signatures: ro / mut / own / static.
std::string_view receiver_marker(Receiver receiver) noexcept;

/// Receivers that fold into a leading parameter.
constexpr bool takes_self(Receiver r) noexcept {
  return r == Receiver::readonly || r == Receiver::mutating || r == Receiver::consuming;
}

struct ModuleDef {
  ModulePath path;
  std::optional<std::string> doc;

  friend bool operator==(const ModuleDef&, const ModuleDef&) = default;
};

struct FieldDef {
  std::string name;
  TypeExpr type;

  friend bool operator==(const FieldDef&, const FieldDef&) = default;
};

struct TypeDef {
  std::string name;
  ModulePath module;
  TypeKind kind = TypeKind::class_;
  std::vector<std::string> type_params;
  std::vector<FieldDef> fields;
  /// Inherited classes, written against this type's own parameters.
  std::vector<TypeExpr> supertypes;
  std::vector<TypeExpr> implements;
  std::optional<std::string> doc;

  friend bool operator==(const TypeDef&, const TypeDef&) = default;
};

struct FunctionDef {
  std::string name;
  ModulePath module;
  std::optional<std::string> owner;
  Receiver receiver = Receiver::none;
  std::vector<Param> params;
  TypeExpr ret;
  std::vector<std::string> type_params;
  Visibility visibility = Visibility::public_;
  std::optional<std::string> doc;
  /// Derived from doc lines beginning "@group ".
  std::vector<std::string> groups;

  [[nodiscard]] bool is_public() const noexcept { return visibility == Visibility::public_; }

  friend bool operator==(const FunctionDef&, const FunctionDef&) = default;
};

struct InterfaceDef {
  std::string name;
  ModulePath module;
  std::vector<std::string> type_params;
  std::vector<TypeExpr> extends;
  std::vector<FunctionDef> method_shapes;
  std::optional<std::string> doc;

  friend bool operator==(const InterfaceDef&, const InterfaceDef&) = default;
};

inline const std::vector<std::string>& default_primitives() {
  static const std::vector<std::string> names{"Bool", "Int", "String", "Unit"};
  return names;
}

/// Built-in function-type constructors and their arities.
inline const std::map<std::string, std::size_t, std::less<>>& builtin_constructors() {
  static const std::map<std::string, std::size_t, std::less<>> ctors{{"Fn1", 2}, {"Fn2", 3}};
  return ctors;
}

struct ApiGraph {
  std::vector<ModuleDef> modules;
  std::vector<TypeDef> types;
  std::vector<FunctionDef> functions;
  std::vector<InterfaceDef> interfaces;
  /// Query-side alias -> canonical type name. The key "[]" selects the list
  /// constructor for "[t]" sugar.
  std::map<std::string, std::string> aliases;
  std::vector<std::string> primitives = default_primitives();

  const TypeDef* find_type(std::string_view name) const;
  const InterfaceDef* find_interface(std::string_view name) const;

  friend bool operator==(const ApiGraph&, const ApiGraph&) = default;
};

/// Key under which the list constructor is configured in the alias map.
inline constexpr std::string_view kListAliasKey = "[]";

std::string list_constructor(const ApiGraph& graph);

/// Parses "@group " lines out of doc text, one group per line, in order.
std::vector<std::string> extract_groups(const std::optional<std::string>& doc);

/// Doc text with "@group " lines removed.
std::string doc_body(const std::optional<std::string>& doc);

/// First non-empty line of the doc body, trimmed.
std::string doc_summary(const std::optional<std::string>& doc);

std::string qualified_name(const ModuleDef& module);
std::string qualified_name(const TypeDef& type);
std::string qualified_name(const InterfaceDef& iface);
std::string qualified_name(const FunctionDef& fn);

/// Free functions and methods declared on types, plus interface method shapes.
std::vector<const FunctionDef*> all_functions(const ApiGraph& graph);

enum class EntityKind { module, type, interface, function };

std::string_view to_string(EntityKind kind) noexcept;

/// Non-owning view of one entity of a graph.
struct EntityRef {
  EntityKind kind = EntityKind::module;
  std::string qualified_name;
  const ModuleDef* module = nullptr;
  const TypeDef* type = nullptr;
  const InterfaceDef* interface = nullptr;
  const FunctionDef* function = nullptr;

  [[nodiscard]] std::string name() const;
  [[nodiscard]] const std::optional<std::string>& doc() const;
  [[nodiscard]] bool is_public() const noexcept {
    return function == nullptr || function->is_public();
  }
};

/// Every entity (modules, types, interfaces, functions and interface
/// methods), sorted by qualified name.
std::vector<EntityRef> list_entities(const ApiGraph& graph);

/// Views a method as a free function: readonly/mutating/consuming receivers
/// prepend the owner applied to its own type parameters.
FunctionShape desugar_method(const FunctionDef& fn, const ApiGraph& graph);

/// Sorting every entity list by qualified name; used for set-equality checks.
ApiGraph canonical_order(ApiGraph graph);
bool same_entities(const ApiGraph& lhs, const ApiGraph& rhs);

struct Violation {
  std::string entity;
  std::string rule;
  std::string message;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

/// Checks every graph invariant. Violations are sorted by entity, then rule.
ValidationReport validate_graph(const ApiGraph& graph);

std::string format_report(const ValidationReport& report);

}  // namespace docforge
