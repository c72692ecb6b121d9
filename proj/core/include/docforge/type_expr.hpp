#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace docforge {

/// Algebraic type expression: a type variable, a named constructor applied to
/// arguments, or a function shape.
class TypeExpr {
 public:
  enum class Kind : std::uint8_t { var, named, fn };

  TypeExpr() = default;

  static TypeExpr var(std::string name);
  static TypeExpr named(std::string name, std::vector<TypeExpr> args = {});
  static TypeExpr fn(std::vector<TypeExpr> params, TypeExpr ret);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_var() const noexcept { return kind_ == Kind::var; }
  [[nodiscard]] bool is_named() const noexcept { return kind_ == Kind::named; }
  [[nodiscard]] bool is_fn() const noexcept { return kind_ == Kind::fn; }

  /// Variable name or constructor head. Empty for function shapes.
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  /// Constructor arguments (named) or parameters followed by the return
  /// type (fn).
  [[nodiscard]] std::span<const TypeExpr> children() const noexcept { return children_; }
  [[nodiscard]] std::span<const TypeExpr> args() const noexcept;
  [[nodiscard]] std::span<const TypeExpr> params() const noexcept;
  [[nodiscard]] const TypeExpr& ret() const;

  friend bool operator==(const TypeExpr&, const TypeExpr&) = default;

 private:
  Kind kind_ = Kind::named;
  std::string name_;
  std::vector<TypeExpr> children_;
};

/// Renders in the signature notation; arguments are separated by ", ".
/// Function shapes get synthetic parameter names so the text re-parses.
std::string render(const TypeExpr& type);

bool operator<(const TypeExpr& lhs, const TypeExpr& rhs);

using VarMap = std::map<std::string, TypeExpr, std::less<>>;

/// Simultaneous replacement of variables by expressions.
TypeExpr substitute(const TypeExpr& type, const VarMap& replacements);

/// Rewrites every named head through fn; arguments are preserved.
template <typename HeadFn>
TypeExpr map_heads(const TypeExpr& type, HeadFn&& fn);

bool occurs_in(std::string_view var, const TypeExpr& type);
bool mentions_head(const TypeExpr& type, std::string_view head);
void collect_heads(const TypeExpr& type, std::set<std::string>& out);
void collect_vars(const TypeExpr& type, std::vector<std::string>& out_in_order);
std::size_t expr_size(const TypeExpr& type);

struct Param {
  std::string name;
  TypeExpr type;

  friend bool operator==(const Param&, const Param&) = default;
};

/// Parameter list plus return type. Query shapes leave parameter names empty.
struct FunctionShape {
  std::vector<Param> params;
  TypeExpr ret;

  [[nodiscard]] std::size_t arity() const noexcept { return params.size(); }

  friend bool operator==(const FunctionShape&, const FunctionShape&) = default;
};

/// "(name: Type, ...) -> Type"; unnamed parameters render as bare types.
std::string render(const FunctionShape& shape);

template <typename HeadFn>
TypeExpr map_heads(const TypeExpr& type, HeadFn&& fn) {
  switch (type.kind()) {
    case TypeExpr::Kind::var:
      return type;
    case TypeExpr::Kind::named: {
      std::vector<TypeExpr> args;
      args.reserve(type.args().size());
      for (const auto& arg : type.args()) args.push_back(map_heads(arg, fn));
      return TypeExpr::named(fn(type.name()), std::move(args));
    }
    case TypeExpr::Kind::fn: {
      std::vector<TypeExpr> params;
      params.reserve(type.params().size());
      for (const auto& p : type.params()) params.push_back(map_heads(p, fn));
      return TypeExpr::fn(std::move(params), map_heads(type.ret(), fn));
    }
  }
  return type;
}

}  // namespace docforge
