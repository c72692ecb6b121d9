#pragma once

#include <optional>
#include <string>

#include "docforge/type_expr.hpp"

namespace docforge {

/// Variable bindings produced by unification. Bindings may reference other
/// bound variables until resolve() is applied.
class Substitution {
 public:
  Substitution() = default;

  [[nodiscard]] const VarMap& bindings() const noexcept { return bindings_; }
  [[nodiscard]] std::size_t size() const noexcept { return bindings_.size(); }
  [[nodiscard]] bool empty() const noexcept { return bindings_.empty(); }

  /// Fully applies the bindings; bound variables never survive in the result.
  [[nodiscard]] TypeExpr apply(const TypeExpr& type) const;

  /// Idempotent form: every binding's value is fully applied.
  [[nodiscard]] Substitution resolve() const;

  /// Binds without checks; callers go through unify_into().
  void bind(std::string var, TypeExpr value);

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  const TypeExpr& walk(const TypeExpr& type) const;
  friend bool unify_into(const TypeExpr&, const TypeExpr&, Substitution&);

  VarMap bindings_;
};

/// Extends subst so that lhs and rhs become equal. On failure subst may hold
/// partial bindings and must be discarded.
bool unify_into(const TypeExpr& lhs, const TypeExpr& rhs, Substitution& subst);

/// Most general unifier with occurs check; variables on either side may bind.
/// Named heads and arities must match exactly. Returns nullopt on failure.
std::optional<Substitution> unify(const TypeExpr& lhs, const TypeExpr& rhs);

/// Human-readable "a = List<v0>" lines, sorted by variable.
std::vector<std::string> describe_bindings(const Substitution& subst);

}  // namespace docforge
