#include "docforge/unify.hpp"

namespace docforge {

const TypeExpr& Substitution::walk(const TypeExpr& type) const {
  const TypeExpr* cur = &type;
  while (cur->is_var()) {
    auto it = bindings_.find(cur->name());
    if (it == bindings_.end()) break;
    cur = &it->second;
  }
  return *cur;
}

TypeExpr Substitution::apply(const TypeExpr& type) const {
  const TypeExpr& t = walk(type);
  switch (t.kind()) {
    case TypeExpr::Kind::var:
      return t;
    case TypeExpr::Kind::named: {
      std::vector<TypeExpr> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(apply(a));
      return TypeExpr::named(t.name(), std::move(args));
    }
    case TypeExpr::Kind::fn: {
      std::vector<TypeExpr> params;
      params.reserve(t.params().size());
      for (const auto& p : t.params()) params.push_back(apply(p));
      return TypeExpr::fn(std::move(params), apply(t.ret()));
    }
  }
  return t;
}

Substitution Substitution::resolve() const {
  Substitution out;
  for (const auto& [var, value] : bindings_) out.bindings_.emplace(var, apply(value));
  return out;
}

void Substitution::bind(std::string var, TypeExpr value) {
  bindings_.insert_or_assign(std::move(var), std::move(value));
}

namespace {

bool occurs(const std::string& var, const TypeExpr& type, const Substitution& subst) {
  const TypeExpr resolved = subst.apply(type);
  return occurs_in(var, resolved);
}

}  // namespace

bool unify_into(const TypeExpr& lhs, const TypeExpr& rhs, Substitution& subst) {
  const TypeExpr& a = subst.walk(lhs);
  const TypeExpr& b = subst.walk(rhs);
  if (a.is_var() && b.is_var() && a.name() == b.name()) return true;
  if (a.is_var()) {
    if (occurs(a.name(), b, subst)) return false;
    subst.bind(a.name(), b);
    return true;
  }
  if (b.is_var()) {
    if (occurs(b.name(), a, subst)) return false;
    subst.bind(b.name(), a);
    return true;
  }
  if (a.kind() != b.kind()) return false;
  if (a.is_named() && a.name() != b.name()) return false;
  if (a.children().size() != b.children().size()) return false;
  // Only unbound variables are ever bound, so references into the map stay valid.
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!unify_into(a.children()[i], b.children()[i], subst)) return false;
  }
  return true;
}

std::optional<Substitution> unify(const TypeExpr& lhs, const TypeExpr& rhs) {
  Substitution subst;
  if (!unify_into(lhs, rhs, subst)) return std::nullopt;
  return subst.resolve();
}

std::vector<std::string> describe_bindings(const Substitution& subst) {
  std::vector<std::string> out;
  const auto resolved = subst.resolve();
  for (const auto& [var, value] : resolved.bindings()) out.push_back(var + " = " + render(value));
  return out;
}

}  // namespace docforge
