#include "docforge/type_expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace docforge {

TypeExpr TypeExpr::var(std::string name) {
  TypeExpr t;
  t.kind_ = Kind::var;
  t.name_ = std::move(name);
  return t;
}

TypeExpr TypeExpr::named(std::string name, std::vector<TypeExpr> args) {
  TypeExpr t;
  t.kind_ = Kind::named;
  t.name_ = std::move(name);
  t.children_ = std::move(args);
  return t;
}

TypeExpr TypeExpr::fn(std::vector<TypeExpr> params, TypeExpr ret) {
  TypeExpr t;
  t.kind_ = Kind::fn;
  t.children_ = std::move(params);
  t.children_.push_back(std::move(ret));
  return t;
}

std::span<const TypeExpr> TypeExpr::args() const noexcept {
  if (kind_ != Kind::named) return {};
  return children_;
}

std::span<const TypeExpr> TypeExpr::params() const noexcept {
  if (kind_ != Kind::fn || children_.empty()) return {};
  return std::span<const TypeExpr>(children_).first(children_.size() - 1);
}

const TypeExpr& TypeExpr::ret() const {
  if (kind_ != Kind::fn || children_.empty()) {
    throw std::logic_error("TypeExpr::ret() on a non-function type");
  }
  return children_.back();
}

namespace {

void render_to(const TypeExpr& type, std::string& out) {
  switch (type.kind()) {
    case TypeExpr::Kind::var:
      out += type.name();
      return;
    case TypeExpr::Kind::named:
      out += type.name();
      if (!type.args().empty()) {
        out += '<';
        bool first = true;
        for (const auto& arg : type.args()) {
          if (!first) out += ", ";
          first = false;
          render_to(arg, out);
        }
        out += '>';
      }
      return;
    case TypeExpr::Kind::fn: {
      out += '(';
      std::size_t i = 0;
      for (const auto& p : type.params()) {
        if (i != 0) out += ", ";
        out += "arg" + std::to_string(i) + ": ";
        render_to(p, out);
        ++i;
      }
      out += ") -> ";
      render_to(type.ret(), out);
      return;
    }
  }
}

}  // namespace

std::string render(const TypeExpr& type) {
  std::string out;
  render_to(type, out);
  return out;
}

bool operator<(const TypeExpr& lhs, const TypeExpr& rhs) {
  if (lhs.kind() != rhs.kind()) return lhs.kind() < rhs.kind();
  if (lhs.name() != rhs.name()) return lhs.name() < rhs.name();
  return std::lexicographical_compare(lhs.children().begin(), lhs.children().end(),
                                      rhs.children().begin(), rhs.children().end());
}

TypeExpr substitute(const TypeExpr& type, const VarMap& replacements) {
  switch (type.kind()) {
    case TypeExpr::Kind::var: {
      auto it = replacements.find(type.name());
      return it == replacements.end() ? type : it->second;
    }
    case TypeExpr::Kind::named: {
      std::vector<TypeExpr> args;
      args.reserve(type.args().size());
      for (const auto& arg : type.args()) args.push_back(substitute(arg, replacements));
      return TypeExpr::named(type.name(), std::move(args));
    }
    case TypeExpr::Kind::fn: {
      std::vector<TypeExpr> params;
      params.reserve(type.params().size());
      for (const auto& p : type.params()) params.push_back(substitute(p, replacements));
      return TypeExpr::fn(std::move(params), substitute(type.ret(), replacements));
    }
  }
  return type;
}

bool occurs_in(std::string_view var, const TypeExpr& type) {
  if (type.is_var()) return type.name() == var;
  return std::any_of(type.children().begin(), type.children().end(),
                     [&](const TypeExpr& child) { return occurs_in(var, child); });
}

bool mentions_head(const TypeExpr& type, std::string_view head) {
  if (type.is_named() && type.name() == head) return true;
  return std::any_of(type.children().begin(), type.children().end(),
                     [&](const TypeExpr& child) { return mentions_head(child, head); });
}

void collect_heads(const TypeExpr& type, std::set<std::string>& out) {
  if (type.is_named()) out.insert(type.name());
  for (const auto& child : type.children()) collect_heads(child, out);
}

void collect_vars(const TypeExpr& type, std::vector<std::string>& out_in_order) {
  if (type.is_var()) {
    if (std::find(out_in_order.begin(), out_in_order.end(), type.name()) ==
        out_in_order.end()) {
      out_in_order.push_back(type.name());
    }
    return;
  }
  for (const auto& child : type.children()) collect_vars(child, out_in_order);
}

std::size_t expr_size(const TypeExpr& type) {
  std::size_t n = 1;
  for (const auto& child : type.children()) n += expr_size(child);
  return n;
}

std::string render(const FunctionShape& shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.params.size(); ++i) {
    if (i != 0) out += ", ";
    if (!shape.params[i].name.empty()) out += shape.params[i].name + ": ";
    out += render(shape.params[i].type);
  }
  out += ") -> ";
  out += render(shape.ret);
  return out;
}

}  // namespace docforge
