#include "docforge/api_model.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "docforge/signature.hpp"

namespace docforge {

std::string join_path(const ModulePath& path, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i != 0) out += sep;
    out += path[i];
  }
  return out;
}

std::string_view to_string(TypeKind kind) noexcept {
  switch (kind) {
    case TypeKind::struct_: return "struct";
    case TypeKind::enum_: return "enum";
    case TypeKind::class_: return "class";
  }
  return "class";
}

std::string_view to_string(Receiver receiver) noexcept {
  switch (receiver) {
    case Receiver::none: return "none";
    case Receiver::readonly: return "readonly";
    case Receiver::mutating: return "mutating";
    case Receiver::consuming: return "consuming";
    case Receiver::static_: return "static";
  }
  return "none";
}

std::string_view to_string(Visibility visibility) noexcept {
  return visibility == Visibility::public_ ? "public" : "private";
}

std::optional<TypeKind> parse_type_kind(std::string_view text) noexcept {
  if (text == "struct") return TypeKind::struct_;
  if (text == "enum") return TypeKind::enum_;
  if (text == "class") return TypeKind::class_;
  return std::nullopt;
}

std::optional<Receiver> parse_receiver(std::string_view text) noexcept {
  if (text == "none") return Receiver::none;
  if (text == "readonly") return Receiver::readonly;
  if (text == "mutating") return Receiver::mutating;
  if (text == "consuming") return Receiver::consuming;
  if (text == "static") return Receiver::static_;
  return std::nullopt;
}

std::optional<Visibility> parse_visibility(std::string_view text) noexcept {
  if (text == "public") return Visibility::public_;
  if (text == "private") return Visibility::private_;
  return std::nullopt;
}

std::string_view receiver_marker(Receiver receiver) noexcept {
  switch (receiver) {
    case Receiver::none: return "";
    case Receiver::readonly: return "ro";
    case Receiver::mutating: return "mut";
    case Receiver::consuming: return "own";
    case Receiver::static_: return "static";
  }
  return "";
}

const TypeDef* ApiGraph::find_type(std::string_view name) const {
  for (const auto& t : types) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const InterfaceDef* ApiGraph::find_interface(std::string_view name) const {
  for (const auto& i : interfaces) {
    if (i.name == name) return &i;
  }
  return nullptr;
}

std::string list_constructor(const ApiGraph& graph) {
  auto it = graph.aliases.find(std::string(kListAliasKey));
  return it == graph.aliases.end() ? std::string(kDefaultListConstructor) : it->second;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

constexpr std::string_view kGroupPrefix = "@group ";

bool is_group_line(std::string_view line) {
  return trim(line).substr(0, kGroupPrefix.size()) == kGroupPrefix;
}

}  // namespace

std::vector<std::string> extract_groups(const std::optional<std::string>& doc) {
  std::vector<std::string> groups;
  if (!doc) return groups;
  for (auto line : split_lines(*doc)) {
    if (!is_group_line(line)) continue;
    auto name = trim(trim(line).substr(kGroupPrefix.size()));
    if (!name.empty()) groups.emplace_back(name);
  }
  return groups;
}

std::string doc_body(const std::optional<std::string>& doc) {
  std::string out;
  if (!doc) return out;
  bool first = true;
  for (auto line : split_lines(*doc)) {
    if (is_group_line(line)) continue;
    if (!first) out += '\n';
    first = false;
    out += line;
  }
  return out;
}

std::string doc_summary(const std::optional<std::string>& doc) {
  if (!doc) return {};
  for (auto line : split_lines(*doc)) {
    if (is_group_line(line)) continue;
    auto t = trim(line);
    if (!t.empty()) return std::string(t);
  }
  return {};
}

std::string qualified_name(const ModuleDef& module) { return join_path(module.path); }

std::string qualified_name(const TypeDef& type) {
  return join_path(type.module) + "::" + type.name;
}

std::string qualified_name(const InterfaceDef& iface) {
  return join_path(iface.module) + "::" + iface.name;
}

std::string qualified_name(const FunctionDef& fn) {
  std::string out = join_path(fn.module);
  if (fn.owner) out += "::" + *fn.owner;
  return out + "::" + fn.name;
}

std::vector<const FunctionDef*> all_functions(const ApiGraph& graph) {
  std::vector<const FunctionDef*> out;
  out.reserve(graph.functions.size());
  for (const auto& f : graph.functions) out.push_back(&f);
  for (const auto& i : graph.interfaces) {
    for (const auto& m : i.method_shapes) out.push_back(&m);
  }
  return out;
}

std::string_view to_string(EntityKind kind) noexcept {
  switch (kind) {
    case EntityKind::module: return "module";
    case EntityKind::type: return "type";
    case EntityKind::interface: return "interface";
    case EntityKind::function: return "function";
  }
  return "module";
}

std::string EntityRef::name() const {
  if (module != nullptr) return module->path.empty() ? std::string{} : module->path.back();
  if (type != nullptr) return type->name;
  if (interface != nullptr) return interface->name;
  if (function != nullptr) return function->name;
  return {};
}

const std::optional<std::string>& EntityRef::doc() const {
  static const std::optional<std::string> none;
  if (module != nullptr) return module->doc;
  if (type != nullptr) return type->doc;
  if (interface != nullptr) return interface->doc;
  if (function != nullptr) return function->doc;
  return none;
}

std::vector<EntityRef> list_entities(const ApiGraph& graph) {
  std::vector<EntityRef> out;
  for (const auto& m : graph.modules) {
    EntityRef r{EntityKind::module, qualified_name(m)};
    r.module = &m;
    out.push_back(std::move(r));
  }
  for (const auto& t : graph.types) {
    EntityRef r{EntityKind::type, qualified_name(t)};
    r.type = &t;
    out.push_back(std::move(r));
  }
  for (const auto& i : graph.interfaces) {
    EntityRef r{EntityKind::interface, qualified_name(i)};
    r.interface = &i;
    out.push_back(std::move(r));
  }
  for (const auto* f : all_functions(graph)) {
    EntityRef r{EntityKind::function, qualified_name(*f)};
    r.function = f;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const EntityRef& a, const EntityRef& b) {
    return a.qualified_name < b.qualified_name;
  });
  return out;
}

FunctionShape desugar_method(const FunctionDef& fn, const ApiGraph& graph) {
  FunctionShape shape{fn.params, fn.ret};
  if (!takes_self(fn.receiver) || !fn.owner) return shape;
  std::vector<TypeExpr> args;
  if (const auto* t = graph.find_type(*fn.owner)) {
    for (const auto& p : t->type_params) args.push_back(TypeExpr::var(p));
  } else if (const auto* i = graph.find_interface(*fn.owner)) {
    for (const auto& p : i->type_params) args.push_back(TypeExpr::var(p));
  }
  shape.params.insert(shape.params.begin(), Param{"self", TypeExpr::named(*fn.owner, std::move(args))});
  return shape;
}

ApiGraph canonical_order(ApiGraph graph) {
  auto by_qname = [](const auto& a, const auto& b) { return qualified_name(a) < qualified_name(b); };
  std::stable_sort(graph.modules.begin(), graph.modules.end(), by_qname);
  std::stable_sort(graph.types.begin(), graph.types.end(), by_qname);
  std::stable_sort(graph.functions.begin(), graph.functions.end(), by_qname);
  std::stable_sort(graph.interfaces.begin(), graph.interfaces.end(), by_qname);
  for (auto& i : graph.interfaces) {
    std::stable_sort(i.method_shapes.begin(), i.method_shapes.end(), by_qname);
  }
  std::sort(graph.primitives.begin(), graph.primitives.end());
  return graph;
}

bool same_entities(const ApiGraph& lhs, const ApiGraph& rhs) {
  return canonical_order(lhs) == canonical_order(rhs);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct DeclaredName {
  std::size_t arity;
  enum class Origin { type, interface, primitive, builtin } origin;
};

class Validator {
 public:
  explicit Validator(const ApiGraph& graph) : graph_(graph) {
    for (const auto& [name, arity] : builtin_constructors()) {
      names_.emplace(name, DeclaredName{arity, DeclaredName::Origin::builtin});
    }
    for (const auto& p : graph.primitives) {
      names_.emplace(p, DeclaredName{0, DeclaredName::Origin::primitive});
    }
    for (const auto& m : graph.modules) module_names_.insert(qualified_name(m));
  }

  ValidationReport run() {
    check_unique_names();
    for (const auto& m : graph_.modules) check_module(m);
    for (const auto& t : graph_.types) check_type(t);
    for (const auto& i : graph_.interfaces) check_interface(i);
    for (const auto& f : graph_.functions) check_function(f, nullptr);
    check_cycles();
    check_aliases();
    std::sort(report_.begin(), report_.end());
    report_.erase(std::unique(report_.begin(), report_.end()), report_.end());
    return std::move(report_);
  }

 private:
  void add(std::string entity, std::string rule, std::string message) {
    report_.push_back({std::move(entity), std::move(rule), std::move(message)});
  }

  void check_identifier(const std::string& entity, const std::string& name, std::string_view what) {
    if (!is_identifier(name)) {
      add(entity, "invalid-identifier", std::string(what) + " '" + name + "' is not an identifier");
    }
  }

  void check_module_ref(const std::string& entity, const ModulePath& module) {
    if (module.empty()) {
      add(entity, "empty-module-path", "entity has an empty module path");
    } else if (!module_names_.contains(join_path(module))) {
      add(entity, "unknown-module", "module '" + join_path(module) + "' is not declared");
    }
  }

  void check_unique_names() {
    std::map<std::string, std::size_t> counts;
    for (const auto& m : graph_.modules) ++counts[qualified_name(m)];
    for (const auto& t : graph_.types) ++counts[qualified_name(t)];
    for (const auto& i : graph_.interfaces) {
      ++counts[qualified_name(i)];
      for (const auto& m : i.method_shapes) ++counts[qualified_name(m)];
    }
    for (const auto& f : graph_.functions) ++counts[qualified_name(f)];
    for (const auto& [name, n] : counts) {
      if (n > 1) {
        add(name, "duplicate-qualified-name",
            "qualified name declared " + std::to_string(n) + " times");
      }
    }

    // Signatures refer to types by simple name, so simple names must be unique
    // across types, interfaces, primitives and built-ins.
    std::map<std::string, std::vector<std::string>> owners;
    for (const auto& t : graph_.types) owners[t.name].push_back(qualified_name(t));
    for (const auto& i : graph_.interfaces) owners[i.name].push_back(qualified_name(i));
    for (const auto& [name, qnames] : owners) {
      const bool reserved = names_.contains(name);
      if (qnames.size() > 1 || reserved) {
        for (const auto& q : qnames) {
          add(q, "duplicate-type-name", "type name '" + name + "' is declared more than once");
        }
      }
    }
    for (const auto& t : graph_.types) {
      names_.try_emplace(t.name, DeclaredName{t.type_params.size(), DeclaredName::Origin::type});
    }
    for (const auto& i : graph_.interfaces) {
      names_.try_emplace(i.name,
                         DeclaredName{i.type_params.size(), DeclaredName::Origin::interface});
    }
  }

  void check_module(const ModuleDef& m) {
    const auto q = qualified_name(m);
    if (m.path.empty()) add(q, "empty-module-path", "module path is empty");
    for (const auto& seg : m.path) check_identifier(q, seg, "module segment");
  }

  void check_type_params(const std::string& entity, const std::vector<std::string>& params) {
    std::set<std::string> seen;
    for (const auto& p : params) {
      check_identifier(entity, p, "type parameter");
      if (!seen.insert(p).second) {
        add(entity, "duplicate-type-param", "type parameter '" + p + "' declared twice");
      }
    }
  }

  void check_expr(const std::string& entity, const TypeExpr& t, const std::set<std::string>& scope) {
    switch (t.kind()) {
      case TypeExpr::Kind::var:
        if (!scope.contains(t.name())) {
          add(entity, "undeclared-type-var", "type variable '" + t.name() + "' is not declared");
        }
        return;
      case TypeExpr::Kind::named: {
        auto it = names_.find(t.name());
        if (it == names_.end()) {
          add(entity, "unresolved-type", "type '" + t.name() + "' does not resolve");
        } else if (it->second.arity != t.args().size()) {
          add(entity, "arity-mismatch",
              "type '" + t.name() + "' expects " + std::to_string(it->second.arity) +
                  " argument(s), got " + std::to_string(t.args().size()));
        }
        break;
      }
      case TypeExpr::Kind::fn:
        break;
    }
    for (const auto& child : t.children()) check_expr(entity, child, scope);
  }

  void check_type(const TypeDef& t) {
    const auto q = qualified_name(t);
    check_identifier(q, t.name, "type name");
    check_module_ref(q, t.module);
    check_type_params(q, t.type_params);
    const std::set<std::string> scope(t.type_params.begin(), t.type_params.end());
    std::set<std::string> field_names;
    for (const auto& f : t.fields) {
      check_identifier(q, f.name, "field name");
      if (!field_names.insert(f.name).second) {
        add(q, "duplicate-field", "field '" + f.name + "' declared twice");
      }
      check_expr(q, f.type, scope);
    }
    for (const auto& s : t.supertypes) {
      check_expr(q, s, scope);
      if (!s.is_named() || graph_.find_type(s.name()) == nullptr) {
        add(q, "inherits-non-class", "supertype '" + render(s) + "' is not a declared type");
      }
    }
    for (const auto& i : t.implements) {
      check_expr(q, i, scope);
      if (!i.is_named() || graph_.find_interface(i.name()) == nullptr) {
        add(q, "implements-non-interface", "'" + render(i) + "' is not a declared interface");
      }
    }
  }

  void check_interface(const InterfaceDef& i) {
    const auto q = qualified_name(i);
    check_identifier(q, i.name, "interface name");
    check_module_ref(q, i.module);
    check_type_params(q, i.type_params);
    const std::set<std::string> scope(i.type_params.begin(), i.type_params.end());
    for (const auto& e : i.extends) {
      check_expr(q, e, scope);
      if (!e.is_named() || graph_.find_interface(e.name()) == nullptr) {
        add(q, "extends-non-interface", "'" + render(e) + "' is not a declared interface");
      }
    }
    for (const auto& m : i.method_shapes) check_function(m, &i);
  }

  void check_function(const FunctionDef& f, const InterfaceDef* iface) {
    const auto q = qualified_name(f);
    check_identifier(q, f.name, "function name");
    check_module_ref(q, f.module);
    check_type_params(q, f.type_params);

    if (f.owner && f.receiver == Receiver::none) {
      add(q, "owner-without-receiver", "owned function must declare a receiver kind");
    }
    if (!f.owner && f.receiver != Receiver::none) {
      add(q, "receiver-without-owner",
          "receiver '" + std::string(to_string(f.receiver)) + "' requires an owner");
    }
    if (iface != nullptr && (!f.owner || *f.owner != iface->name || f.module != iface->module)) {
      add(q, "method-owner-mismatch", "interface method must be owned by '" + iface->name + "'");
    }

    std::set<std::string> scope(f.type_params.begin(), f.type_params.end());
    if (f.owner) {
      if (const auto* t = graph_.find_type(*f.owner)) {
        scope.insert(t->type_params.begin(), t->type_params.end());
        if (t->module != f.module) {
          add(q, "unknown-owner", "owner '" + *f.owner + "' is declared in a different module");
        }
      } else if (const auto* i = graph_.find_interface(*f.owner)) {
        scope.insert(i->type_params.begin(), i->type_params.end());
        if (i->module != f.module) {
          add(q, "unknown-owner", "owner '" + *f.owner + "' is declared in a different module");
        }
      } else {
        add(q, "unknown-owner", "owner '" + *f.owner + "' is not a declared type or interface");
      }
    }
    for (const auto& p : f.params) {
      check_identifier(q, p.name, "parameter name");
      check_expr(q, p.type, scope);
    }
    check_expr(q, f.ret, scope);
  }

  // One violation per strongly connected component that contains a cycle,
  // reported on its smallest qualified name.
  void report_cycles(const std::map<std::string, std::vector<std::string>>& edges,
                     const std::map<std::string, std::string>& qnames, const std::string& rule) {
    std::map<std::string, std::set<std::string>> reach;
    for (const auto& [start, _] : edges) {
      auto& seen = reach[start];
      std::vector<std::string> stack(edges.at(start).begin(), edges.at(start).end());
      while (!stack.empty()) {
        auto n = std::move(stack.back());
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (auto it = edges.find(n); it != edges.end()) {
          stack.insert(stack.end(), it->second.begin(), it->second.end());
        }
      }
    }
    std::set<std::string> reported;
    for (const auto& [node, seen] : reach) {
      if (!seen.contains(node) || reported.contains(node)) continue;
      std::vector<std::string> members;
      for (const auto& other : seen) {
        auto it = reach.find(other);
        if (it != reach.end() && it->second.contains(node)) members.push_back(other);
      }
      std::vector<std::string> member_qnames;
      for (const auto& m : members) {
        reported.insert(m);
        member_qnames.push_back(qnames.at(m));
      }
      std::sort(member_qnames.begin(), member_qnames.end());
      std::string msg = "cycle through";
      for (const auto& m : member_qnames) msg += " " + m;
      add(member_qnames.front(), rule, msg);
    }
  }

  void check_cycles() {
    std::map<std::string, std::vector<std::string>> inherits;
    std::map<std::string, std::string> type_qnames;
    for (const auto& t : graph_.types) {
      type_qnames.emplace(t.name, qualified_name(t));
      auto& out = inherits[t.name];
      for (const auto& s : t.supertypes) {
        if (s.is_named() && graph_.find_type(s.name())) out.push_back(s.name());
      }
    }
    report_cycles(inherits, type_qnames, "inherits-cycle");

    std::map<std::string, std::vector<std::string>> extends;
    std::map<std::string, std::string> iface_qnames;
    for (const auto& i : graph_.interfaces) {
      iface_qnames.emplace(i.name, qualified_name(i));
      auto& out = extends[i.name];
      for (const auto& e : i.extends) {
        if (e.is_named() && graph_.find_interface(e.name())) out.push_back(e.name());
      }
    }
    report_cycles(extends, iface_qnames, "extends-cycle");
  }

  void check_aliases() {
    for (const auto& [alias, target] : graph_.aliases) {
      if (!names_.contains(target)) {
        add("aliases::" + alias, "unresolved-alias",
            "alias '" + alias + "' targets undeclared type '" + target + "'");
      }
    }
  }

  const ApiGraph& graph_;
  std::map<std::string, DeclaredName, std::less<>> names_;
  std::set<std::string> module_names_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_graph(const ApiGraph& graph) { return Validator(graph).run(); }

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& v : report) out << v.entity << ": " << v.rule << ": " << v.message << '\n';
  return out.str();
}

}  // namespace docforge
