#include "docforge/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "docforge/signature.hpp"

namespace docforge {

using nlohmann::json;

DocumentError::DocumentError(ErrorKind kind, const std::string& message, std::string entity,
                             std::optional<std::size_t> offset, ValidationReport report)
    : Error(kind, message),
      entity_(std::move(entity)),
      offset_(offset),
      report_(std::move(report)) {}

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw DocumentError(ErrorKind::malformed_document, "malformed-document: " + where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) malformed(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const json& obj, const char* key,
                                               const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(where + "." + key, "expected a string");
  return it->get<std::string>();
}

std::vector<std::string> get_string_list(const json& obj, const char* key,
                                         const std::string& where) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  if (!it->is_array()) malformed(where + "." + key, "expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& v = (*it)[i];
    if (!v.is_string()) {
      malformed(where + "." + key + "[" + std::to_string(i) + "]", "expected a string");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

const json& get_array(const json& obj, const char* key, const std::string& where) {
  static const json empty = json::array();
  auto it = obj.find(key);
  if (it == obj.end()) return empty;
  if (!it->is_array()) malformed(where + "." + key, "expected an array");
  return *it;
}

void require_object(const json& v, const std::string& where) {
  if (!v.is_object()) malformed(where, "expected an object");
}

ModulePath split_module(const std::string& text) {
  ModulePath path;
  if (text.empty()) return path;
  std::size_t start = 0;
  while (true) {
    auto end = text.find("::", start);
    path.push_back(text.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 2;
  }
  return path;
}

/// Bare names that match an in-scope type parameter are variables.
TypeExpr bind_scope(const TypeExpr& t, const std::set<std::string>& scope) {
  switch (t.kind()) {
    case TypeExpr::Kind::var:
      return t;
    case TypeExpr::Kind::named: {
      if (t.args().empty() && scope.contains(t.name())) return TypeExpr::var(t.name());
      std::vector<TypeExpr> args;
      for (const auto& a : t.args()) args.push_back(bind_scope(a, scope));
      return TypeExpr::named(t.name(), std::move(args));
    }
    case TypeExpr::Kind::fn: {
      std::vector<TypeExpr> params;
      for (const auto& p : t.params()) params.push_back(bind_scope(p, scope));
      return TypeExpr::fn(std::move(params), bind_scope(t.ret(), scope));
    }
  }
  return t;
}

class Reader {
 public:
  explicit Reader(const json& root) : root_(root) {}

  ApiGraph read() {
    ApiGraph graph;
    if (auto it = root_.find("aliases"); it != root_.end()) {
      if (!it->is_object()) malformed("aliases", "expected an object");
      for (const auto& [k, v] : it->items()) {
        if (!v.is_string()) malformed("aliases." + k, "expected a string");
        graph.aliases.emplace(k, v.get<std::string>());
      }
    }
    if (root_.contains("primitives")) graph.primitives = get_string_list(root_, "primitives", "$");
    syntax_.list_constructor = list_constructor(graph);

    const auto& modules = get_array(root_, "modules", "$");
    for (std::size_t i = 0; i < modules.size(); ++i) {
      const std::string where = "modules[" + std::to_string(i) + "]";
      require_object(modules[i], where);
      graph.modules.push_back(
          {split_module(get_string(modules[i], "path", where)), get_optional_string(modules[i], "doc", where)});
    }

    // Owner type parameters are needed to scope method signatures.
    const auto& types = get_array(root_, "types", "$");
    const auto& interfaces = get_array(root_, "interfaces", "$");
    for (std::size_t i = 0; i < types.size(); ++i) {
      const std::string where = "types[" + std::to_string(i) + "]";
      require_object(types[i], where);
      owner_params_[get_string(types[i], "name", where)] =
          get_string_list(types[i], "type_params", where);
    }
    for (std::size_t i = 0; i < interfaces.size(); ++i) {
      const std::string where = "interfaces[" + std::to_string(i) + "]";
      require_object(interfaces[i], where);
      owner_params_[get_string(interfaces[i], "name", where)] =
          get_string_list(interfaces[i], "type_params", where);
    }

    for (std::size_t i = 0; i < types.size(); ++i) {
      graph.types.push_back(read_type(types[i], "types[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < interfaces.size(); ++i) {
      graph.interfaces.push_back(
          read_interface(interfaces[i], "interfaces[" + std::to_string(i) + "]"));
    }
    const auto& functions = get_array(root_, "functions", "$");
    for (std::size_t i = 0; i < functions.size(); ++i) {
      const std::string where = "functions[" + std::to_string(i) + "]";
      require_object(functions[i], where);
      graph.functions.push_back(read_function(functions[i], where, nullptr));
    }
    return graph;
  }

 private:
  TypeExpr parse_in_scope(const std::string& text, const std::set<std::string>& scope,
                          const std::string& entity) {
    try {
      return bind_scope(parse_type(text, syntax_), scope);
    } catch (const ParseError& e) {
      throw signature_error(entity, text, e);
    }
  }

  static DocumentError signature_error(const std::string& entity, const std::string& text,
                                       const ParseError& e) {
    return DocumentError(ErrorKind::signature_parse,
                         "signature-parse-error in " + entity + " at offset " +
                             std::to_string(e.offset()) + " of \"" + text + "\": " + e.detail(),
                         entity, e.offset());
  }

  TypeDef read_type(const json& obj, const std::string& where) {
    TypeDef t;
    t.name = get_string(obj, "name", where);
    t.module = split_module(get_string(obj, "module", where));
    const auto kind = get_string(obj, "kind", where);
    auto parsed = parse_type_kind(kind);
    if (!parsed) malformed(where + ".kind", "unknown type kind '" + kind + "'");
    t.kind = *parsed;
    t.type_params = get_string_list(obj, "type_params", where);
    t.doc = get_optional_string(obj, "doc", where);
    const auto q = qualified_name(t);
    const std::set<std::string> scope(t.type_params.begin(), t.type_params.end());
    const auto& fields = get_array(obj, "fields", where);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string fw = where + ".fields[" + std::to_string(i) + "]";
      require_object(fields[i], fw);
      t.fields.push_back({get_string(fields[i], "name", fw),
                          parse_in_scope(get_string(fields[i], "type", fw), scope, q)});
    }
    for (const auto& s : get_string_list(obj, "supertypes", where)) {
      t.supertypes.push_back(parse_in_scope(s, scope, q));
    }
    for (const auto& s : get_string_list(obj, "implements", where)) {
      t.implements.push_back(parse_in_scope(s, scope, q));
    }
    return t;
  }

  InterfaceDef read_interface(const json& obj, const std::string& where) {
    InterfaceDef i;
    i.name = get_string(obj, "name", where);
    i.module = split_module(get_string(obj, "module", where));
    i.type_params = get_string_list(obj, "type_params", where);
    i.doc = get_optional_string(obj, "doc", where);
    const auto q = qualified_name(i);
    const std::set<std::string> scope(i.type_params.begin(), i.type_params.end());
    for (const auto& e : get_string_list(obj, "extends", where)) {
      i.extends.push_back(parse_in_scope(e, scope, q));
    }
    const auto& methods = get_array(obj, "methods", where);
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const std::string mw = where + ".methods[" + std::to_string(k) + "]";
      require_object(methods[k], mw);
      i.method_shapes.push_back(read_function(methods[k], mw, &i));
    }
    return i;
  }

  FunctionDef read_function(const json& obj, const std::string& where, const InterfaceDef* iface) {
    FunctionDef f;
    f.name = get_string(obj, "name", where);
    if (iface != nullptr) {
      f.module = iface->module;
      f.owner = iface->name;
    } else {
      f.module = split_module(get_string(obj, "module", where));
      f.owner = get_optional_string(obj, "owner", where);
    }
    const auto receiver = get_optional_string(obj, "receiver", where).value_or("none");
    auto r = parse_receiver(receiver);
    if (!r) malformed(where + ".receiver", "unknown receiver kind '" + receiver + "'");
    f.receiver = *r;
    const auto visibility = get_optional_string(obj, "visibility", where).value_or("public");
    auto v = parse_visibility(visibility);
    if (!v) malformed(where + ".visibility", "unknown visibility '" + visibility + "'");
    f.visibility = *v;
    f.type_params = get_string_list(obj, "type_params", where);
    f.doc = get_optional_string(obj, "doc", where);
    f.groups = extract_groups(f.doc);

    std::set<std::string> scope(f.type_params.begin(), f.type_params.end());
    if (f.owner) {
      if (auto it = owner_params_.find(*f.owner); it != owner_params_.end()) {
        scope.insert(it->second.begin(), it->second.end());
      }
    }
    const auto q = qualified_name(f);
    const auto text = get_string(obj, "signature", where);
    FunctionShape shape;
    try {
      shape = parse_signature(text, syntax_);
    } catch (const ParseError& e) {
      throw signature_error(q, text, e);
    }
    for (auto& p : shape.params) p.type = bind_scope(p.type, scope);
    f.params = std::move(shape.params);
    f.ret = bind_scope(shape.ret, scope);
    return f;
  }

  const json& root_;
  SignatureSyntax syntax_;
  std::map<std::string, std::vector<std::string>> owner_params_;
};

json emit_function(const FunctionDef& f, bool interface_method) {
  json j = json::object();
  j["name"] = f.name;
  if (!interface_method) {
    j["module"] = join_path(f.module);
    if (f.owner) j["owner"] = *f.owner;
  }
  j["receiver"] = std::string(to_string(f.receiver));
  j["signature"] = render(FunctionShape{f.params, f.ret});
  j["type_params"] = f.type_params;
  j["visibility"] = std::string(to_string(f.visibility));
  if (f.doc) j["doc"] = *f.doc;
  return j;
}

json render_list(const std::vector<TypeExpr>& types) {
  json out = json::array();
  for (const auto& t : types) out.push_back(render(t));
  return out;
}

}  // namespace

ApiGraph load_api_document(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw DocumentError(ErrorKind::malformed_document,
                        std::string("malformed-document: ") + e.what(), {}, e.byte);
  }
  if (!root.is_object()) malformed("$", "expected a top-level object");
  const auto& version = require(root, "format_version", "$");
  if (!version.is_number_integer()) malformed("$.format_version", "expected an integer");
  if (version.get<long long>() != kFormatVersion) {
    throw DocumentError(ErrorKind::unknown_version,
                        "unknown-version: format_version " + version.dump() +
                            " is not supported (expected " + std::to_string(kFormatVersion) + ")");
  }
  ApiGraph graph = Reader(root).read();
  if (auto report = validate_graph(graph); !report.empty()) {
    const auto first = report.front().entity;
    throw DocumentError(ErrorKind::validation_failure,
                        "validation-failure: " + std::to_string(report.size()) +
                            " violation(s)\n" + format_report(report),
                        first, std::nullopt, std::move(report));
  }
  return graph;
}

ApiGraph load_api_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_failure, "io-failure: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_api_document(buf.str());
}

std::string emit_api_document(const ApiGraph& input) {
  const ApiGraph graph = canonical_order(input);
  json root = json::object();
  root["format_version"] = kFormatVersion;
  root["aliases"] = json::object();
  for (const auto& [k, v] : graph.aliases) root["aliases"][k] = v;
  root["primitives"] = graph.primitives;

  root["modules"] = json::array();
  for (const auto& m : graph.modules) {
    json j = {{"path", join_path(m.path)}};
    if (m.doc) j["doc"] = *m.doc;
    root["modules"].push_back(std::move(j));
  }
  root["types"] = json::array();
  for (const auto& t : graph.types) {
    json j = json::object();
    j["name"] = t.name;
    j["module"] = join_path(t.module);
    j["kind"] = std::string(to_string(t.kind));
    j["type_params"] = t.type_params;
    j["fields"] = json::array();
    for (const auto& f : t.fields) j["fields"].push_back({{"name", f.name}, {"type", render(f.type)}});
    j["supertypes"] = render_list(t.supertypes);
    j["implements"] = render_list(t.implements);
    if (t.doc) j["doc"] = *t.doc;
    root["types"].push_back(std::move(j));
  }
  root["interfaces"] = json::array();
  for (const auto& i : graph.interfaces) {
    json j = json::object();
    j["name"] = i.name;
    j["module"] = join_path(i.module);
    j["type_params"] = i.type_params;
    j["extends"] = render_list(i.extends);
    j["methods"] = json::array();
    for (const auto& m : i.method_shapes) j["methods"].push_back(emit_function(m, true));
    if (i.doc) j["doc"] = *i.doc;
    root["interfaces"].push_back(std::move(j));
  }
  root["functions"] = json::array();
  for (const auto& f : graph.functions) root["functions"].push_back(emit_function(f, false));

  return root.dump(2) + "\n";
}

}  // namespace docforge
