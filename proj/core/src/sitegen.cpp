#include "docforge/sitegen.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "docforge/error.hpp"
#include "docforge/tokenize.hpp"

namespace docforge {

using nlohmann::json;

std::string page_name(std::string_view qualified_name) {
  std::string out;
  for (std::size_t i = 0; i < qualified_name.size(); ++i) {
    if (qualified_name.compare(i, 2, "::") == 0) {
      out += '.';
      ++i;
    } else {
      out += qualified_name[i];
    }
  }
  return out + ".html";
}

namespace {

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::string_view kStyle = R"(body{font-family:sans-serif;margin:0 2em;line-height:1.4}
nav{padding:.5em 0;border-bottom:1px solid #ccc;margin-bottom:1em}
code,.sig{font-family:monospace}
table.matrix{border-collapse:collapse}
table.matrix th{text-align:left;vertical-align:top;padding:.3em .8em .3em 0;white-space:nowrap}
table.matrix td{padding:.3em 0}
.cells{display:grid;grid-template-columns:repeat(auto-fill,minmax(18em,1fr));gap:.2em 1em}
.cell .sig{color:#555;font-size:.85em;display:block}
.repeated{color:#777}
)";

class SiteRenderer {
 public:
  SiteRenderer(const ApiGraph& graph, const RelationIndex& relations, const SiteConfig& config)
      : graph_(graph), rel_(relations), config_(config), entities_(list_entities(graph)) {
    for (const auto& e : entities_) {
      if (visible(e)) pages_.insert(e.qualified_name);
    }
  }

  std::map<std::string, std::string> render() {
    std::map<std::string, std::string> files;
    files.emplace("index.html", index_page());
    files.emplace("tree.html", tree_page());
    for (const auto& e : entities_) {
      if (!visible(e)) continue;
      std::string body;
      switch (e.kind) {
        case EntityKind::module: body = module_page(*e.module); break;
        case EntityKind::type: body = type_page(*e.type); break;
        case EntityKind::interface: body = interface_page(*e.interface); break;
        case EntityKind::function: body = function_page(*e.function); break;
      }
      files.emplace(page_name(e.qualified_name), std::move(body));
    }
    files.emplace(std::string(kSearchIndexFile),
                  emit_search_index(graph_, rel_, config_.include_private));
    return files;
  }

 private:
  bool visible(const EntityRef& e) const { return config_.include_private || e.is_public(); }

  std::string page(const std::string& title, const std::string& body) const {
    std::string out;
    out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    out += "<title>" + escape(title) + " - " + escape(config_.title) + "</title>\n";
    out += "<style>\n";
    out += kStyle;
    out += "</style>\n</head>\n<body>\n";
    out += "<nav><a href=\"index.html\">" + escape(config_.title) +
           "</a> | <a href=\"tree.html\">Class tree</a></nav>\n";
    out += "<main>\n" + body + "</main>\n</body>\n</html>\n";
    return out;
  }

  std::string link(const std::string& qname, const std::string& text) const {
    if (!pages_.contains(qname)) return "<code>" + escape(text) + "</code>";
    return "<a href=\"" + page_name(qname) + "\"><code>" + escape(text) + "</code></a>";
  }

  std::string type_link(const std::string& name) const {
    auto it = rel_.qualified.find(name);
    if (it == rel_.qualified.end()) return escape(name);
    if (!pages_.contains(it->second)) return escape(name);
    return "<a href=\"" + page_name(it->second) + "\">" + escape(name) + "</a>";
  }

  std::string html_type(const TypeExpr& t) const {
    switch (t.kind()) {
      case TypeExpr::Kind::var:
        return escape(t.name());
      case TypeExpr::Kind::named: {
        std::string out = type_link(t.name());
        if (!t.args().empty()) {
          out += "&lt;";
          for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i != 0) out += ", ";
            out += html_type(t.args()[i]);
          }
          out += "&gt;";
        }
        return out;
      }
      case TypeExpr::Kind::fn: {
        std::string out = "(";
        for (std::size_t i = 0; i < t.params().size(); ++i) {
          if (i != 0) out += ", ";
          out += "arg" + std::to_string(i) + ": " + html_type(t.params()[i]);
        }
        return out + ") -&gt; " + html_type(t.ret());
      }
    }
    return {};
  }

  std::string html_signature(const FunctionDef& f) const {
    std::string out = "<code class=\"sig\">";
    if (f.receiver != Receiver::none) {
      out += "(" + std::string(receiver_marker(f.receiver)) + ") ";
    }
    out += "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i != 0) out += ", ";
      out += escape(f.params[i].name) + ": " + html_type(f.params[i].type);
    }
    out += ") -&gt; " + html_type(f.ret) + "</code>";
    return out;
  }

  static std::string doc_html(const std::optional<std::string>& doc) {
    const auto body = doc_body(doc);
    if (body.empty()) return {};
    std::string out;
    std::istringstream lines(body);
    std::string line;
    std::string paragraph;
    auto flush = [&] {
      if (!paragraph.empty()) out += "<p>" + escape(paragraph) + "</p>\n";
      paragraph.clear();
    };
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t") == std::string::npos) {
        flush();
      } else {
        if (!paragraph.empty()) paragraph += ' ';
        paragraph += line;
      }
    }
    flush();
    return out;
  }

  std::string id_list(const std::string& heading, const std::vector<std::string>& ids) const {
    std::vector<std::string> shown;
    for (const auto& id : ids) {
      if (pages_.contains(id)) shown.push_back(id);
    }
    if (shown.empty()) return {};
    std::string out = "<h2>" + escape(heading) + "</h2>\n<ul>\n";
    for (const auto& id : shown) out += "<li>" + link(id, id) + "</li>\n";
    return out + "</ul>\n";
  }

  std::string relation_sections(const std::string& name) const {
    std::string out;
    out += id_list("Returned by", relation_query(rel_, RelationKind::outputs, name));
    out += id_list("Accepted by", relation_query(rel_, RelationKind::inputs, name));
    auto it = rel_.contains.find(name);
    if (it != rel_.contains.end() && !it->second.empty()) {
      out += "<h2>Contained in</h2>\n<ul>\n";
      for (const auto& e : it->second) {
        out += "<li>" + link(e.container, e.container) + " field <code>" + escape(e.field) +
               "</code></li>\n";
      }
      out += "</ul>\n";
    }
    return out;
  }

  std::string type_list(const std::string& heading, const std::vector<TypeExpr>& types) const {
    if (types.empty()) return {};
    std::string out = "<h2>" + escape(heading) + "</h2>\n<ul>\n";
    for (const auto& t : types) out += "<li><code>" + html_type(t) + "</code></li>\n";
    return out + "</ul>\n";
  }

  static std::string params_suffix(const std::vector<std::string>& params) {
    if (params.empty()) return {};
    std::string out = "<";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i != 0) out += ", ";
      out += params[i];
    }
    return out + ">";
  }

  std::string index_page() const {
    std::string body = "<h1>" + escape(config_.title) + "</h1>\n";
    body += "<h2>Modules</h2>\n<ul>\n";
    for (const auto& e : entities_) {
      if (e.kind == EntityKind::module) body += "<li>" + link(e.qualified_name, e.qualified_name) + "</li>\n";
    }
    body += "</ul>\n<p><a href=\"tree.html\">Class inheritance tree</a></p>\n";
    return page("Index", body);
  }

  void render_tree(const std::vector<TreeNode>& nodes, std::string& out) const {
    if (nodes.empty()) return;
    out += "<ul>\n";
    for (const auto& n : nodes) {
      out += "<li>" + link(n.qualified_name, n.name);
      if (n.repeated) out += " <span class=\"repeated\">(see above)</span>";
      out += "\n";
      render_tree(n.children, out);
      out += "</li>\n";
    }
    out += "</ul>\n";
  }

  std::string tree_page() const {
    std::string body = "<h1>Class inheritance tree</h1>\n";
    const auto forest = inheritance_tree(rel_, graph_);
    if (forest.empty()) body += "<p>No classes.</p>\n";
    render_tree(forest, body);
    return page("Class tree", body);
  }

  std::string module_page(const ModuleDef& m) const {
    const auto q = qualified_name(m);
    std::string body = "<h1>Module <code>" + escape(q) + "</code></h1>\n";
    body += doc_html(m.doc);
    std::string subs;
    for (const auto& other : graph_.modules) {
      if (other.path.size() == m.path.size() + 1 &&
          std::equal(m.path.begin(), m.path.end(), other.path.begin())) {
        subs += "<li>" + link(qualified_name(other), qualified_name(other)) + "</li>\n";
      }
    }
    if (!subs.empty()) body += "<h2>Modules</h2>\n<ul>\n" + subs + "</ul>\n";
    std::string types, ifaces, fns;
    for (const auto& e : entities_) {
      if (!visible(e)) continue;
      if (e.type != nullptr && e.type->module == m.path) {
        types += "<li>" + link(e.qualified_name, e.type->name) + " <small>" +
                 std::string(to_string(e.type->kind)) + "</small></li>\n";
      } else if (e.interface != nullptr && e.interface->module == m.path) {
        ifaces += "<li>" + link(e.qualified_name, e.interface->name) + "</li>\n";
      } else if (e.function != nullptr && !e.function->owner && e.function->module == m.path) {
        fns += "<li>" + link(e.qualified_name, e.function->name) + " " +
               html_signature(*e.function) + "</li>\n";
      }
    }
    if (!types.empty()) body += "<h2>Types</h2>\n<ul>\n" + types + "</ul>\n";
    if (!ifaces.empty()) body += "<h2>Interfaces</h2>\n<ul>\n" + ifaces + "</ul>\n";
    if (!fns.empty()) body += "<h2>Functions</h2>\n<ul>\n" + fns + "</ul>\n";
    return page(q, body);
  }

  std::string type_page(const TypeDef& t) const {
    const auto q = qualified_name(t);
    std::string body = "<h1>" + std::string(to_string(t.kind)) + " <code>" +
                       escape(t.name + params_suffix(t.type_params)) + "</code></h1>\n";
    body += "<p>Module " + link(join_path(t.module), join_path(t.module)) + "</p>\n";
    body += doc_html(t.doc);
    if (!t.fields.empty()) {
      body += "<h2>Fields</h2>\n<ul>\n";
      for (const auto& f : t.fields) {
        body += "<li><code>" + escape(f.name) + ": " + html_type(f.type) + "</code></li>\n";
      }
      body += "</ul>\n";
    }
    body += type_list("Inherits", t.supertypes);
    body += type_list("Implements", t.implements);
    body += id_list("Subtypes", relation_query(rel_, RelationKind::inherits, t.name));

    const auto matrix = build_method_matrix(graph_, t.name, config_.default_grouping,
                                            config_.include_private);
    if (!matrix.rows.empty()) {
      body += "<h2>Methods <small>grouped by " + std::string(to_string(matrix.grouping)) +
              "</small></h2>\n<table class=\"matrix\">\n";
      for (const auto& row : matrix.rows) {
        body += "<tr><th><code>" + escape(row.label) + "</code></th><td><div class=\"cells\">\n";
        for (const auto& cell : row.cells) {
          body += "<div class=\"cell\">" + link(cell.target, cell.name) + "<span class=\"sig\">" +
                  escape(cell.signature) + "</span></div>\n";
        }
        body += "</div></td></tr>\n";
      }
      body += "</table>\n";
    }
    body += relation_sections(t.name);
    return page(q, body);
  }

  std::string interface_page(const InterfaceDef& i) const {
    const auto q = qualified_name(i);
    std::string body = "<h1>interface <code>" + escape(i.name + params_suffix(i.type_params)) +
                       "</code></h1>\n";
    body += "<p>Module " + link(join_path(i.module), join_path(i.module)) + "</p>\n";
    body += doc_html(i.doc);
    body += type_list("Extends", i.extends);
    body += id_list("Implementors", relation_query(rel_, RelationKind::implements, i.name));
    body += id_list("Extended by", relation_query(rel_, RelationKind::inherits, i.name));
    std::string methods;
    for (const auto& m : i.method_shapes) {
      if (!config_.include_private && !m.is_public()) continue;
      methods += "<li>" + link(qualified_name(m), m.name) + " " + html_signature(m) + "</li>\n";
    }
    if (!methods.empty()) body += "<h2>Required methods</h2>\n<ul>\n" + methods + "</ul>\n";
    body += relation_sections(i.name);
    return page(q, body);
  }

  std::string function_page(const FunctionDef& f) const {
    const auto q = qualified_name(f);
    std::string body = "<h1>" + std::string(f.owner ? "method" : "function") + " <code>" +
                       escape(f.name) + "</code></h1>\n";
    body += "<p>" + html_signature(f) + "</p>\n";
    body += "<p>Module " + link(join_path(f.module), join_path(f.module));
    if (f.owner) body += " &middot; on " + type_link(*f.owner);
    if (f.receiver != Receiver::none) {
      body += " &middot; receiver <code>" + std::string(to_string(f.receiver)) + "</code>";
    }
    body += "</p>\n";
    body += doc_html(f.doc);
    if (!f.groups.empty()) {
      body += "<p>Groups:";
      for (const auto& g : f.groups) body += " <code>" + escape(g) + "</code>";
      body += "</p>\n";
    }
    const auto shape = desugar_method(f, graph_);
    std::set<std::string> takes, returns;
    for (const auto& p : shape.params) collect_heads(p.type, takes);
    collect_heads(shape.ret, returns);
    auto relation_line = [&](const char* label, const std::set<std::string>& heads) {
      if (heads.empty()) return std::string{};
      std::string out = "<li>" + std::string(label);
      for (const auto& h : heads) out += " " + type_link(h);
      return out + "</li>\n";
    };
    const auto rel_lines = relation_line("Takes", takes) + relation_line("Returns", returns);
    if (!rel_lines.empty()) body += "<h2>Relations</h2>\n<ul>\n" + rel_lines + "</ul>\n";
    return page(q, body);
  }

  const ApiGraph& graph_;
  const RelationIndex& rel_;
  const SiteConfig& config_;
  std::vector<EntityRef> entities_;
  std::set<std::string> pages_;
};

json string_or_null(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

json rendered(const std::vector<TypeExpr>& types) {
  json out = json::array();
  for (const auto& t : types) out.push_back(render(t));
  return out;
}

}  // namespace

std::map<std::string, std::string> render_site(const ApiGraph& graph, const RelationIndex& relations,
                                               const SiteConfig& config) {
  return SiteRenderer(graph, relations, config).render();
}

std::vector<std::string> generate_site(const ApiGraph& graph, const RelationIndex& relations,
                                       const SiteConfig& config) {
  const auto files = render_site(graph, relations, config);
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw Error(ErrorKind::io_failure,
                "io-failure: " + config.output_dir.string() + ": " + ec.message());
  }
  std::vector<std::string> manifest;
  for (const auto& [path, content] : files) {
    const auto full = config.output_dir / path;
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw Error(ErrorKind::io_failure, "io-failure: cannot write " + full.string());
    manifest.push_back(path);
  }
  std::sort(manifest.begin(), manifest.end());
  return manifest;
}

std::string emit_search_index(const ApiGraph& graph, const RelationIndex& relations,
                              bool include_private) {
  json entities = json::array();
  std::set<std::string> included;
  for (const auto& e : list_entities(graph)) {
    if (!include_private && !e.is_public()) continue;
    included.insert(e.qualified_name);
    json j = json::object();
    j["id"] = e.qualified_name;
    j["name"] = e.name();
    j["tokens"] = tokenize_identifier(e.name());
    j["doc_summary"] = doc_summary(e.doc());
    j["owner"] = nullptr;
    j["receiver"] = nullptr;
    j["params"] = json::array();
    j["ret"] = nullptr;
    j["groups"] = json::array();
    j["type_params"] = json::array();
    j["parents"] = json::array();
    switch (e.kind) {
      case EntityKind::module:
        j["kind"] = "module";
        j["module"] = e.qualified_name;
        break;
      case EntityKind::type: {
        const auto& t = *e.type;
        j["kind"] = std::string(to_string(t.kind));
        j["module"] = join_path(t.module);
        j["type_params"] = t.type_params;
        auto parents = t.supertypes;
        parents.insert(parents.end(), t.implements.begin(), t.implements.end());
        j["parents"] = rendered(parents);
        break;
      }
      case EntityKind::interface: {
        const auto& i = *e.interface;
        j["kind"] = "interface";
        j["module"] = join_path(i.module);
        j["type_params"] = i.type_params;
        j["parents"] = rendered(i.extends);
        break;
      }
      case EntityKind::function: {
        const auto& f = *e.function;
        j["kind"] = "function";
        j["module"] = join_path(f.module);
        j["owner"] = string_or_null(f.owner);
        j["receiver"] = std::string(to_string(f.receiver));
        json params = json::array();
        for (const auto& p : f.params) params.push_back(render(p.type));
        j["params"] = std::move(params);
        j["ret"] = render(f.ret);
        j["groups"] = f.groups;
        j["type_params"] = f.type_params;
        break;
      }
    }
    entities.push_back(std::move(j));
  }

  auto id_map = [&](const auto& map) {
    json out = json::object();
    for (const auto& [name, ids] : map) {
      json arr = json::array();
      for (const auto& id : ids) {
        if (included.contains(id)) arr.push_back(id);
      }
      if (!arr.empty()) out[name] = std::move(arr);
    }
    return out;
  };

  json root = json::object();
  root["version"] = kSearchIndexVersion;
  root["entities"] = std::move(entities);
  root["relations"] = {{"inputs", id_map(relations.inputs)},
                       {"outputs", id_map(relations.outputs)},
                       {"implements", id_map(relations.implements)},
                       {"inherits", id_map(relations.inherited_by)}};
  root["aliases"] = json::object();
  for (const auto& [k, v] : graph.aliases) root["aliases"][k] = v;
  json primitives = graph.primitives;
  std::sort(primitives.begin(), primitives.end());
  root["primitives"] = std::move(primitives);
  return root.dump(2) + "\n";
}

}  // namespace docforge
