#include "docforge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "docforge/error.hpp"
#include "docforge/ingest.hpp"
#include "docforge/layout.hpp"
#include "docforge/relations.hpp"
#include "docforge/search.hpp"
#include "docforge/sitegen.hpp"
#include "docforge/type_query.hpp"

namespace docforge::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string format = "text";

  std::string out_dir;
  std::string group_by = "first-arg";
  std::string title = "API reference";
  bool include_private = false;

  std::vector<std::string> query_words;
  std::vector<std::string> filters;
  std::size_t limit = kDefaultLimit;
  std::string synonyms_path;

  std::string type_expr;
  bool no_permute = false;
  int subtype_hops = 1;

  std::map<RelationKind, std::string> rel;

  std::string subject;
  std::size_t width = kDefaultMatrixWidth;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_failure, "io-failure: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::set<Receiver>> parse_receivers(const std::string& text) {
  std::set<Receiver> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::optional<Receiver> r;
    if (item == "ro") r = Receiver::readonly;
    else if (item == "mut") r = Receiver::mutating;
    else if (item == "own") r = Receiver::consuming;
    else r = parse_receiver(item);
    if (!r) return std::nullopt;
    out.insert(*r);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

FilterSpec parse_filters(const std::vector<std::string>& filters, bool include_private) {
  FilterSpec spec;
  spec.include_private = include_private;
  for (const auto& f : filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos || eq + 1 == f.size()) {
      throw UsageError("--filter expects key=value, got '" + f + "'");
    }
    const auto key = f.substr(0, eq);
    const auto value = f.substr(eq + 1);
    if (key == "receiver") {
      auto receivers = parse_receivers(value);
      if (!receivers) throw UsageError("--filter receiver: unknown receiver '" + value + "'");
      spec.receivers = std::move(receivers);
    } else if (key == "owner") {
      spec.owner = value;
    } else if (key == "returns") {
      spec.returns = value;
    } else if (key == "takes") {
      spec.takes = value;
    } else {
      throw UsageError("--filter: unknown key '" + key + "'");
    }
  }
  return spec;
}

Grouping grouping_or_throw(const std::string& text) {
  auto g = parse_grouping(text);
  if (!g) throw UsageError("--group-by: unknown grouping '" + text + "'");
  return *g;
}

std::map<std::string, const FunctionDef*, std::less<>> function_table(const ApiGraph& graph) {
  std::map<std::string, const FunctionDef*, std::less<>> table;
  for (const auto& e : list_entities(graph)) {
    if (e.function != nullptr) table.emplace(e.qualified_name, e.function);
  }
  return table;
}

std::string entity_label(const ApiGraph& graph, const std::string& id) {
  for (const auto& e : list_entities(graph)) {
    if (e.qualified_name != id) continue;
    if (e.function != nullptr) return compact_signature(*e.function);
    if (e.type != nullptr) return std::string(to_string(e.type->kind));
    return std::string(to_string(e.kind));
  }
  return {};
}

void print_results(const Options& opt, const ApiGraph& graph, const std::string& query,
                   const std::vector<SearchResult>& results, bool by_score, std::ostream& out) {
  if (opt.format == "structured") {
    json arr = json::array();
    for (const auto& r : results) {
      json j = {{"id", r.id}, {"explanation", r.explanation}};
      if (by_score) j["score"] = r.score;
      else j["penalty"] = r.penalty;
      arr.push_back(std::move(j));
    }
    out << json{{"query", query}, {"results", arr}}.dump(2) << "\n";
    return;
  }
  if (results.empty()) {
    out << "no results\n";
    return;
  }
  for (const auto& r : results) {
    out << r.id << "  " << entity_label(graph, r.id) << "  ["
        << (by_score ? "score " + std::to_string(r.score) : "penalty " + std::to_string(r.penalty))
        << "]\n";
  }
}

int cmd_build(const Options& opt, std::ostream& out) {
  const auto graph = load_api_file(opt.input);
  const auto rel = build_relation_index(graph);
  SiteConfig config;
  config.output_dir = opt.out_dir;
  config.default_grouping = grouping_or_throw(opt.group_by);
  config.title = opt.title;
  config.include_private = opt.include_private;
  const auto manifest = generate_site(graph, rel, config);
  if (opt.format == "structured") {
    out << json{{"out", opt.out_dir}, {"files", manifest}}.dump(2) << "\n";
  } else {
    out << "wrote " << manifest.size() << " files to " << opt.out_dir << "\n";
  }
  return kExitOk;
}

int cmd_search(const Options& opt, std::ostream& out) {
  const auto spec = parse_filters(opt.filters, false);
  const auto graph = load_api_file(opt.input);
  const auto rel = build_relation_index(graph);
  std::optional<SynonymTable> synonyms;
  if (!opt.synonyms_path.empty()) synonyms = parse_synonyms(read_file(opt.synonyms_path));
  std::string query;
  for (const auto& w : opt.query_words) {
    if (!query.empty()) query += ' ';
    query += w;
  }
  const CompiledFilter filter(graph, rel, spec);
  const auto index = build_keyword_index(graph, spec.include_private);
  KeywordSearchOptions ko;
  ko.limit = opt.limit;
  ko.synonyms = synonyms ? &*synonyms : nullptr;
  print_results(opt, graph, query, keyword_search(index, query, filter, ko), true, out);
  return kExitOk;
}

int cmd_query(const Options& opt, std::ostream& out) {
  const auto spec = parse_filters(opt.filters, false);
  const auto graph = load_api_file(opt.input);
  const auto rel = build_relation_index(graph);
  TypeQuery query;
  try {
    query = normalize(parse_type_query(opt.type_expr, graph.aliases), graph);
  } catch (const ParseError& e) {
    throw Error(e.kind(), std::string("query '") + opt.type_expr + "': " + e.what());
  }
  MatchOptions mo;
  mo.allow_permutation = !opt.no_permute;
  mo.max_subtype_hops = opt.subtype_hops;
  const CompiledFilter filter(graph, rel, spec);
  print_results(opt, graph, opt.type_expr, type_search(graph, rel, query, mo, filter, opt.limit),
                false, out);
  return kExitOk;
}

int cmd_rel(const Options& opt, std::ostream& out) {
  const auto& [kind, name] = *opt.rel.begin();
  const auto graph = load_api_file(opt.input);
  const auto rel = build_relation_index(graph);
  const auto results = relation_query(rel, kind, name);
  if (opt.format == "structured") {
    json arr = json::array();
    for (const auto& id : results) arr.push_back({{"id", id}});
    out << json{{"kind", std::string(to_string(kind))}, {"name", name}, {"results", arr}}.dump(2)
        << "\n";
    return kExitOk;
  }
  if (results.empty()) out << "no results\n";
  for (const auto& id : results) out << id << "\n";
  return kExitOk;
}

int cmd_matrix(const Options& opt, std::ostream& out) {
  const auto grouping = grouping_or_throw(opt.group_by);
  const auto graph = load_api_file(opt.input);
  const auto matrix = build_method_matrix(graph, opt.subject, grouping);
  if (opt.format == "structured") {
    json rows = json::array();
    for (const auto& row : matrix.rows) {
      json cells = json::array();
      for (const auto& c : row.cells) {
        cells.push_back({{"name", c.name}, {"signature", c.signature}, {"target", c.target}});
      }
      rows.push_back({{"label", row.label}, {"cells", cells}});
    }
    out << json{{"subject", opt.subject}, {"grouping", std::string(to_string(grouping))},
                {"rows", rows}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  const auto text = render_matrix_text(matrix, opt.width);
  out << (text.empty() ? std::string("no methods\n") : text);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"docforge: API documentation toolchain", "docforge"};
  app.require_subcommand(1, 1);
  Options opt;

  const std::vector<std::string> groupings = {"first-arg", "receiver", "return", "annotation"};
  const std::vector<std::string> formats = {"text", "structured"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "Interchange document")->required();
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember(formats));
  };

  auto* build = app.add_subcommand("build", "Generate the static site");
  add_common(build);
  build->add_option("--out", opt.out_dir, "Output directory")->required();
  build->add_option("--group-by", opt.group_by, "Default matrix grouping")
      ->check(CLI::IsMember(groupings));
  build->add_option("--title", opt.title, "Site title");
  build->add_flag("--include-private", opt.include_private, "Document private functions");

  auto* search = app.add_subcommand("search", "Keyword search");
  add_common(search);
  search->add_option("query", opt.query_words, "Query words")->required();
  search->add_option("--filter", opt.filters, "key=value (receiver, owner, returns, takes)");
  search->add_option("--limit", opt.limit, "Maximum results");
  search->add_option("--synonyms", opt.synonyms_path, "Synonym table");

  auto* query = app.add_subcommand("query", "Type-directed search");
  add_common(query);
  query->add_option("typeexpr", opt.type_expr, "Type query")->required();
  query->add_flag("--no-permute", opt.no_permute, "Keep parameter order");
  query->add_option("--subtype-hops", opt.subtype_hops, "Maximum subtype hops")
      ->check(CLI::NonNegativeNumber);
  query->add_option("--limit", opt.limit, "Maximum results");
  query->add_option("--filter", opt.filters, "key=value (receiver, owner, returns, takes)");

  auto* rel = app.add_subcommand("rel", "Relation lookup");
  add_common(rel);
  auto* which = rel->add_option_group("relation");
  for (auto kind : {RelationKind::inputs, RelationKind::outputs, RelationKind::contains,
                    RelationKind::implements, RelationKind::inherits}) {
    const std::string flag = "--" + std::string(to_string(kind));
    which->add_option_function<std::string>(
        flag, [&opt, kind](const std::string& v) { opt.rel[kind] = v; }, "Type name");
  }
  which->require_option(1);

  auto* matrix = app.add_subcommand("matrix", "Method matrix for one type");
  add_common(matrix);
  matrix->add_option("type", opt.subject, "Subject type")->required();
  matrix->add_option("--group-by", opt.group_by, "Grouping")->check(CLI::IsMember(groupings));
  matrix->add_option("--width", opt.width, "Line width")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return cmd_build(opt, out);
    if (*search) return cmd_search(opt, out);
    if (*query) return cmd_query(opt, out);
    if (*rel) return cmd_rel(opt, out);
    return cmd_matrix(opt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DocumentError& e) {
    err << "error: " << opt.input << ": " << e.what() << "\n";
    if (!e.report().empty()) err << format_report(e.report());
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace docforge::cli
