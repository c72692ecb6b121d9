#include "docforge/search.hpp"

#include <algorithm>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "docforge/error.hpp"

namespace docforge {

std::string_view to_string(PostingField field) noexcept {
  switch (field) {
    case PostingField::name: return "name";
    case PostingField::owner: return "owner";
    case PostingField::doc: return "doc";
  }
  return "name";
}

KeywordIndex build_keyword_index(const ApiGraph& graph, bool include_private) {
  KeywordIndex index;
  for (const auto& e : list_entities(graph)) {
    if (!include_private && !e.is_public()) continue;
    const auto name = e.name();
    index.full_names[to_lower_ascii(name)].push_back(e.qualified_name);
    for (auto& t : tokenize_identifier(name)) {
      index.postings[t].push_back({e.qualified_name, PostingField::name});
    }
    if (e.function != nullptr && e.function->owner) {
      for (auto& t : tokenize_identifier(*e.function->owner)) {
        index.postings[t].push_back({e.qualified_name, PostingField::owner});
      }
    }
    for (auto& t : tokenize_text(doc_body(e.doc()))) {
      index.postings[t].push_back({e.qualified_name, PostingField::doc});
    }
  }
  for (auto& [_, list] : index.postings) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  for (auto& [_, list] : index.full_names) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return index;
}

SynonymTable parse_synonyms(std::string_view json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::malformed_document,
                std::string("malformed-document: synonym table: ") + e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorKind::malformed_document,
                "malformed-document: synonym table must be an object");
  }
  SynonymTable table;
  for (const auto& [key, value] : root.items()) {
    if (!value.is_array()) {
      throw Error(ErrorKind::malformed_document,
                  "malformed-document: synonyms for '" + key + "' must be an array");
    }
    auto& out = table[to_lower_ascii(key)];
    for (const auto& v : value) {
      if (!v.is_string()) {
        throw Error(ErrorKind::malformed_document,
                    "malformed-document: synonyms for '" + key + "' must be strings");
      }
      for (auto& t : tokenize_text(v.get<std::string>())) out.push_back(std::move(t));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Filters

CompiledFilter::CompiledFilter(const ApiGraph& graph, const RelationIndex& relations,
                               const FilterSpec& spec)
    : spec_(spec) {
  auto resolve = [&](std::optional<std::string>& name, const char* what) {
    if (!name) return;
    std::string canonical;
    try {
      canonical = canonical_type_name(*name, graph);
    } catch (const Error& e) {
      throw Error(ErrorKind::unknown_filter_name,
                  std::string("unknown-filter-name: ") + what + "=" + *name + ": " + e.what());
    }
    if (canonical.empty()) {
      throw Error(ErrorKind::unknown_filter_name, std::string("unknown-filter-name: ") + what +
                                                      "=" + *name + " does not name a type");
    }
    name = canonical;
  };
  resolve(spec_.owner, "owner");
  resolve(spec_.returns, "returns");
  resolve(spec_.takes, "takes");
  any_constraint_ = spec_.receivers || spec_.owner || spec_.returns || spec_.takes;

  if (spec_.returns) {
    auto got = relation_query(relations, RelationKind::outputs, *spec_.returns);
    returning_.insert(got.begin(), got.end());
  }
  if (spec_.takes) {
    auto got = relation_query(relations, RelationKind::inputs, *spec_.takes);
    taking_.insert(got.begin(), got.end());
  }
  for (const auto& e : list_entities(graph)) {
    Facts f{e.kind, Receiver::none, std::nullopt, e.is_public()};
    if (e.function != nullptr) {
      f.receiver = e.function->receiver;
      f.owner = e.function->owner;
    }
    facts_.emplace(e.qualified_name, std::move(f));
  }
}

bool CompiledFilter::accepts(const EntityRef& entity) const {
  return accepts(entity.qualified_name);
}

bool CompiledFilter::accepts(std::string_view qualified_name) const {
  auto it = facts_.find(qualified_name);
  if (it == facts_.end()) return !any_constraint_;
  const Facts& f = it->second;
  if (!f.is_public && !spec_.include_private) return false;
  if (!any_constraint_) return true;
  if (f.kind != EntityKind::function) return false;
  if (spec_.receivers && !spec_.receivers->contains(f.receiver)) return false;
  if (spec_.owner && f.owner != spec_.owner) return false;
  if (spec_.returns && !returning_.contains(qualified_name)) return false;
  if (spec_.takes && !taking_.contains(qualified_name)) return false;
  return true;
}

std::vector<std::string> apply_filters(const ApiGraph& graph, const RelationIndex& relations,
                                       const std::vector<std::string>& candidates,
                                       const FilterSpec& filters) {
  const CompiledFilter filter(graph, relations, filters);
  std::vector<std::string> out;
  for (const auto& c : candidates) {
    if (filter.accepts(c)) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Keyword search

namespace {

struct Contribution {
  int score = 0;
  std::string why;
};

using Contributions = std::unordered_map<std::string, Contribution>;

void offer(Contributions& c, const std::string& entity, int score, std::string why) {
  auto& slot = c[entity];
  if (score > slot.score) slot = {score, std::move(why)};
}

Contributions score_token(const KeywordIndex& index, const std::string& token) {
  Contributions c;
  if (auto it = index.full_names.find(token); it != index.full_names.end()) {
    for (const auto& e : it->second) offer(c, e, kScoreFullName, token + ": full name");
  }
  if (auto it = index.postings.find(token); it != index.postings.end()) {
    for (const auto& p : it->second) {
      switch (p.field) {
        case PostingField::name: offer(c, p.entity, kScoreNameToken, token + ": name token"); break;
        case PostingField::owner: offer(c, p.entity, kScoreOwnerToken, token + ": owner token"); break;
        case PostingField::doc: offer(c, p.entity, kScoreDocToken, token + ": doc token"); break;
      }
    }
  }
  for (auto it = index.postings.lower_bound(token); it != index.postings.end(); ++it) {
    if (it->first.compare(0, token.size(), token) != 0) break;
    for (const auto& p : it->second) {
      if (p.field == PostingField::name) {
        offer(c, p.entity, kScoreNamePrefix, token + ": prefix of " + it->first);
      }
    }
  }
  for (const auto& [key, list] : index.postings) {
    if (key.find(token) == std::string::npos) continue;
    for (const auto& p : list) {
      if (p.field == PostingField::name) {
        offer(c, p.entity, kScoreNameSubstring, token + ": substring of " + key);
      }
    }
  }
  return c;
}

}  // namespace

std::vector<SearchResult> keyword_search(const KeywordIndex& index, std::string_view query,
                                         const CompiledFilter& filter,
                                         const KeywordSearchOptions& options) {
  std::vector<std::string> tokens;
  for (auto& t : tokenize_text(query)) {
    if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) tokens.push_back(std::move(t));
  }

  std::map<std::string, SearchResult> totals;
  auto add = [&](const std::string& entity, int score, std::string why) {
    auto& r = totals[entity];
    r.id = entity;
    r.score += score;
    r.explanation.push_back(std::move(why) + " (+" + std::to_string(score) + ")");
  };

  for (const auto& t : tokens) {
    for (auto& [entity, c] : score_token(index, t)) add(entity, c.score, std::move(c.why));
  }
  if (options.synonyms != nullptr) {
    std::vector<std::pair<std::string, std::string>> extra;
    for (const auto& t : tokens) {
      auto it = options.synonyms->find(t);
      if (it == options.synonyms->end()) continue;
      for (const auto& s : it->second) {
        const bool seen = std::find(tokens.begin(), tokens.end(), s) != tokens.end() ||
                          std::any_of(extra.begin(), extra.end(),
                                      [&](const auto& e) { return e.second == s; });
        if (!seen) extra.emplace_back(t, s);
      }
    }
    for (const auto& [origin, s] : extra) {
      for (auto& [entity, c] : score_token(index, s)) {
        if (c.score > 0) add(entity, kScoreSynonym, origin + "~" + c.why + " [synonym]");
      }
    }
  }

  std::vector<SearchResult> results;
  for (auto& [entity, r] : totals) {
    if (r.score <= 0 || !filter.accepts(entity)) continue;
    std::sort(r.explanation.begin(), r.explanation.end());
    results.push_back(std::move(r));
  }
  std::sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (options.limit != 0 && results.size() > options.limit) results.resize(options.limit);
  return results;
}

// ---------------------------------------------------------------------------
// Type search

std::vector<SearchResult> type_search(const ApiGraph& graph, const RelationIndex& relations,
                                      const TypeQuery& query, const MatchOptions& options,
                                      const CompiledFilter& filter, std::size_t limit) {
  std::vector<SearchResult> results;
  for (const auto* f : all_functions(graph)) {
    if (!f->is_public() && !filter.include_private()) continue;
    const auto id = qualified_name(*f);
    if (!filter.accepts(id)) continue;
    const auto target = normalize(desugar_method(*f, graph), graph, Side::declaration);

    SearchResult r;
    r.id = id;
    if (const auto* shape = std::get_if<FunctionShape>(&query)) {
      const auto m = signature_match(*shape, target, options, relations);
      if (!m.matched) continue;
      r.penalty = m.penalty;
      r.explanation = describe_bindings(m.bindings);
      if (m.permutation_used) r.explanation.push_back("parameters permuted");
      if (m.subtype_hops > 0) {
        r.explanation.push_back("subtype hops: " + std::to_string(m.subtype_hops));
      }
    } else {
      auto subst = unify(std::get<TypeExpr>(query), target.ret);
      if (!subst) continue;
      r.penalty = static_cast<int>(subst->size()) * kBindingCost;
      r.explanation = describe_bindings(*subst);
    }
    results.push_back(std::move(r));
  }
  std::sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.penalty != b.penalty) return a.penalty < b.penalty;
    return a.id < b.id;
  });
  if (limit != 0 && results.size() > limit) results.resize(limit);
  return results;
}

}  // namespace docforge
