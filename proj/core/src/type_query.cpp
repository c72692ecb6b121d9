#include "docforge/type_query.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <set>

#include "docforge/error.hpp"
#include "docforge/signature.hpp"

namespace docforge {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string alias_target(const std::string& head, const std::map<std::string, std::string>& aliases) {
  if (head.empty()) return head;
  auto it = aliases.find(head);
  return it == aliases.end() ? head : it->second;
}

std::set<std::string> declared_names(const ApiGraph& graph) {
  std::set<std::string> names(graph.primitives.begin(), graph.primitives.end());
  for (const auto& [name, _] : builtin_constructors()) names.insert(name);
  for (const auto& t : graph.types) names.insert(t.name);
  for (const auto& i : graph.interfaces) names.insert(i.name);
  return names;
}

std::string canonical_head(const std::string& head, const std::set<std::string>& declared) {
  if (declared.contains(head)) return head;
  const auto key = lower(head);
  std::vector<std::string> hits;
  for (const auto& name : declared) {
    if (lower(name) == key) hits.push_back(name);
  }
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) return head;
  std::string msg = "ambiguous-name: '" + head + "' matches";
  for (const auto& h : hits) msg += " " + h;
  throw Error(ErrorKind::ambiguous_name, msg);
}

TypeExpr rename_vars(const TypeExpr& type, std::vector<std::string>& order) {
  collect_vars(type, order);
  VarMap renames;
  for (std::size_t i = 0; i < order.size(); ++i) {
    renames.emplace(order[i], TypeExpr::var("v" + std::to_string(i)));
  }
  return substitute(type, renames);
}

}  // namespace

TypeQuery parse_type_query(std::string_view text, const std::map<std::string, std::string>& aliases) {
  SignatureSyntax syntax;
  syntax.optional_param_names = true;
  if (auto it = aliases.find(std::string(kListAliasKey)); it != aliases.end()) {
    syntax.list_constructor = it->second;
  }
  auto parsed = parse_query_syntax(text, syntax);
  auto apply = [&](const TypeExpr& t) {
    return map_heads(t, [&](const std::string& h) { return alias_target(h, aliases); });
  };
  if (auto* shape = std::get_if<FunctionShape>(&parsed)) {
    for (auto& p : shape->params) p.type = apply(p.type);
    shape->ret = apply(shape->ret);
    return *shape;
  }
  return apply(std::get<TypeExpr>(parsed));
}

std::string canonical_type_name(std::string_view name, const ApiGraph& graph) {
  const auto declared = declared_names(graph);
  const auto head = canonical_head(alias_target(std::string(name), graph.aliases), declared);
  return declared.contains(head) ? head : std::string{};
}

TypeExpr normalize(const TypeExpr& type, const ApiGraph& graph, Side side) {
  if (side == Side::declaration) {
    std::vector<std::string> order;
    return rename_vars(type, order);
  }
  const auto declared = declared_names(graph);
  return map_heads(type, [&](const std::string& h) {
    return canonical_head(alias_target(h, graph.aliases), declared);
  });
}

FunctionShape normalize(const FunctionShape& shape, const ApiGraph& graph, Side side) {
  FunctionShape out = shape;
  if (side == Side::query) {
    for (auto& p : out.params) p.type = normalize(p.type, graph, Side::query);
    out.ret = normalize(out.ret, graph, Side::query);
    return out;
  }
  std::vector<std::string> order;
  for (const auto& p : shape.params) collect_vars(p.type, order);
  collect_vars(shape.ret, order);
  VarMap renames;
  for (std::size_t i = 0; i < order.size(); ++i) {
    renames.emplace(order[i], TypeExpr::var("v" + std::to_string(i)));
  }
  for (auto& p : out.params) p.type = substitute(p.type, renames);
  out.ret = substitute(out.ret, renames);
  return out;
}

TypeQuery normalize(const TypeQuery& query, const ApiGraph& graph) {
  if (const auto* shape = std::get_if<FunctionShape>(&query)) {
    return normalize(*shape, graph, Side::query);
  }
  return normalize(std::get<TypeExpr>(query), graph, Side::query);
}

std::vector<std::pair<TypeExpr, int>> supertype_closure(const TypeExpr& type, int max_hops,
                                                        const RelationIndex& relations) {
  std::vector<std::pair<TypeExpr, int>> out{{type, 0}};
  if (!type.is_named()) return out;
  std::size_t frontier_begin = 0;
  for (int hop = 1; hop <= max_hops; ++hop) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const TypeExpr current = out[i].first;
      auto it = relations.parents.find(current.name());
      if (it == relations.parents.end()) continue;
      const auto& edges = it->second;
      if (edges.type_params.size() != current.args().size()) continue;
      VarMap actuals;
      for (std::size_t k = 0; k < edges.type_params.size(); ++k) {
        actuals.emplace(edges.type_params[k], current.args()[k]);
      }
      for (const auto& parent : edges.parents) {
        TypeExpr instantiated = substitute(parent, actuals);
        const bool known = std::any_of(out.begin(), out.end(),
                                       [&](const auto& e) { return e.first == instantiated; });
        if (!known) out.emplace_back(std::move(instantiated), hop);
      }
    }
    frontier_begin = frontier_end;
    if (frontier_begin == out.size()) break;
  }
  return out;
}

namespace {

class Matcher {
 public:
  Matcher(const FunctionShape& query, const FunctionShape& target, const MatchOptions& options,
          const RelationIndex& relations)
      : query_(query), target_(target) {
    const int hops = std::max(0, options.max_subtype_hops);
    for (const auto& p : query.params) {
      param_options_.push_back(supertype_closure(p.type, hops, relations));
    }
    if (query.ret.is_named() && target.ret.is_named()) {
      ret_options_ = supertype_closure(target.ret, hops, relations);
    } else {
      ret_options_ = {{target.ret, 0}};
    }
    permute_ = options.allow_permutation && query.arity() <= kPermutationCap;
  }

  MatchResult run() {
    std::vector<std::size_t> perm(query_.arity());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      const bool identity = std::is_sorted(perm.begin(), perm.end());
      perm_cost_ = identity ? 0 : kPermutationCost;
      if (!best_ || perm_cost_ < best_->penalty) {
        perm_ = &perm;
        search(0, Substitution{}, 0);
      }
    } while (permute_ && std::next_permutation(perm.begin(), perm.end()));
    return best_.value_or(MatchResult{});
  }

 private:
  void search(std::size_t position, const Substitution& subst, int hops) {
    const int bound = static_cast<int>(subst.size()) * kBindingCost + perm_cost_ + hops * kHopCost;
    if (best_ && bound >= best_->penalty) return;
    const std::size_t n = query_.arity();
    if (position == n + 1) {
      MatchResult r;
      r.matched = true;
      r.penalty = bound;
      r.permutation_used = perm_cost_ != 0;
      r.permutation = *perm_;
      r.subtype_hops = hops;
      r.bindings = subst.resolve();
      best_ = std::move(r);
      return;
    }
    if (position < n) {
      const auto& target_param = target_.params[(*perm_)[position]].type;
      for (const auto& [candidate, cost] : param_options_[position]) {
        Substitution next = subst;
        if (unify_into(candidate, target_param, next)) search(position + 1, next, hops + cost);
      }
      return;
    }
    for (const auto& [candidate, cost] : ret_options_) {
      Substitution next = subst;
      if (unify_into(query_.ret, candidate, next)) search(position + 1, next, hops + cost);
    }
  }

  const FunctionShape& query_;
  const FunctionShape& target_;
  std::vector<std::vector<std::pair<TypeExpr, int>>> param_options_;
  std::vector<std::pair<TypeExpr, int>> ret_options_;
  bool permute_ = false;
  int perm_cost_ = 0;
  const std::vector<std::size_t>* perm_ = nullptr;
  std::optional<MatchResult> best_;
};

}  // namespace

MatchResult signature_match(const FunctionShape& query, const FunctionShape& target,
                            const MatchOptions& options, const RelationIndex& relations) {
  if (query.arity() != target.arity()) return {};
  return Matcher(query, target, options, relations).run();
}

}  // namespace docforge
