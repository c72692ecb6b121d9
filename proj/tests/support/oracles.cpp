#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>

namespace docforge::oracle {
namespace {

bool occurs(const std::string& v, const TypeExpr& t) {
  if (t.is_var()) return t.name() == v;
  for (const auto& c : t.children()) {
    if (occurs(v, c)) return true;
  }
  return false;
}

TypeExpr rebuild(const TypeExpr& t, const std::function<TypeExpr(const TypeExpr&)>& leaf) {
  if (t.is_var()) return leaf(t);
  std::vector<TypeExpr> kids;
  for (const auto& c : t.children()) kids.push_back(rebuild(c, leaf));
  if (t.is_named()) return TypeExpr::named(t.name(), std::move(kids));
  TypeExpr ret = kids.back();
  kids.pop_back();
  return TypeExpr::fn(std::move(kids), std::move(ret));
}

TypeExpr instantiate(const TypeExpr& t, const std::map<std::string, TypeExpr>& actuals) {
  return rebuild(t, [&](const TypeExpr& v) {
    auto it = actuals.find(v.name());
    return it == actuals.end() ? v : it->second;
  });
}

std::vector<std::pair<std::vector<std::string>, std::vector<TypeExpr>>> parent_edges(
    const std::string& name, const ApiGraph& graph) {
  std::vector<std::pair<std::vector<std::string>, std::vector<TypeExpr>>> out;
  for (const auto& t : graph.types) {
    if (t.name != name) continue;
    auto parents = t.supertypes;
    parents.insert(parents.end(), t.implements.begin(), t.implements.end());
    out.emplace_back(t.type_params, parents);
  }
  for (const auto& i : graph.interfaces) {
    if (i.name == name) out.emplace_back(i.type_params, i.extends);
  }
  return out;
}

void all_permutations(std::vector<std::size_t>& current, std::vector<bool>& used, std::size_t n,
                      std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == n) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    current.push_back(i);
    all_permutations(current, used, n, out);
    current.pop_back();
    used[i] = false;
  }
}

void heads(const TypeExpr& t, std::set<std::string>& out) {
  if (t.is_named()) out.insert(t.name());
  for (const auto& c : t.children()) heads(c, out);
}

std::string join(const ModulePath& path) {
  std::string out;
  for (const auto& p : path) {
    if (!out.empty()) out += "::";
    out += p;
  }
  return out;
}

}  // namespace

TypeExpr apply_subst(const Subst& s, const TypeExpr& t) {
  return rebuild(t, [&](const TypeExpr& v) {
    auto it = s.find(v.name());
    return it == s.end() ? v : it->second;
  });
}

bool unify(const TypeExpr& a0, const TypeExpr& b0, Subst& s) {
  const TypeExpr a = apply_subst(s, a0);
  const TypeExpr b = apply_subst(s, b0);
  auto bind = [&](const std::string& v, const TypeExpr& t) {
    if (occurs(v, t)) return false;
    const Subst single{{v, t}};
    for (auto& [_, value] : s) value = apply_subst(single, value);
    s.emplace(v, t);
    return true;
  };
  if (a.is_var() && b.is_var() && a.name() == b.name()) return true;
  if (a.is_var()) return bind(a.name(), b);
  if (b.is_var()) return bind(b.name(), a);
  if (a.kind() != b.kind()) return false;
  if (a.is_named() && a.name() != b.name()) return false;
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!unify(a.children()[i], b.children()[i], s)) return false;
  }
  return true;
}

std::optional<Subst> unify(const TypeExpr& a, const TypeExpr& b) {
  Subst s;
  if (!unify(a, b, s)) return std::nullopt;
  return s;
}

FunctionShape desugar(const FunctionDef& fn, const ApiGraph& graph) {
  FunctionShape shape;
  const bool self = fn.receiver == Receiver::readonly || fn.receiver == Receiver::mutating ||
                    fn.receiver == Receiver::consuming;
  if (self && fn.owner) {
    std::vector<std::string> params;
    for (const auto& t : graph.types) {
      if (t.name == *fn.owner) params = t.type_params;
    }
    for (const auto& i : graph.interfaces) {
      if (i.name == *fn.owner) params = i.type_params;
    }
    std::vector<TypeExpr> args;
    for (const auto& p : params) args.push_back(TypeExpr::var(p));
    shape.params.push_back({"self", TypeExpr::named(*fn.owner, std::move(args))});
  }
  for (const auto& p : fn.params) shape.params.push_back(p);
  shape.ret = fn.ret;
  auto prefix = [](const TypeExpr& t) {
    return rebuild(t, [](const TypeExpr& v) { return TypeExpr::var("~" + v.name()); });
  };
  for (auto& p : shape.params) p.type = prefix(p.type);
  shape.ret = prefix(shape.ret);
  return shape;
}

std::vector<std::pair<TypeExpr, int>> ancestor_paths(const TypeExpr& t, const ApiGraph& graph,
                                                     int max_hops) {
  std::vector<std::pair<TypeExpr, int>> out;
  std::function<void(const TypeExpr&, int)> walk = [&](const TypeExpr& cur, int depth) {
    out.emplace_back(cur, depth);
    if (depth == max_hops || !cur.is_named()) return;
    for (const auto& [params, parents] : parent_edges(cur.name(), graph)) {
      if (params.size() != cur.args().size()) continue;
      std::map<std::string, TypeExpr> actuals;
      for (std::size_t i = 0; i < params.size(); ++i) actuals.emplace(params[i], cur.args()[i]);
      for (const auto& p : parents) walk(instantiate(p, actuals), depth + 1);
    }
  };
  walk(t, 0);
  return out;
}

Match brute_force_match(const FunctionShape& query, const FunctionShape& target,
                        const ApiGraph& graph, bool allow_permutation, int max_hops) {
  const auto n = query.params.size();
  if (n != target.params.size()) return {};

  std::vector<std::vector<std::size_t>> perms;
  if (allow_permutation && n <= 6) {
    std::vector<std::size_t> current;
    std::vector<bool> used(n, false);
    all_permutations(current, used, n, perms);
  } else {
    perms.emplace_back(n);
    std::iota(perms[0].begin(), perms[0].end(), std::size_t{0});
  }

  // Slot i < n: query param i; slot n: target return.
  std::vector<std::vector<std::pair<TypeExpr, int>>> options;
  for (const auto& p : query.params) {
    options.push_back(p.type.is_named() ? ancestor_paths(p.type, graph, max_hops)
                                        : std::vector<std::pair<TypeExpr, int>>{{p.type, 0}});
  }
  if (query.ret.is_named() && target.ret.is_named()) {
    options.push_back(ancestor_paths(target.ret, graph, max_hops));
  } else {
    options.push_back({{target.ret, 0}});
  }

  Match best;
  for (const auto& perm : perms) {
    bool identity = true;
    for (std::size_t i = 0; i < n; ++i) identity = identity && perm[i] == i;
    std::vector<std::size_t> choice(n + 1, 0);
    while (true) {
      Subst s;
      bool ok = true;
      int hops = 0;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const auto& [ty, cost] = options[i][choice[i]];
        ok = unify(ty, target.params[perm[i]].type, s);
        hops += cost;
      }
      if (ok) {
        const auto& [ty, cost] = options[n][choice[n]];
        ok = unify(query.ret, ty, s);
        hops += cost;
      }
      if (ok) {
        const int penalty = static_cast<int>(s.size()) + (identity ? 0 : 2) + 3 * hops;
        if (!best.matched || penalty < best.penalty) best = {true, penalty};
      }
      std::size_t k = 0;
      while (k <= n && ++choice[k] == options[k].size()) choice[k++] = 0;
      if (k > n) break;
    }
  }
  return best;
}

std::vector<std::pair<int, std::string>> brute_force_type_search(const FunctionShape& query,
                                                                 const ApiGraph& graph,
                                                                 bool allow_permutation, int max_hops) {
  std::vector<const FunctionDef*> fns;
  for (const auto& f : graph.functions) fns.push_back(&f);
  for (const auto& i : graph.interfaces) {
    for (const auto& m : i.method_shapes) fns.push_back(&m);
  }
  std::vector<std::pair<int, std::string>> out;
  for (const auto* f : fns) {
    if (f->visibility != Visibility::public_) continue;
    const auto m = brute_force_match(query, desugar(*f, graph), graph, allow_permutation, max_hops);
    if (m.matched) out.emplace_back(m.penalty, qname(*f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Relations rescan(const ApiGraph& graph) {
  Relations r;
  std::vector<const FunctionDef*> fns;
  for (const auto& f : graph.functions) fns.push_back(&f);
  for (const auto& i : graph.interfaces) {
    for (const auto& m : i.method_shapes) fns.push_back(&m);
  }
  for (const auto* f : fns) {
    const auto shape = desugar(*f, graph);
    std::set<std::string> in, out;
    for (const auto& p : shape.params) heads(p.type, in);
    heads(shape.ret, out);
    for (const auto& h : in) r.inputs[h].insert(qname(*f));
    for (const auto& h : out) r.outputs[h].insert(qname(*f));
  }
  for (const auto& t : graph.types) {
    const auto q = join(t.module) + "::" + t.name;
    for (const auto& field : t.fields) {
      std::set<std::string> hs;
      heads(field.type, hs);
      for (const auto& h : hs) r.contains[h].insert({q, field.name});
    }
  }
  return r;
}

std::vector<std::string> tokens(const std::string& name) {
  // Character classes: u upper, l lower (and non-ASCII), d digit, x separator.
  auto cls = [](unsigned char c) {
    if (c >= 0x80) return 'l';
    if (std::isupper(c)) return 'u';
    if (std::islower(c)) return 'l';
    if (std::isdigit(c)) return 'd';
    return 'x';
  };
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::string low;
    for (unsigned char c : cur) low += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    out.push_back(low);
    cur.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = cls(static_cast<unsigned char>(name[i]));
    if (c == 'x') {
      flush();
      continue;
    }
    if (!cur.empty()) {
      const char p = cls(static_cast<unsigned char>(cur.back()));
      const char n = i + 1 < name.size() ? cls(static_cast<unsigned char>(name[i + 1])) : 'x';
      const bool boundary = (c == 'd') != (p == 'd') ||            // digit run edges
                            (p == 'l' && c == 'u') ||              // camelCase
                            (p == 'u' && c == 'u' && n == 'l');    // HTTPServer
      if (boundary) flush();
    }
    cur += name[i];
  }
  flush();
  return out;
}

std::string qname(const FunctionDef& fn) {
  std::string out = join(fn.module);
  if (fn.owner) out += "::" + *fn.owner;
  return out + "::" + fn.name;
}

}  // namespace docforge::oracle
