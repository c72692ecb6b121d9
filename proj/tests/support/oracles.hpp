#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "docforge/api_model.hpp"
#include "docforge/type_expr.hpp"

// Reference implementations used only by tests. They share data types with
// the library but none of its algorithms.
namespace docforge::oracle {

/// Idempotent substitution: values never mention bound variables.
using Subst = std::map<std::string, TypeExpr>;

TypeExpr apply_subst(const Subst& s, const TypeExpr& t);
bool unify(const TypeExpr& a, const TypeExpr& b, Subst& s);
std::optional<Subst> unify(const TypeExpr& a, const TypeExpr& b);

/// Variables renamed with a "~" prefix so they never collide with query
/// variables.
FunctionShape desugar(const FunctionDef& fn, const ApiGraph& graph);

/// Every (ancestor, path length) reachable in at most max_hops parent edges,
/// including the type itself at length 0. Duplicates are kept.
std::vector<std::pair<TypeExpr, int>> ancestor_paths(const TypeExpr& t, const ApiGraph& graph,
                                                     int max_hops);

struct Match {
  bool matched = false;
  int penalty = 0;
};

/// Exhaustive over every permutation and every hop assignment.
Match brute_force_match(const FunctionShape& query, const FunctionShape& target,
                        const ApiGraph& graph, bool allow_permutation, int max_hops);

/// Ordered (penalty, id) list a type search should return for a shape query.
std::vector<std::pair<int, std::string>> brute_force_type_search(const FunctionShape& query,
                                                                 const ApiGraph& graph,
                                                                 bool allow_permutation, int max_hops);

struct Relations {
  std::map<std::string, std::set<std::string>> inputs;
  std::map<std::string, std::set<std::string>> outputs;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> contains;
};

Relations rescan(const ApiGraph& graph);

/// Lowercase tokens per the identifier rules, written from scratch.
std::vector<std::string> tokens(const std::string& name);

std::string qname(const FunctionDef& fn);

}  // namespace docforge::oracle
