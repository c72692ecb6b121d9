#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "docforge/api_model.hpp"
#include "docforge/relations.hpp"
#include "docforge/type_expr.hpp"
#include "docforge/unify.hpp"

namespace docforge {

/// A parsed type lead: a function shape or a bare return-type pattern.
using TypeQuery = std::variant<FunctionShape, TypeExpr>;

/// Parses a type query. "[t]" becomes the list constructor (alias key "[]",
/// default List) and alias keys are rewritten to their targets.
TypeQuery parse_type_query(std::string_view text,
                           const std::map<std::string, std::string>& aliases = {});

enum class Side { query, declaration };

/// Query side: aliases, then case-insensitive canonicalization of heads
/// against declared type, interface, primitive and built-in names. An exact
/// match wins; otherwise a unique case-insensitive match is rewritten; two or
/// more matches throw ambiguous-name.
/// Declaration side: variables are renamed v0, v1, ... by first occurrence.
TypeExpr normalize(const TypeExpr& type, const ApiGraph& graph, Side side = Side::query);
FunctionShape normalize(const FunctionShape& shape, const ApiGraph& graph, Side side);
TypeQuery normalize(const TypeQuery& query, const ApiGraph& graph);

/// Resolves a single type name the same way query heads are resolved.
/// Returns an empty string when nothing matches.
std::string canonical_type_name(std::string_view name, const ApiGraph& graph);

/// Permutations are only explored up to this arity (720 orderings).
inline constexpr std::size_t kPermutationCap = 6;

inline constexpr int kBindingCost = 1;
inline constexpr int kPermutationCost = 2;
inline constexpr int kHopCost = 3;

struct MatchOptions {
  bool allow_permutation = true;
  int max_subtype_hops = 1;
};

struct MatchResult {
  bool matched = false;
  int penalty = 0;
  bool permutation_used = false;
  /// Query parameter i is matched against target parameter permutation[i].
  std::vector<std::size_t> permutation;
  int subtype_hops = 0;
  Substitution bindings;
};

/// Matches a normalized query shape against a desugared, normalized target.
/// Query parameters may generalize to a supertype of the target's parameter
/// and the target's return may specialize the query's, each hop costing
/// kHopCost. penalty = bindings + 2 * (non-identity permutation) + 3 * hops;
/// the cheapest assignment wins, ties going to the lexicographically
/// smallest permutation.
MatchResult signature_match(const FunctionShape& query, const FunctionShape& target,
                            const MatchOptions& options, const RelationIndex& relations);

/// Supertype instantiations of type reachable in at most max_hops edges,
/// paired with their minimal hop count. The type itself comes first at 0.
std::vector<std::pair<TypeExpr, int>> supertype_closure(const TypeExpr& type, int max_hops,
                                                        const RelationIndex& relations);

}  // namespace docforge
