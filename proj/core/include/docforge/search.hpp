#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/api_model.hpp"
#include "docforge/relations.hpp"
#include "docforge/tokenize.hpp"
#include "docforge/type_query.hpp"

namespace docforge {

// Keyword scoring weights. Per query token the best applicable class counts.
inline constexpr int kScoreFullName = 100;
inline constexpr int kScoreNameToken = 40;
inline constexpr int kScoreNamePrefix = 25;
inline constexpr int kScoreNameSubstring = 10;
inline constexpr int kScoreOwnerToken = 15;
inline constexpr int kScoreDocToken = 5;
inline constexpr int kScoreSynonym = kScoreDocToken;

inline constexpr std::size_t kDefaultLimit = 20;

enum class PostingField { name, owner, doc };

std::string_view to_string(PostingField field) noexcept;

struct Posting {
  std::string entity;
  PostingField field;

  friend auto operator<=>(const Posting&, const Posting&) = default;
};

struct KeywordIndex {
  /// token -> sorted, duplicate-free (entity, field) pairs.
  std::map<std::string, std::vector<Posting>, std::less<>> postings;
  /// lowercased entity name -> qualified names, for full-name matches.
  std::map<std::string, std::vector<std::string>, std::less<>> full_names;
};

KeywordIndex build_keyword_index(const ApiGraph& graph, bool include_private = false);

/// Token -> extra query tokens, applied at doc-match weight.
using SynonymTable = std::map<std::string, std::vector<std::string>, std::less<>>;

/// Parses a JSON object mapping tokens to token arrays. Throws
/// malformed-document on bad input.
SynonymTable parse_synonyms(std::string_view json_text);

struct FilterSpec {
  std::optional<std::set<Receiver>> receivers;
  std::optional<std::string> owner;
  std::optional<std::string> returns;
  std::optional<std::string> takes;
  bool include_private = false;
};

/// A FilterSpec resolved against one graph. Type names are canonicalized
/// case-insensitively; unresolvable names throw unknown-filter-name.
class CompiledFilter {
 public:
  /// Accepts every public entity.
  CompiledFilter() = default;
  CompiledFilter(const ApiGraph& graph, const RelationIndex& relations, const FilterSpec& spec);

  [[nodiscard]] bool accepts(const EntityRef& entity) const;
  [[nodiscard]] bool accepts(std::string_view qualified_name) const;
  [[nodiscard]] bool include_private() const noexcept { return spec_.include_private; }

 private:
  struct Facts {
    EntityKind kind;
    Receiver receiver;
    std::optional<std::string> owner;
    bool is_public;
  };

  std::map<std::string, Facts, std::less<>> facts_;
  FilterSpec spec_;
  std::set<std::string, std::less<>> returning_;
  std::set<std::string, std::less<>> taking_;
  bool any_constraint_ = false;
};

/// Keeps candidates that satisfy every present constraint, in input order.
std::vector<std::string> apply_filters(const ApiGraph& graph, const RelationIndex& relations,
                                       const std::vector<std::string>& candidates,
                                       const FilterSpec& filters);

struct SearchResult {
  std::string id;
  int score = 0;    // keyword search
  int penalty = 0;  // type search
  std::vector<std::string> explanation;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

struct KeywordSearchOptions {
  std::size_t limit = kDefaultLimit;
  const SynonymTable* synonyms = nullptr;
};

/// Results ordered by score descending, then qualified name.
std::vector<SearchResult> keyword_search(const KeywordIndex& index, std::string_view query,
                                         const CompiledFilter& filter = {},
                                         const KeywordSearchOptions& options = {});

/// query must already be normalized. Function-shape queries rank matched
/// public functions by penalty; bare types match against return types by
/// unification. Results ordered by penalty ascending, then qualified name.
/// A limit of 0 keeps every result.
std::vector<SearchResult> type_search(const ApiGraph& graph, const RelationIndex& relations,
                                      const TypeQuery& query, const MatchOptions& options = {},
                                      const CompiledFilter& filter = {}, std::size_t limit = 0);

}  // namespace docforge
