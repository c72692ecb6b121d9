#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/api_model.hpp"
#include "docforge/layout.hpp"
#include "docforge/relations.hpp"

namespace docforge {

inline constexpr int kSearchIndexVersion = 1;
inline constexpr std::string_view kSearchIndexFile = "search-index.json";

struct SiteConfig {
  std::filesystem::path output_dir;
  Grouping default_grouping = Grouping::first_arg;
  std::string title = "API reference";
  bool include_private = false;
};

/// Flat page name: "collections::List::len" -> "collections.List.len.html".
std::string page_name(std::string_view qualified_name);

/// Renders every page in memory: relative path -> file content.
std::map<std::string, std::string> render_site(const ApiGraph& graph, const RelationIndex& relations,
                                               const SiteConfig& config);

/// Writes render_site() output under config.output_dir and returns the
/// sorted list of relative paths written. Throws io-failure naming the path.
std::vector<std::string> generate_site(const ApiGraph& graph, const RelationIndex& relations,
                                       const SiteConfig& config);

/// Machine-readable index consumed by the browser frontend; canonical JSON.
std::string emit_search_index(const ApiGraph& graph, const RelationIndex& relations,
                              bool include_private = false);

}  // namespace docforge
