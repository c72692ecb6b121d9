#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace docforge {

/// Splits an identifier on underscores, lower->upper case boundaries and
/// letter/digit boundaries. An uppercase run followed by a lowercase letter
/// splits before its last uppercase letter ("HTTPServer2" -> http, server, 2).
/// Tokens are lowercased; empty tokens are dropped.
std::vector<std::string> tokenize_identifier(std::string_view name);

/// Free-text rule used for doc comments and keyword queries: split on
/// whitespace and ASCII punctuation, lowercase.
std::vector<std::string> tokenize_text(std::string_view text);

std::string to_lower_ascii(std::string_view text);

}  // namespace docforge
