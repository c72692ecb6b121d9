#include "docforge/tokenize.hpp"

namespace docforge {

namespace {

enum class CharClass { upper, lower, digit, separator };

CharClass classify(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return CharClass::lower;  // UTF-8 bytes stay inside a token
  if (c >= 'A' && c <= 'Z') return CharClass::upper;
  if (c >= 'a' && c <= 'z') return CharClass::lower;
  if (c >= '0' && c <= '9') return CharClass::digit;
  return CharClass::separator;
}

bool is_letter(CharClass c) noexcept { return c == CharClass::upper || c == CharClass::lower; }

}  // namespace

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> tokenize_identifier(std::string_view name) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(to_lower_ascii(current));
    current.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const CharClass cur = classify(name[i]);
    if (cur == CharClass::separator) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const CharClass prev = classify(name[i - 1]);
      const bool next_lower = i + 1 < name.size() && classify(name[i + 1]) == CharClass::lower;
      const bool boundary =
          (prev == CharClass::lower && cur == CharClass::upper) ||
          (is_letter(prev) && cur == CharClass::digit) ||
          (prev == CharClass::digit && is_letter(cur)) ||
          (prev == CharClass::upper && cur == CharClass::upper && next_lower);
      if (boundary) flush();
    }
    current += name[i];
  }
  flush();
  return tokens;
}

std::vector<std::string> tokenize_text(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (classify(c) == CharClass::separator) {
      if (!current.empty()) tokens.push_back(to_lower_ascii(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(to_lower_ascii(current));
  return tokens;
}

}  // namespace docforge
