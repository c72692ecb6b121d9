#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "docforge/ingest.hpp"

namespace docforge {

inline void PrintTo(const Violation& v, std::ostream* os) {
  *os << v.entity << ": " << v.rule << ": " << v.message;
}

}  // namespace docforge

namespace docforge::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DOCFORGE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ApiGraph load_fixture(const std::string& name = "collections.json") {
  return load_api_file(fixture_path(name));
}

}  // namespace docforge::testing
