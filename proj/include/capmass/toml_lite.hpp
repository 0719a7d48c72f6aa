#pragma once

// Reader for the subset of TOML used by scenario files: comments, [tables],
// [[arrays of tables]], bare or dotted keys, basic strings, integers,
// floats, booleans and (possibly multi-line) arrays of scalars.

#include <map>
#include <string>

#include "json.hpp"

namespace capmass {

struct TomlDocument {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  /// Line of definition for every key, by dotted path; array-of-table
  /// elements use "table[i].key".
  std::map<std::string, int> lines;

  int line_of(const std::string& path) const {
    const auto it = lines.find(path);
    return it == lines.end() ? 0 : it->second;
  }
};

/// Throws ParseError with the offending line and key.
TomlDocument parse_toml(const std::string& text, const std::string& source);

}  // namespace capmass
