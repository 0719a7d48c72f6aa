#include "capmass/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "capmass/errors.hpp"

namespace capmass {
namespace {

using Json = nlohmann::ordered_json;

class Reader {
 public:
  Reader(const std::string& text, const std::string& source) : source_(source) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  TomlDocument parse() {
    current_ = &doc_.root;
    prefix_.clear();
    for (row_ = 0; row_ < lines_.size(); ++row_) {
      text_ = &lines_[row_];
      pos_ = 0;
      skip_space();
      if (at_end() || peek() == '#') continue;
      if (peek() == '[') {
        header();
      } else {
        assignment();
      }
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ParseError(source_, int(row_) + 1, field, message);
  }

  bool at_end() const { return pos_ >= text_->size(); }
  char peek() const { return (*text_)[pos_]; }
  void skip_space() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  void expect_line_end(const std::string& field) {
    skip_space();
    if (!at_end() && peek() != '#') fail(field, "unexpected trailing characters");
  }

  std::string bare_key() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (pos_ == start) fail("", "expected a key");
    return text_->substr(start, pos_ - start);
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts;
    for (;;) {
      skip_space();
      parts.push_back(peek() == '"' ? basic_string("") : bare_key());
      skip_space();
      if (at_end() || peek() != '.') break;
      ++pos_;
    }
    return parts;
  }

  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ".") + p;
    return out;
  }

  // Walks to (creating) the table at `parts`, descending into the last
  // element of arrays of tables.
  Json* descend(Json* node, const std::vector<std::string>& parts, std::string& path) {
    for (const auto& p : parts) {
      path += (path.empty() ? "" : ".") + p;
      if (!node->contains(p)) (*node)[p] = Json::object();
      Json* next = &(*node)[p];
      if (next->is_array()) {
        if (next->empty() || !next->back().is_object()) fail(path, "key is not a table");
        path += "[" + std::to_string(next->size() - 1) + "]";
        next = &next->back();
      } else if (!next->is_object()) {
        fail(path, "key already holds a value");
      }
      node = next;
    }
    return node;
  }

  void header() {
    ++pos_;
    const bool array = !at_end() && peek() == '[';
    if (array) ++pos_;
    const std::vector<std::string> parts = dotted_key();
    const std::string name = join(parts);
    if (at_end() || peek() != ']') fail(name, "unterminated table header");
    ++pos_;
    if (array) {
      if (at_end() || peek() != ']') fail(name, "unterminated array-of-tables header");
      ++pos_;
    }
    expect_line_end(name);

    std::string path;
    if (array) {
      std::vector<std::string> parent(parts.begin(), parts.end() - 1);
      Json* table = descend(&doc_.root, parent, path);
      const std::string& last = parts.back();
      path += (path.empty() ? "" : ".") + last;
      if (!table->contains(last)) (*table)[last] = Json::array();
      Json& list = (*table)[last];
      if (!list.is_array()) fail(name, "key is not an array of tables");
      list.push_back(Json::object());
      path += "[" + std::to_string(list.size() - 1) + "]";
      current_ = &list.back();
    } else {
      if (defined_tables_.count(name)) fail(name, "table defined twice");
      defined_tables_.insert(name);
      current_ = descend(&doc_.root, parts, path);
    }
    doc_.lines[path] = int(row_) + 1;
    prefix_ = path;
  }

  void assignment() {
    const std::vector<std::string> parts = dotted_key();
    std::string path = prefix_;
    std::vector<std::string> parent(parts.begin(), parts.end() - 1);
    Json* table = descend(current_, parent, path);
    const std::string& key = parts.back();
    path += (path.empty() ? "" : ".") + key;
    skip_space();
    if (at_end() || peek() != '=') fail(path, "expected '='");
    ++pos_;
    skip_space();
    if (table->contains(key)) fail(path, "duplicate key");
    const int line = int(row_) + 1;
    Json v = value(path);
    expect_line_end(path);
    (*table)[key] = std::move(v);
    doc_.lines[path] = line;
  }

  Json value(const std::string& field) {
    if (at_end()) fail(field, "missing value");
    const char c = peek();
    if (c == '"') return basic_string(field);
    if (c == '[') return array(field);
    if (c == '{') fail(field, "inline tables are not supported");
    if (text_->compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (text_->compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    return number(field);
  }

  std::string basic_string(const std::string& field) {
    ++pos_;
    std::string out;
    for (;;) {
      if (at_end()) fail(field, "unterminated string");
      const char c = (*text_)[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail(field, "unterminated escape");
      const char e = (*text_)[pos_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(field, std::string("unsupported escape \\") + e);
      }
    }
  }

  Json number(const std::string& field) {
    const std::size_t start = pos_;
    while (!at_end() && peek() != ',' && peek() != ']' && peek() != '#' && peek() != ' ' && peek() != '\t') ++pos_;
    std::string token = text_->substr(start, pos_ - start);
    std::string digits;
    for (char ch : token)
      if (ch != '_') digits += ch;
    if (digits.empty()) fail(field, "missing value");

    const std::string unsigned_part = (digits[0] == '+' || digits[0] == '-') ? digits.substr(1) : digits;
    const bool negative = digits[0] == '-';
    if (unsigned_part == "inf") return negative ? -std::numeric_limits<double>::infinity()
                                                : std::numeric_limits<double>::infinity();
    if (unsigned_part == "nan") return std::numeric_limits<double>::quiet_NaN();

    const bool integral = digits.find_first_of(".eE") == std::string::npos;
    const char* first = digits.data() + (digits[0] == '+' ? 1 : 0);
    const char* last = digits.data() + digits.size();
    if (integral) {
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc() && ptr == last) return v;
    } else {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc() && ptr == last) return v;
    }
    fail(field, "invalid value '" + token + "'");
  }

  // Arrays may continue over several lines; comments are allowed between
  // elements.
  Json array(const std::string& field) {
    ++pos_;
    Json out = Json::array();
    for (;;) {
      skip_blank(field);
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      out.push_back(value(field + "[" + std::to_string(out.size()) + "]"));
      skip_blank(field);
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != ']') {
        fail(field, "expected ',' or ']' in array");
      }
    }
  }

  void skip_blank(const std::string& field) {
    for (;;) {
      skip_space();
      if (!at_end() && peek() != '#') return;
      if (row_ + 1 >= lines_.size()) fail(field, "unterminated array");
      ++row_;
      text_ = &lines_[row_];
      pos_ = 0;
    }
  }

  std::string source_;
  std::vector<std::string> lines_;
  std::size_t row_ = 0;
  const std::string* text_ = nullptr;
  std::size_t pos_ = 0;
  TomlDocument doc_;
  Json* current_ = nullptr;
  std::string prefix_;
  std::set<std::string> defined_tables_;
};

}  // namespace

TomlDocument parse_toml(const std::string& text, const std::string& source) {
  return Reader(text, source).parse();
}

}  // namespace capmass
