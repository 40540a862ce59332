#include "aces/tomlite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aces::tomlite {

Value Value::string(std::string s) {
  Value v;
  v.kind_ = Kind::String;
  v.str_ = std::move(s);
  return v;
}

Value Value::integer(std::int64_t x) {
  Value v;
  v.kind_ = Kind::Integer;
  v.int_ = x;
  return v;
}

Value Value::floating(double x) {
  Value v;
  v.kind_ = Kind::Float;
  v.float_ = x;
  return v;
}

Value Value::boolean(bool x) {
  Value v;
  v.kind_ = Kind::Boolean;
  v.bool_ = x;
  return v;
}

Value Value::array() {
  Value v;
  v.kind_ = Kind::Array;
  v.array_ = std::make_shared<Array>();
  return v;
}

Value Value::table() {
  Value v;
  v.kind_ = Kind::Table;
  v.table_ = std::make_shared<Table>();
  return v;
}

namespace {
[[noreturn]] void kind_error(const char* want) {
  throw std::runtime_error(std::string("config value is not a ") + want);
}
}  // namespace

const std::string& Value::as_string() const {
  if (kind_ != Kind::String) kind_error("string");
  return str_;
}

std::int64_t Value::as_integer() const {
  if (kind_ != Kind::Integer) kind_error("integer");
  return int_;
}

double Value::as_number() const {
  if (kind_ == Kind::Integer) return static_cast<double>(int_);
  if (kind_ == Kind::Float) return float_;
  kind_error("number");
}

bool Value::as_boolean() const {
  if (kind_ != Kind::Boolean) kind_error("boolean");
  return bool_;
}

const Array& Value::as_array() const {
  if (kind_ != Kind::Array || !array_) kind_error("array");
  return *array_;
}

const Table& Value::as_table() const {
  if (kind_ != Kind::Table || !table_) kind_error("table");
  return *table_;
}

Table& Value::mutable_table() {
  if (kind_ != Kind::Table) kind_error("table");
  if (!table_) table_ = std::make_shared<Table>();
  return *table_;
}

Array& Value::mutable_array() {
  if (kind_ != Kind::Array) kind_error("array");
  if (!array_) array_ = std::make_shared<Array>();
  return *array_;
}

bool Value::contains(const std::string& key) const { return find(key) != nullptr; }

const Value& Value::at(const std::string& key) const {
  const Value* v = find(key);
  if (!v) throw std::runtime_error("missing config key: " + key);
  return *v;
}

const Value* Value::find(const std::string& key) const {
  if (kind_ != Kind::Table || !table_) return nullptr;
  auto it = table_->find(key);
  return it == table_->end() ? nullptr : &it->second;
}

namespace {

class Parser {
 public:
  Parser(std::string_view content, std::string source)
      : content_(content), source_(std::move(source)) {}

  Value run() {
    Value root = Value::table();
    Value* current = &root;
    while (!at_end()) {
      skip_ws_and_comments();
      if (at_end()) break;
      if (peek() == '[') {
        current = parse_table_header(root);
      } else {
        parse_assignment(*current);
      }
    }
    return root;
  }

 private:
  bool at_end() const { return pos_ >= content_.size(); }
  char peek() const { return content_[pos_]; }

  char advance() {
    char c = content_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(source_ + ":" + std::to_string(line_) + ": " + msg);
  }

  void skip_inline_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_ws_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect_line_end() {
    skip_inline_ws();
    if (!at_end() && peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    }
    if (at_end()) return;
    if (peek() == '\r') ++pos_;
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    advance();
  }

  std::string parse_bare_key() {
    std::string key;
    while (!at_end()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        key.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    if (key.empty()) fail("expected key");
    return key;
  }

  std::vector<std::string> parse_dotted_key() {
    std::vector<std::string> parts;
    parts.push_back(parse_bare_key());
    while (!at_end() && peek() == '.') {
      ++pos_;
      parts.push_back(parse_bare_key());
    }
    return parts;
  }

  Value* descend(Value& root, const std::vector<std::string>& parts, bool array_of_tables) {
    Value* node = &root;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Table& tbl = node->mutable_table();
      bool last = (i + 1 == parts.size());
      auto it = tbl.find(parts[i]);
      if (last && array_of_tables) {
        if (it == tbl.end()) it = tbl.emplace(parts[i], Value::array()).first;
        if (!it->second.is_array()) fail("redefinition of key " + parts[i]);
        it->second.mutable_array().push_back(Value::table());
        return &it->second.mutable_array().back();
      }
      if (it == tbl.end()) it = tbl.emplace(parts[i], Value::table()).first;
      Value& v = it->second;
      if (v.is_array()) {
        if (v.as_array().empty()) fail("cannot extend empty table array " + parts[i]);
        node = &it->second.mutable_array().back();
      } else if (v.is_table()) {
        node = &it->second;
      } else {
        fail("key " + parts[i] + " is not a table");
      }
    }
    return node;
  }

  Value* parse_table_header(Value& root) {
    advance();  // '['
    bool array_of_tables = false;
    if (!at_end() && peek() == '[') {
      advance();
      array_of_tables = true;
    }
    skip_inline_ws();
    std::vector<std::string> parts = parse_dotted_key();
    skip_inline_ws();
    if (at_end() || advance() != ']') fail("expected ']' in table header");
    if (array_of_tables) {
      if (at_end() || advance() != ']') fail("expected ']]' in table header");
    }
    expect_line_end();
    return descend(root, parts, array_of_tables);
  }

  void parse_assignment(Value& table) {
    std::string key = parse_bare_key();
    skip_inline_ws();
    if (at_end() || advance() != '=') fail("expected '=' after key " + key);
    skip_inline_ws();
    Value v = parse_value();
    Table& tbl = table.mutable_table();
    if (tbl.count(key)) fail("duplicate key " + key);
    tbl.emplace(key, std::move(v));
    expect_line_end();
  }

  Value parse_value() {
    if (at_end()) fail("expected value");
    char c = peek();
    if (c == '"') return Value::string(parse_basic_string());
    if (c == '[') return parse_array();
    if (c == 't' || c == 'f') return parse_boolean();
    return parse_number();
  }

  std::string parse_basic_string() {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = advance();
      if (c == '"') break;
      if (c == '\n') fail("newline in string");
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        char e = advance();
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  Value parse_boolean() {
    if (content_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return Value::boolean(true);
    }
    if (content_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return Value::boolean(false);
    }
    fail("expected boolean");
  }

  Value parse_number() {
    std::size_t start = pos_;
    bool is_float = false;
    if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' || c == 'e' || c == 'E') {
        is_float = true;
        ++pos_;
        if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      } else if (c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    std::string raw(content_.substr(start, pos_ - start));
    std::erase(raw, '_');
    if (raw.empty() || raw == "+" || raw == "-") fail("expected number");
    if (is_float) {
      return Value::floating(std::stod(raw));
    }
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc() || p != raw.data() + raw.size()) fail("bad integer " + raw);
    return Value::integer(v);
  }

  Value parse_array() {
    advance();  // '['
    Value arr = Value::array();
    while (true) {
      skip_ws_and_comments();
      if (at_end()) fail("unterminated array");
      if (peek() == ']') {
        advance();
        break;
      }
      arr.mutable_array().push_back(parse_value());
      skip_ws_and_comments();
      if (at_end()) fail("unterminated array");
      if (peek() == ',') {
        advance();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    return arr;
  }

  std::string_view content_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

Value parse(std::string_view content, const std::string& source) {
  return Parser(content, source).run();
}

Value parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

}  // namespace aces::tomlite
