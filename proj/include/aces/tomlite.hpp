#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

// Reader for the TOML subset used by the generator config: table headers
// [a.b], arrays of tables [[a.b]], bare keys, basic "..." strings, integers,
// floats, booleans, and (possibly multi-line) arrays of scalars. Exactly the
// subset is documented in docs/FORMATS.md.

namespace aces::tomlite {

class Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

class Value {
 public:
  enum class Kind { String, Integer, Float, Boolean, Array, Table };

  Value() : kind_(Kind::Table) {}
  static Value string(std::string s);
  static Value integer(std::int64_t v);
  static Value floating(double v);
  static Value boolean(bool v);
  static Value array();
  static Value table();

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::Table; }
  bool is_array() const { return kind_ == Kind::Array; }

  // Typed accessors; throw std::runtime_error naming the expected kind.
  const std::string& as_string() const;
  std::int64_t as_integer() const;
  double as_number() const;  // accepts Integer or Float
  bool as_boolean() const;
  const Array& as_array() const;
  const Table& as_table() const;

  Table& mutable_table();
  Array& mutable_array();

  bool contains(const std::string& key) const;
  const Value& at(const std::string& key) const;  // throws on missing key
  const Value* find(const std::string& key) const;

 private:
  Kind kind_;
  std::string str_;
  std::int64_t int_ = 0;
  double float_ = 0.0;
  bool bool_ = false;
  std::shared_ptr<Array> array_;
  std::shared_ptr<Table> table_;
};

// Parses a document; `source` names the input in error messages.
Value parse(std::string_view content, const std::string& source);
Value parse_file(const std::string& path);

}  // namespace aces::tomlite
