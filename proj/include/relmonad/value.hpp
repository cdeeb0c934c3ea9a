#ifndef RELMONAD_VALUE_HPP
#define RELMONAD_VALUE_HPP

#include <compare>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace relmonad {

// The single value type of the unit, e.g. the result of assume/update.
struct Unit {
  friend constexpr bool operator==(Unit, Unit) { return true; }
};

// Runtime value universe shared by program states, return values and
// recursion arguments. Everything the case studies need (naturals,
// integers, booleans, characters, lists, records, sum types) is encoded
// structurally, so equality and ordering are canonical and printable.
class Value {
 public:
  using List = std::vector<Value>;
  struct Tagged {
    std::string tag;
    List fields;
  };

  enum class Kind { Unit = 0, Bool, Int, Char, List_, Tagged_ };

  Value() : data_(Unit{}) {}
  Value(Unit) : data_(Unit{}) {}
  Value(bool b) : data_(b) {}
  Value(char c) : data_(c) {}
  template <std::integral T>
    requires(!std::same_as<T, bool> && !std::same_as<T, char>)
  Value(T v) : data_(static_cast<std::int64_t>(v)) {}
  Value(List xs) : data_(std::move(xs)) {}
  Value(Tagged t) : data_(std::move(t)) {}

  static Value unit() { return Value(); }
  static Value list(std::initializer_list<Value> xs) { return Value(List(xs)); }
  static Value tagged(std::string tag, List fields) {
    return Value(Tagged{std::move(tag), std::move(fields)});
  }
  static Value pair(Value a, Value b) {
    return Value(List{std::move(a), std::move(b)});
  }

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_unit() const { return kind() == Kind::Unit; }
  bool is_bool() const { return kind() == Kind::Bool; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_char() const { return kind() == Kind::Char; }
  bool is_list() const { return kind() == Kind::List_; }
  bool is_tagged() const { return kind() == Kind::Tagged_; }

  bool as_bool() const;
  std::int64_t as_int() const;
  char as_char() const;
  const List& as_list() const;
  const Tagged& as_tagged() const;

  // Pair/record accessors used all over the case studies.
  const Value& first() const;
  const Value& second() const;

  std::string str() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  std::variant<Unit, bool, std::int64_t, char, List, Tagged> data_;
};

using ValueList = Value::List;

std::string to_string(const Value& v);

}  // namespace relmonad

#endif  // RELMONAD_VALUE_HPP
