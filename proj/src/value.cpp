#include "relmonad/value.hpp"

#include <sstream>
#include <stdexcept>

namespace relmonad {

namespace {

[[noreturn]] void kind_error(const char* want, const Value& v) {
  throw std::logic_error(std::string("Value: expected ") + want + ", got " +
                         v.str());
}

std::strong_ordering cmp_lists(const ValueList& a, const ValueList& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    auto c = a[i] <=> b[i];
    if (c != std::strong_ordering::equal) return c;
  }
  return a.size() <=> b.size();
}

}  // namespace

bool Value::as_bool() const {
  if (auto* p = std::get_if<bool>(&data_)) return *p;
  kind_error("bool", *this);
}

std::int64_t Value::as_int() const {
  if (auto* p = std::get_if<std::int64_t>(&data_)) return *p;
  kind_error("int", *this);
}

char Value::as_char() const {
  if (auto* p = std::get_if<char>(&data_)) return *p;
  kind_error("char", *this);
}

const ValueList& Value::as_list() const {
  if (auto* p = std::get_if<List>(&data_)) return *p;
  kind_error("list", *this);
}

const Value::Tagged& Value::as_tagged() const {
  if (auto* p = std::get_if<Tagged>(&data_)) return *p;
  kind_error("tagged", *this);
}

const Value& Value::first() const {
  const auto& xs = as_list();
  if (xs.empty()) kind_error("pair", *this);
  return xs[0];
}

const Value& Value::second() const {
  const auto& xs = as_list();
  if (xs.size() < 2) kind_error("pair", *this);
  return xs[1];
}

bool operator==(const Value& a, const Value& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.data_.index() <=> b.data_.index();
      c != std::strong_ordering::equal)
    return c;
  switch (a.kind()) {
    case Value::Kind::Unit:
      return std::strong_ordering::equal;
    case Value::Kind::Bool:
      return std::get<bool>(a.data_) <=> std::get<bool>(b.data_);
    case Value::Kind::Int:
      return std::get<std::int64_t>(a.data_) <=> std::get<std::int64_t>(b.data_);
    case Value::Kind::Char:
      return std::get<char>(a.data_) <=> std::get<char>(b.data_);
    case Value::Kind::List_:
      return cmp_lists(std::get<ValueList>(a.data_),
                       std::get<ValueList>(b.data_));
    case Value::Kind::Tagged_: {
      const auto& ta = std::get<Value::Tagged>(a.data_);
      const auto& tb = std::get<Value::Tagged>(b.data_);
      if (auto c = ta.tag.compare(tb.tag); c != 0)
        return c < 0 ? std::strong_ordering::less
                     : std::strong_ordering::greater;
      return cmp_lists(ta.fields, tb.fields);
    }
  }
  return std::strong_ordering::equal;
}

std::string Value::str() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Unit:
      os << "tt";
      break;
    case Kind::Bool:
      os << (std::get<bool>(data_) ? "true" : "false");
      break;
    case Kind::Int:
      os << std::get<std::int64_t>(data_);
      break;
    case Kind::Char:
      os << '\'' << std::get<char>(data_) << '\'';
      break;
    case Kind::List_: {
      os << '[';
      const auto& xs = std::get<List>(data_);
      for (size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ", ";
        os << xs[i].str();
      }
      os << ']';
      break;
    }
    case Kind::Tagged_: {
      const auto& t = std::get<Tagged>(data_);
      os << t.tag;
      if (!t.fields.empty()) {
        os << '(';
        for (size_t i = 0; i < t.fields.size(); ++i) {
          if (i) os << ", ";
          os << t.fields[i].str();
        }
        os << ')';
      }
      break;
    }
  }
  return os.str();
}

std::string to_string(const Value& v) { return v.str(); }

}  // namespace relmonad
