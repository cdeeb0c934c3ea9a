#ifndef RELMONAD_DOMAIN_HPP
#define RELMONAD_DOMAIN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relmonad/value.hpp"

namespace relmonad {

// A finite, canonical, duplicate-free enumeration of a value or state
// universe. Enumeration order is the construction order (first occurrence
// wins) and is the canonical order for counterexample reporting.
class FiniteDomain {
 public:
  FiniteDomain() = default;
  explicit FiniteDomain(std::vector<Value> elems, std::string name = "");

  // Closed integer range [lo, hi]; empty when lo > hi.
  static FiniteDomain int_range(std::int64_t lo, std::int64_t hi);
  static FiniteDomain unit_only();
  static FiniteDomain booleans();
  static FiniteDomain of(std::initializer_list<Value> xs, std::string name = "");
  static FiniteDomain chars(std::string_view alphabet);
  // All pairs (a, b), a-major, encoded as two-element lists.
  static FiniteDomain product(const FiniteDomain& a, const FiniteDomain& b,
                              std::string name = "");

  size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<Value>& elements() const { return elems_; }
  const Value& at(size_t i) const { return elems_[i]; }
  bool contains(const Value& v) const { return index_of(v).has_value(); }
  std::optional<size_t> index_of(const Value& v) const;
  const std::string& name() const { return name_; }

  bool operator==(const FiniteDomain& other) const {
    return elems_ == other.elems_;
  }

 private:
  std::vector<Value> elems_;
  std::vector<size_t> by_value_;  // indices of elems_, sorted by value
  std::string name_;
};

}  // namespace relmonad

#endif  // RELMONAD_DOMAIN_HPP
