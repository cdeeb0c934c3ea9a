#include "relmonad/domain.hpp"

#include <algorithm>

namespace relmonad {

FiniteDomain::FiniteDomain(std::vector<Value> elems, std::string name)
    : name_(std::move(name)) {
  elems_.reserve(elems.size());
  std::vector<size_t> sorted;
  for (auto& v : elems) {
    // Dedup against what we already kept; first occurrence wins.
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v,
                               [&](size_t i, const Value& x) {
                                 return elems_[i] < x;
                               });
    if (it != sorted.end() && elems_[*it] == v) continue;
    elems_.push_back(std::move(v));
    sorted.insert(it, elems_.size() - 1);
  }
  by_value_ = std::move(sorted);
}

FiniteDomain FiniteDomain::int_range(std::int64_t lo, std::int64_t hi) {
  std::vector<Value> xs;
  for (std::int64_t i = lo; i <= hi; ++i) xs.emplace_back(i);
  return FiniteDomain(std::move(xs), "[" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]");
}

FiniteDomain FiniteDomain::unit_only() {
  return FiniteDomain({Value::unit()}, "unit");
}

FiniteDomain FiniteDomain::booleans() {
  return FiniteDomain({Value(false), Value(true)}, "bool");
}

FiniteDomain FiniteDomain::of(std::initializer_list<Value> xs,
                              std::string name) {
  return FiniteDomain(std::vector<Value>(xs), std::move(name));
}

FiniteDomain FiniteDomain::chars(std::string_view alphabet) {
  std::vector<Value> xs;
  for (char c : alphabet) xs.emplace_back(c);
  return FiniteDomain(std::move(xs), "{" + std::string(alphabet) + "}");
}

FiniteDomain FiniteDomain::product(const FiniteDomain& a,
                                   const FiniteDomain& b, std::string name) {
  std::vector<Value> xs;
  xs.reserve(a.size() * b.size());
  for (const auto& va : a.elements())
    for (const auto& vb : b.elements()) xs.push_back(Value::pair(va, vb));
  if (name.empty()) name = a.name() + " x " + b.name();
  return FiniteDomain(std::move(xs), std::move(name));
}

std::optional<size_t> FiniteDomain::index_of(const Value& v) const {
  auto it = std::lower_bound(
      by_value_.begin(), by_value_.end(), v,
      [&](size_t i, const Value& x) { return elems_[i] < x; });
  if (it == by_value_.end() || !(elems_[*it] == v)) return std::nullopt;
  return *it;
}

}  // namespace relmonad
