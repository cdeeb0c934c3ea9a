#ifndef RELMONAD_EVAL_HPP
#define RELMONAD_EVAL_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "relmonad/domain.hpp"
#include "relmonad/errors.hpp"
#include "relmonad/prog.hpp"
#include "relmonad/value.hpp"

namespace relmonad {

inline constexpr std::int64_t kDefaultFuel = 1000;
inline constexpr std::uint64_t kDefaultStateCap = 1u << 20;

// Deduplicated, canonically ordered set of (value, final state) pairs:
// the slice of the ternary relation at one initial state.
class OutcomeSet {
 public:
  void insert(Outcome o);
  void merge(const OutcomeSet& other);
  bool contains(const Outcome& o) const;
  bool includes(const OutcomeSet& other) const;  // superset
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Outcome>& items() const { return items_; }
  friend bool operator==(const OutcomeSet& a, const OutcomeSet& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<Outcome> items_;  // sorted, unique
};

struct EvalResult {
  OutcomeSet outcomes;
  // True when the result is exactly the relation slice: every recursion
  // stabilized within fuel. False results are sound under-approximations.
  bool complete = true;
};

// Shared, thread-safe counters. `chain_violations` counts observed breaks
// of the Kleene chain inclusion (a non-monotone functional).
struct EvalStats {
  std::atomic<std::uint64_t> states_visited{0};
  std::atomic<std::uint64_t> fix_rounds{0};
  std::atomic<std::uint64_t> rec_cells{0};
  std::atomic<std::uint64_t> chain_violations{0};
};

class EvalCtx {
 public:
  EvalCtx() : stats_(std::make_shared<EvalStats>()) {}

  EvalCtx& with_state_domain(FiniteDomain dom) {
    state_dom_ = std::move(dom);
    return *this;
  }
  EvalCtx& with_fuel(std::int64_t fuel) {
    fuel_ = fuel;
    return *this;
  }
  EvalCtx& with_state_cap(std::uint64_t cap) {
    state_cap_ = cap;
    return *this;
  }
  EvalCtx& with_fresh_stats() {
    stats_ = std::make_shared<EvalStats>();
    return *this;
  }
  EvalCtx& with_rec_observer(
      std::function<void(const Value&, const Value&)> obs) {
    rec_observer_ = std::move(obs);
    return *this;
  }

  const std::optional<FiniteDomain>& state_domain() const { return state_dom_; }
  std::int64_t fuel() const { return fuel_; }
  std::uint64_t state_cap() const { return state_cap_; }
  EvalStats& stats() const { return *stats_; }
  std::shared_ptr<EvalStats> stats_ptr() const { return stats_; }
  const std::function<void(const Value&, const Value&)>& rec_observer() const {
    return rec_observer_;
  }

 private:
  std::optional<FiniteDomain> state_dom_;
  std::int64_t fuel_ = kDefaultFuel;
  std::uint64_t state_cap_ = kDefaultStateCap;
  std::shared_ptr<EvalStats> stats_;
  std::function<void(const Value&, const Value&)> rec_observer_;
};

// Execution policy for the enumeration layers (denote, check_triple, the
// suite drivers). The serial path is the reference; the parallel path uses
// OpenMP when available and produces identical results.
struct Exec {
  bool parallel = false;
  static Exec serial() { return Exec{false}; }
  static Exec par() { return Exec{true}; }
};

// Exact relational semantics of `p` at initial state `s0`, restricted to
// the registered domains. Throws MissingStateDomainError if an update node
// is reached without a registered state domain.
EvalResult eval(const Prog& p, const Value& s0, const EvalCtx& ctx);

// The tabulated relation over a whole state domain.
class Denotation {
 public:
  Denotation() = default;
  Denotation(FiniteDomain dom, std::vector<EvalResult> rows);

  const FiniteDomain& domain() const { return dom_; }
  const EvalResult& row(size_t i) const { return rows_[i]; }
  const EvalResult* at(const Value& s) const;
  size_t size() const { return rows_.size(); }
  bool complete() const { return complete_; }
  friend bool operator==(const Denotation& a, const Denotation& b);

 private:
  FiniteDomain dom_;
  std::vector<EvalResult> rows_;
  bool complete_ = true;
};

// Tabulates eval over every initial state. When ctx carries no state
// domain, `state_dom` is registered for update() enumeration as well.
Denotation denote(const Prog& p, const FiniteDomain& state_dom,
                  const EvalCtx& ctx, Exec exec = Exec::serial());

// Generic deterministic parallel-for used by the enumeration kernels:
// computes f(i) for i in [0, n) into a vector (slot per index).
void parallel_for(size_t n, Exec exec, const std::function<void(size_t)>& f);

}  // namespace relmonad

#endif  // RELMONAD_EVAL_HPP
