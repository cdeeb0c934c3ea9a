#ifndef RELMONAD_PROG_HPP
#define RELMONAD_PROG_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "relmonad/domain.hpp"
#include "relmonad/pred.hpp"
#include "relmonad/value.hpp"

namespace relmonad {

class ProgNode;
// Programs are immutable syntax trees shared by reference.
using Prog = std::shared_ptr<const ProgNode>;

// Bind continuation. Must be pure: equal arguments yield programs with
// equal denotations on every call.
using Cont = std::function<Prog(const Value&)>;
// update(): binary relation over states.
using StateRel = std::function<bool(const Value&, const Value&)>;

struct Outcome {
  Value value;
  Value state;
  friend bool operator==(const Outcome& a, const Outcome& b) {
    return a.value == b.value && a.state == b.state;
  }
  friend std::strong_ordering operator<=>(const Outcome& a, const Outcome& b) {
    if (auto c = a.value <=> b.value; c != std::strong_ordering::equal)
      return c;
    return a.state <=> b.state;
  }
};

// Step(): forward-executable user relation, initial state to outcome set.
using StepFn = std::function<std::vector<Outcome>(const Value&)>;

// Recursion call handle: maps an argument to a call program.
using CallHandle = std::function<Prog(const Value&)>;
// The iterated functional F. Must be pure; monotonicity is monitored at
// evaluation time via the chain-inclusion check.
using RecBody = std::function<Prog(const CallHandle&, const Value&)>;

class RecActivation;  // internal to the evaluator

struct RetP {
  Value value;
  std::string label;          // value rendering for VC goals ("x/2")
  std::string payload_label;  // for by_continue/by_break payloads
};

struct BindP {
  BindP(Prog f, Cont r)
      : first(std::move(f)), rest(std::move(r)),
        memo_(std::make_shared<Memo>()) {}

  Prog first;
  Cont rest;
  // Structural walkers (proof composer, vcgen) need pointer-stable
  // continuation applications; the evaluator calls `rest` directly.
  const Prog& rest_at(const Value& v) const;

 private:
  struct Memo {
    std::mutex mu;
    std::map<Value, Prog> entries;
  };
  std::shared_ptr<Memo> memo_;
};

struct ChoiceP {
  Prog left, right;
};

struct AssumeP {
  Pred pred;
};

struct AssumePureP {
  std::function<bool()> prop;
  std::string label;
};

struct AnyP {
  FiniteDomain dom;
};

struct UpdateP {
  StateRel rel;
  std::string label;
};

struct StepP {
  StepFn fn;
  std::string label;
  // Set for continue_case/break_case so the VC walker can thread payload
  // labels; empty otherwise.
  std::string case_tag;
};

struct RecP {
  RecBody body;
  Value arg;
  std::string name;
};

// Internal node produced by the fixpoint engine: a call into the current
// approximation table of an ongoing Rec evaluation.
struct RecCallP {
  std::shared_ptr<RecActivation> act;
  Value arg;
};

class ProgNode {
 public:
  using Data = std::variant<RetP, BindP, ChoiceP, AssumeP, AssumePureP, AnyP,
                            UpdateP, StepP, RecP, RecCallP>;
  explicit ProgNode(Data d) : data_(std::move(d)) {}
  const Data& data() const { return data_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&data_);
  }

 private:
  Data data_;
};

// Constructors.
Prog ret(Value v, std::string label = "");
Prog mbind(Prog first, Cont rest);
// bind discarding the value ("p ;; q").
Prog seq(Prog first, Prog second);
Prog choice(Prog left, Prog right);
Prog assume(Pred pred);
Prog assume(std::string label, StateTest test);
Prog assume_pure(std::string label, std::function<bool()> prop);
Prog assume_pure(std::string label, bool prop);
Prog any(FiniteDomain dom);
Prog update(std::string label, StateRel rel);
Prog step(std::string label, StepFn fn);
Prog rec(std::string name, RecBody body, Value arg);

namespace internal {
Prog rec_call(std::shared_ptr<RecActivation> act, Value arg);
Prog case_step(std::string case_tag, StepFn fn, std::string label);
}  // namespace internal

const char* kind_name(const Prog& p);

}  // namespace relmonad

#endif  // RELMONAD_PROG_HPP
