#ifndef RELMONAD_PRED_HPP
#define RELMONAD_PRED_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "relmonad/domain.hpp"
#include "relmonad/value.hpp"

namespace relmonad {

class Pred;
class PostCond;
class PredFamily;

using StateTest = std::function<bool(const Value&)>;
using PostTest = std::function<bool(const Value&, const Value&)>;

namespace detail {
struct PredNode;
struct PostNode;
}  // namespace detail

// A labeled, decidable predicate over program states. Predicates are small
// ASTs (atoms, conjunctions, bounded existentials, partial applications of
// postconditions) so that the proof composer can match rule schemas by
// structure: two atoms match only when they are the same object.
class Pred {
 public:
  Pred() = default;

  static Pred atom(std::string label, StateTest test);
  // State-independent proposition (the assume' form).
  static Pred constant(std::string label, bool value);
  static Pred conj(Pred a, Pred b);
  // Bounded existential over a finite binder domain (PreEx rule).
  static Pred exists_over(std::string binder, FiniteDomain dom,
                          const PredFamily& family);
  // Partial application Q(a) of a postcondition: the Bind rule's
  // intermediate predicates. Identity: same Q object + equal value.
  static Pred post_at(const PostCond& q, Value a);

  bool valid() const { return node_ != nullptr; }
  bool test(const Value& state) const;
  std::string label() const;
  // Structural identity used for rule-schema matching.
  bool same(const Pred& other) const;

  const detail::PredNode* raw() const { return node_.get(); }

 private:
  explicit Pred(std::shared_ptr<const detail::PredNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const detail::PredNode> node_;
  friend class PostCond;
};

// A labeled postcondition over (result value, final state).
class PostCond {
 public:
  PostCond() = default;

  // `result_name` is the token the label uses for the result; VC rendering
  // substitutes the concrete result expression for it.
  static PostCond atom(std::string result_name, std::string label,
                       PostTest test);
  static PostCond conj(PostCond a, PostCond b);
  // Lift a state predicate (ignores the result value).
  static PostCond lift(Pred p);
  // λ(a, s). family(a)(s) — the RepeatBreak rule's continue-side post.
  static PostCond of_family(const PredFamily& family);

  bool valid() const { return node_ != nullptr; }
  bool test(const Value& result, const Value& state) const;
  std::string label() const;
  std::string render_goal(const std::string& result_expr) const;
  bool same(const PostCond& other) const;

  // Partial application as a Pred, memoized so repeated requests for the
  // same value return an identity-equal predicate.
  Pred at(const Value& a) const;

  const detail::PostNode* raw() const { return node_.get(); }

 private:
  explicit PostCond(std::shared_ptr<const detail::PostNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const detail::PostNode> node_;
  friend class Pred;
};

// A predicate family indexed by a value (loop invariants P(a)). Instances
// are memoized: at(a) always returns the identical Pred object for equal a.
class PredFamily {
 public:
  PredFamily() = default;
  PredFamily(std::string name, std::function<Pred(const Value&)> make);

  bool valid() const { return impl_ != nullptr; }
  Pred at(const Value& a) const;
  const std::string& name() const;
  bool same(const PredFamily& other) const { return impl_ == other.impl_; }
  const void* raw() const { return impl_.get(); }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Postcondition family indexed by the recursion argument (the Fix rule's
// argument-dependent Q).
class PostFamily {
 public:
  PostFamily() = default;
  PostFamily(std::string name, std::function<PostCond(const Value&)> make);
  static PostFamily constant(PostCond q);

  bool valid() const { return impl_ != nullptr; }
  PostCond at(const Value& a) const;
  const std::string& name() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace relmonad

#endif  // RELMONAD_PRED_HPP
