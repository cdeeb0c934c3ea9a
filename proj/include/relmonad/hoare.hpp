#ifndef RELMONAD_HOARE_HPP
#define RELMONAD_HOARE_HPP

#include <optional>
#include <string>

#include "relmonad/eval.hpp"
#include "relmonad/fixpoint.hpp"
#include "relmonad/pred.hpp"
#include "relmonad/prog.hpp"

namespace relmonad {

// Partial correctness claim {pre} prog {post}.
struct HoareTriple {
  Pred pre;
  Prog prog;
  PostCond post;
};

enum class Verdict { Holds, Counterexample, Inconclusive };

const char* verdict_name(Verdict v);

struct Witness {
  Value initial;
  Value value;
  Value final_state;
  std::string str() const;
};

struct CheckReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
  std::uint64_t states_checked = 0;
  bool complete = true;
  std::string note;

  bool holds() const { return verdict == Verdict::Holds; }
  static CheckReport make_holds(std::uint64_t states, std::string note = "");
  static CheckReport refuted(Witness w, std::uint64_t states,
                             std::string note = "");
  static CheckReport inconclusive(std::uint64_t states, std::string note = "");
};

// Exhaustive check of the Hoare definition over a finite state domain:
// Holds iff every outcome from every pre-state satisfies post and every
// evaluation was complete. The first counterexample in canonical domain
// order wins, for both execution policies.
CheckReport check_triple(const HoareTriple& t, const FiniteDomain& state_dom,
                         const EvalCtx& ctx, Exec exec = Exec::serial());

// forall s in dom, p(s) -> q(s).
CheckReport check_implication(const Pred& p, const Pred& q,
                              const FiniteDomain& dom);

// forall (a, s), p(a, s) -> q(a, s) over value_dom x state_dom.
CheckReport check_post_implication(const PostCond& p, const PostCond& q,
                                   const FiniteDomain& value_dom,
                                   const FiniteDomain& state_dom);

// Program equivalence as double inclusion of complete denotations.
CheckReport equiv_check(const Prog& p, const Prog& q,
                        const FiniteDomain& state_dom, const EvalCtx& ctx,
                        Exec exec = Exec::serial());

// The greatest program satisfying {P(arg)} . {Q(arg)}: from a state where
// P(arg) fails anything may happen; otherwise exactly the Q(arg)-good
// outcomes over the declared result/state universes.
Prog greatest_spec(const PredFamily& P, const PostFamily& Q, const Value& arg,
                   const FiniteDomain& ret_dom, const FiniteDomain& state_dom);

// Fix rule: checks forall a in arg_dom, {P(a)} F(specW)(a) {Q(a)} by
// enumeration, with specW the greatest specification program. A Holds
// verdict establishes {P(a)} lfix(F)(a) {Q(a)} for a in arg_dom. Premise
// outcomes escaping ret_dom/state_dom downgrade the verdict to
// Inconclusive (the containment argument needs a closed universe).
// Throws MonotonicityViolationError if the chain monitor trips during
// premise evaluation.
CheckReport fix_rule_check(const RecBody& F, const PredFamily& P,
                           const PostFamily& Q, const FiniteDomain& arg_dom,
                           const FiniteDomain& ret_dom,
                           const FiniteDomain& state_dom, const EvalCtx& ctx);

// RepeatBreak rule: checks the two premises
//   {P(a)} x <- body(a);; continue_case(x) {P}
//   {P(a)} x <- body(a);; break_case(x) {Q}
// over arg_dom; Holds establishes {P(a)} repeat_break(body)(a) {Q}.
CheckReport repeat_break_rule_check(
    const std::function<Prog(const Value&)>& body, const PredFamily& P,
    const PostCond& Q, const FiniteDomain& arg_dom,
    const FiniteDomain& state_dom, const EvalCtx& ctx);

}  // namespace relmonad

#endif  // RELMONAD_HOARE_HPP
