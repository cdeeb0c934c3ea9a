#include "doctest.h"
#include "relmonad/eval.hpp"
#include "relmonad/fixpoint.hpp"
#include "relmonad/prog.hpp"

using namespace relmonad;

namespace {

OutcomeSet outcomes_of(const Prog& p, const Value& s0, const EvalCtx& ctx) {
  return eval(p, s0, ctx).outcomes;
}

OutcomeSet set_of(std::initializer_list<Outcome> os) {
  OutcomeSet s;
  for (auto& o : os) s.insert(o);
  return s;
}

}  // namespace

TEST_CASE("value ordering and printing") {
  CHECK(Value(1) < Value(2));
  CHECK(Value::unit() == Value::unit());
  CHECK(Value::pair(1, 2).str() == "[1, 2]");
  CHECK(by_continue(Value(3)).str() == "by_continue(3)");
  CHECK(Value('a') == Value('a'));
  CHECK_FALSE(Value('a') == Value('b'));
}

TEST_CASE("finite domain dedups and keeps order") {
  FiniteDomain d({Value(3), Value(1), Value(3), Value(2)});
  CHECK(d.size() == 3);
  CHECK(d.at(0) == Value(3));
  CHECK(d.at(1) == Value(1));
  CHECK(d.at(2) == Value(2));
  CHECK(d.contains(Value(2)));
  CHECK_FALSE(d.contains(Value(7)));
  CHECK(*d.index_of(Value(1)) == 1);
  CHECK(FiniteDomain::int_range(5, 4).empty());
}

TEST_CASE("ret leaves the state unchanged") {
  EvalCtx ctx;
  Value s0 = Value(42);
  auto r = eval(ret(Value(5)), s0, ctx);
  CHECK(r.complete);
  CHECK(r.outcomes == set_of({{Value(5), s0}}));
  CHECK(outcomes_of(ret(Value::unit()), s0, ctx) ==
        set_of({{Value::unit(), s0}}));
}

TEST_CASE("choice unions outcomes") {
  EvalCtx ctx;
  Value s0 = Value::unit();
  auto p = choice(ret(Value(1)), ret(Value(2)));
  CHECK(outcomes_of(p, s0, ctx) ==
        set_of({{Value(1), s0}, {Value(2), s0}}));
  // idempotence
  auto q = ret(Value(7));
  CHECK(outcomes_of(choice(q, q), s0, ctx) == outcomes_of(q, s0, ctx));
}

TEST_CASE("assume filters and assume' ignores the state") {
  EvalCtx ctx;
  Value s0 = Value(0);
  CHECK(outcomes_of(assume("true", [](const Value&) { return true; }), s0, ctx)
            .size() == 1);
  CHECK(outcomes_of(assume("false", [](const Value&) { return false; }), s0,
                    ctx)
            .empty());
  auto dead = mbind(assume_pure("false", false),
                   [](const Value&) { return ret(Value(1)); });
  auto r = eval(dead, s0, ctx);
  CHECK(r.complete);
  CHECK(r.outcomes.empty());
}

TEST_CASE("any enumerates its domain") {
  EvalCtx ctx;
  Value s0 = Value::unit();
  CHECK(outcomes_of(any(FiniteDomain::int_range(1, 3)), s0, ctx) ==
        set_of({{Value(1), s0}, {Value(2), s0}, {Value(3), s0}}));
  CHECK(outcomes_of(any(FiniteDomain()), s0, ctx).empty());
  auto p = mbind(any(FiniteDomain::int_range(1, 2)), [](const Value& x) {
    return ret(Value(x.as_int() + 1));
  });
  CHECK(outcomes_of(p, s0, ctx) == set_of({{Value(2), s0}, {Value(3), s0}}));
}

TEST_CASE("update enumerates successors over the registered domain") {
  FiniteDomain states = FiniteDomain::of({Value('a'), Value('b')});
  EvalCtx ctx;
  ctx.with_state_domain(states);
  auto idrel = update("s2 = s1",
                      [](const Value& a, const Value& b) { return a == b; });
  CHECK(outcomes_of(idrel, Value('a'), ctx) ==
        set_of({{Value::unit(), Value('a')}}));
  auto none = update("false", [](const Value&, const Value&) { return false; });
  CHECK(outcomes_of(none, Value('a'), ctx).empty());
  auto all = update("true", [](const Value&, const Value&) { return true; });
  CHECK(outcomes_of(all, Value('a'), ctx) ==
        set_of({{Value::unit(), Value('a')}, {Value::unit(), Value('b')}}));

  EvalCtx bare;
  CHECK_THROWS_AS(eval(all, Value('a'), bare), MissingStateDomainError);
}

TEST_CASE("denote tabulates over all initial states") {
  FiniteDomain states = FiniteDomain::of({Value('a'), Value('b')});
  EvalCtx ctx;
  auto d = denote(ret(Value(1)), states, ctx);
  CHECK(d.complete());
  CHECK(d.at(Value('a'))->outcomes == set_of({{Value(1), Value('a')}}));
  CHECK(d.at(Value('b'))->outcomes == set_of({{Value(1), Value('b')}}));
}

TEST_CASE("lfix of the identity functional is empty and stabilizes") {
  EvalCtx ctx;
  RecBody identity = [](const CallHandle& w, const Value& a) { return w(a); };
  auto r = eval(lfix("id", identity, Value(0)), Value::unit(), ctx);
  CHECK(r.complete);
  CHECK(r.outcomes.empty());
  CHECK(ctx.stats().chain_violations.load() == 0);
}

TEST_CASE("repeat_break: immediate break is ret") {
  EvalCtx ctx;
  auto loop = repeat_break(
      "break-now", [](const Value& a) { return break_with(a); });
  auto r = eval(loop(Value(9)), Value::unit(), ctx);
  CHECK(r.complete);
  CHECK(r.outcomes == set_of({{Value(9), Value::unit()}}));
}

TEST_CASE("continue/break and case unwrapping") {
  EvalCtx ctx;
  Value s0 = Value::unit();
  CHECK(outcomes_of(continue_with(Value(3)), s0, ctx) ==
        set_of({{by_continue(Value(3)), s0}}));
  CHECK(outcomes_of(break_with(Value(7)), s0, ctx) ==
        set_of({{by_break(Value(7)), s0}}));
  CHECK(outcomes_of(continue_case(by_continue(Value(4))), s0, ctx) ==
        set_of({{Value(4), s0}}));
  CHECK(outcomes_of(continue_case(by_break(Value(9))), s0, ctx).empty());
  CHECK(outcomes_of(break_case(by_break(Value(9))), s0, ctx) ==
        set_of({{Value(9), s0}}));
  // mbind(continue(j'), continue_case) == ret(j')
  auto lhs = mbind(continue_with(Value(5)),
                  [](const Value& x) { return continue_case(x); });
  CHECK(outcomes_of(lhs, s0, ctx) == outcomes_of(ret(Value(5)), s0, ctx));
}

TEST_CASE("range_iter_break: empty range yields by_continue(init)") {
  EvalCtx ctx;
  auto loop = range_iter_break(
      "empty", 0, 0,
      [](std::int64_t, const Value& acc) { return break_with(acc); },
      Value(11));
  auto r = eval(loop, Value::unit(), ctx);
  CHECK(r.complete);
  CHECK(r.outcomes == set_of({{by_continue(Value(11)), Value::unit()}}));
}

TEST_CASE("range_iter_break: first-iteration break") {
  EvalCtx ctx;
  auto loop = range_iter_break(
      "break-at-lo", 2, 5,
      [](std::int64_t i, const Value&) { return break_with(Value(i)); },
      Value(0));
  auto r = eval(loop, Value::unit(), ctx);
  CHECK(r.outcomes == set_of({{by_break(Value(2)), Value::unit()}}));
}

TEST_CASE("range_iter_break without breaks folds the body") {
  EvalCtx ctx;
  // sum 0..4
  auto loop = range_iter_break(
      "sum", 0, 5,
      [](std::int64_t i, const Value& acc) {
        return continue_with(Value(acc.as_int() + i));
      },
      Value(0));
  auto r = eval(loop, Value::unit(), ctx);
  CHECK(r.complete);
  CHECK(r.outcomes == set_of({{by_continue(Value(10)), Value::unit()}}));
}

TEST_CASE("fuel exhaustion reports incomplete, not an error") {
  EvalCtx ctx;
  ctx.with_fuel(3);
  // Diverging loop: always continue.
  auto loop = repeat_break("spin", [](const Value& a) {
    return continue_with(Value(a.as_int() + 1));
  });
  auto r = eval(loop(Value(0)), Value::unit(), ctx);
  CHECK_FALSE(r.complete);
}

TEST_CASE("non-monotone (impure) functional trips the chain monitor") {
  EvalCtx ctx;
  auto calls = std::make_shared<int>(0);
  // A step whose outcome set shrinks between rounds: the chain
  // inclusion W(n) <= W(n+1) breaks and must be reported.
  RecBody shrink = [calls](const CallHandle&, const Value&) -> Prog {
    return step("flaky", [calls](const Value& s) -> std::vector<Outcome> {
      ++*calls;
      if (*calls <= 1) return {{Value(1), s}};
      return {};
    });
  };
  auto r = eval(lfix("shrink", shrink, Value(0)), Value::unit(), ctx);
  CHECK(ctx.stats().chain_violations.load() > 0);
  // no least fixed point exists, so the result may not claim completeness
  CHECK_FALSE(r.complete);
}

TEST_CASE("set-monad degeneracy: unit-state outcomes end in tt") {
  EvalCtx ctx;
  ctx.with_state_domain(FiniteDomain::unit_only());
  auto p = mbind(any(FiniteDomain::int_range(0, 3)), [](const Value& x) {
    return choice(ret(x), seq(update("id", [](const Value&, const Value&) {
                                return true;
                              }),
                              ret(Value(x.as_int() * 2))));
  });
  auto r = eval(p, Value::unit(), ctx);
  for (const auto& o : r.outcomes.items()) CHECK(o.state == Value::unit());
}

TEST_CASE("range_iter_break treats lo > hi as an empty range") {
  EvalCtx ctx;
  auto loop = range_iter_break(
      "empty-rev", 3, 1,
      [](std::int64_t, const Value& acc) { return break_with(acc); },
      Value(5));
  auto r = eval(loop, Value::unit(), ctx);
  CHECK(r.complete);
  CHECK(r.outcomes.size() == 1);
  CHECK(r.outcomes.items()[0].value == by_continue(Value(5)));
}

TEST_CASE("denote registers its state domain for update enumeration") {
  FiniteDomain states = FiniteDomain::of({Value('a'), Value('b')});
  EvalCtx ctx;  // no state domain registered
  auto swap = update("swap", [](const Value& s1, const Value& s2) {
    return !(s1 == s2);
  });
  auto d = denote(swap, states, ctx);
  CHECK(d.complete());
  CHECK(d.at(Value('a'))->outcomes.contains({Value::unit(), Value('b')}));
}
