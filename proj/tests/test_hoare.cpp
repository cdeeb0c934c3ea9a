#include "common/oracles.hpp"
#include "doctest.h"
#include "relmonad/casestudies/examples.hpp"
#include "relmonad/hoare.hpp"

using namespace relmonad;

namespace {
const FiniteDomain kUnit = FiniteDomain::unit_only();

PostCond value_is(std::int64_t n) {
  return PostCond::atom("r", "r = " + std::to_string(n),
                        [n](const Value& r, const Value&) {
                          return r.is_int() && r.as_int() == n;
                        });
}
}  // namespace

TEST_CASE("check_triple: ret satisfies an exact value claim") {
  EvalCtx ctx;
  auto rep = check_triple({Pred::constant("true", true), ret(Value(5)),
                           value_is(5)},
                          kUnit, ctx);
  CHECK(rep.holds());
  CHECK(rep.states_checked == 1);
}

TEST_CASE("check_triple: any({1,2}) refutes r = 1 with witness (s, 2, s)") {
  EvalCtx ctx;
  auto rep = check_triple({Pred::constant("true", true),
                           any(FiniteDomain::int_range(1, 2)), value_is(1)},
                          kUnit, ctx);
  CHECK(rep.verdict == Verdict::Counterexample);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->value == Value(2));
  CHECK(rep.witness->initial == Value::unit());
  CHECK(rep.witness->final_state == Value::unit());
}

TEST_CASE("check_triple: hailstone body positivity over x in 1..20") {
  EvalCtx ctx;
  PostCond pos = PostCond::atom("y", "y >= 1", [](const Value& r, const Value&) {
    return r.as_int() >= 1;
  });
  for (std::int64_t x = 1; x <= 20; ++x) {
    auto prog = mbind(examples::hailstone_body(x),
                      [](const Value& v) { return continue_case(v); });
    auto rep = check_triple(
        {Pred::constant("x >= 1", x >= 1), prog, pos}, kUnit, ctx);
    CHECK(rep.holds());
    // the disjoint-guard variant proves the same claim
    auto prog2 = mbind(examples::hailstone_body_disjoint(x),
                       [](const Value& v) { return continue_case(v); });
    CHECK(check_triple({Pred::constant("x >= 1", x >= 1), prog2, pos}, kUnit,
                       ctx)
              .holds());
  }
}

TEST_CASE("check_triple: low fuel yields Inconclusive, never Holds") {
  EvalCtx ctx;
  ctx.with_fuel(2);
  auto rep = check_triple({Pred::constant("true", true),
                           examples::hailstone(27),
                           value_is(1)},
                          kUnit, ctx);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK_FALSE(rep.complete);
}

TEST_CASE("check_implication basics") {
  FiniteDomain dom = FiniteDomain::int_range(0, 5);
  Pred p = Pred::atom("even", [](const Value& v) { return v.as_int() % 2 == 0; });
  Pred q = Pred::atom("nonneg", [](const Value& v) { return v.as_int() >= 0; });
  Pred f = Pred::constant("false", false);
  CHECK(check_implication(p, p, dom).holds());
  CHECK(check_implication(f, q, dom).holds());
  CHECK(check_implication(p, q, dom).holds());
  auto bad = check_implication(q, p, dom);
  CHECK(bad.verdict == Verdict::Counterexample);
  CHECK(bad.witness->initial == Value(1));
}

TEST_CASE("equiv_check: choice(p, p) == p and ret(1) != ret(2)") {
  EvalCtx ctx;
  FiniteDomain states = FiniteDomain::int_range(0, 2);
  auto p = mbind(any(FiniteDomain::int_range(0, 1)),
                 [](const Value& v) { return ret(v); });
  CHECK(equiv_check(p, choice(p, p), states, ctx).holds());
  auto bad = equiv_check(ret(Value(1)), ret(Value(2)), states, ctx);
  CHECK(bad.verdict == Verdict::Counterexample);
}

TEST_CASE("equiv_check: the tuple-returning block refactor") {
  // c1 = x <- f;; assume(p);; y <- g;; assume(q);; h x y
  // c2 = (x, y) <- (x <- f;; assume(p);; y <- g;; assume(q);; ret (x, y));;
  //      h x y
  EvalCtx ctx;
  FiniteDomain states = FiniteDomain::int_range(0, 2);
  ctx.with_state_domain(states);
  Prog f = any(FiniteDomain::int_range(0, 1));
  Prog g = choice(ret(Value(7)), ret(Value(9)));
  Pred p = Pred::atom("s > 0", [](const Value& s) { return s.as_int() > 0; });
  Pred q = Pred::atom("s < 2", [](const Value& s) { return s.as_int() < 2; });
  auto h = [](const Value& x, const Value& y) {
    return ret(Value(x.as_int() * 10 + y.as_int()));
  };

  Prog c1 = mbind(f, [=](const Value& x) {
    return mbind(assume(p), [=](const Value&) {
      return mbind(g, [=](const Value& y) {
        return mbind(assume(q), [=](const Value&) { return h(x, y); });
      });
    });
  });
  Prog block = mbind(f, [=](const Value& x) {
    return mbind(assume(p), [=](const Value&) {
      return mbind(g, [=](const Value& y) {
        return mbind(assume(q),
                     [=](const Value&) { return ret(Value::pair(x, y)); });
      });
    });
  });
  Prog c2 = mbind(block, [=](const Value& xy) {
    return h(xy.first(), xy.second());
  });
  CHECK(equiv_check(c1, c2, states, ctx).holds());
}

TEST_CASE("fix_rule_check: Fibonacci meets its recurrence specification") {
  EvalCtx ctx;
  FiniteDomain args = FiniteDomain::int_range(0, 8);
  std::vector<Value> rets;
  for (std::int64_t v = 0; v <= oracles::fib(8); ++v) rets.emplace_back(v);
  FiniteDomain ret_dom(std::move(rets), "fib range");

  RecBody f = [](const CallHandle& w, const Value& nv) -> Prog {
    const std::int64_t k = nv.as_int();
    return choice(
        mbind(assume_pure("n <= 1", k <= 1),
              [nv](const Value&) { return ret(nv); }),
        mbind(assume_pure("n > 1", k > 1), [k, wc = w](const Value&) {
          return mbind(wc(Value(k - 1)), [k, wc](const Value& x) {
            return mbind(wc(Value(k - 2)), [x](const Value& y) {
              return ret(Value(x.as_int() + y.as_int()));
            });
          });
        }));
  };
  PredFamily P("true", [](const Value&) { return Pred::constant("true", true); });
  PostFamily Q("r = fib(n)", [](const Value& n) {
    const std::int64_t want = oracles::fib(n.as_int());
    return PostCond::atom("r", "r = fib(n)",
                          [want](const Value& r, const Value&) {
                            return r.as_int() == want;
                          });
  });
  auto rep = fix_rule_check(f, P, Q, args, ret_dom, kUnit, ctx);
  CHECK(rep.holds());

  // a reachable outcome refutes an always-false postcondition
  PostFamily QF("false", [](const Value&) {
    return PostCond::atom("r", "false",
                          [](const Value&, const Value&) { return false; });
  });
  CHECK(fix_rule_check(f, P, QF, args, ret_dom, kUnit, ctx).verdict ==
        Verdict::Counterexample);
}

TEST_CASE("fix_rule_check: non-recursive body reduces to a plain check") {
  EvalCtx ctx;
  RecBody f = [](const CallHandle&, const Value& a) { return ret(a); };
  FiniteDomain args = FiniteDomain::int_range(0, 3);
  PredFamily P("true", [](const Value&) { return Pred::constant("true", true); });
  PostFamily Q("r = a", [](const Value& a) {
    return PostCond::atom("r", "r = a", [a](const Value& r, const Value&) {
      return r == a;
    });
  });
  CHECK(fix_rule_check(f, P, Q, args, args, kUnit, ctx).holds());
}

TEST_CASE("repeat_break_rule_check: hailstone positivity invariant") {
  EvalCtx ctx;
  PredFamily P("x >= 1", [](const Value& x) {
    return Pred::constant("x >= 1", x.as_int() >= 1);
  });
  PostCond Q = PostCond::atom("r", "r >= 1", [](const Value& r, const Value&) {
    return r.as_int() >= 1;
  });
  auto body = [](const Value& a) {
    return examples::hailstone_body(a.as_int());
  };
  auto rep = repeat_break_rule_check(body, P, Q,
                                     FiniteDomain::int_range(1, 20), kUnit,
                                     ctx);
  CHECK(rep.holds());
}

TEST_CASE("repeat_break_rule_check: immediate break with lifted P") {
  EvalCtx ctx;
  PredFamily P("a >= 0", [](const Value& a) {
    return Pred::constant("a >= 0", a.as_int() >= 0);
  });
  PostCond Q = PostCond::atom("r", "r >= 0", [](const Value& r, const Value&) {
    return r.as_int() >= 0;
  });
  auto body = [](const Value& a) { return break_with(a); };
  CHECK(repeat_break_rule_check(body, P, Q, FiniteDomain::int_range(0, 5),
                                kUnit, ctx)
            .holds());
}
