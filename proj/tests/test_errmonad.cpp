#include "relmonad/gen.hpp"
#include "doctest.h"
#include "relmonad/errmonad.hpp"

using namespace relmonad;

namespace {
const FiniteDomain kUnit = FiniteDomain::unit_only();
Pred truthy() { return Pred::constant("true", true); }
Pred falsy() { return Pred::constant("false", false); }
}  // namespace

TEST_CASE("assert splits states into nrm and err") {
  EvalCtx ctx;
  auto ok = eval_err(assert_that(truthy()), Value::unit(), ctx);
  CHECK(ok.outcomes.size() == 1);
  CHECK_FALSE(ok.err);
  auto bad = eval_err(assert_that(falsy()), Value::unit(), ctx);
  CHECK(bad.outcomes.empty());
  CHECK(bad.err);
  // assume vs assert: identical nrm, err differs exactly on ~P states
  auto asm_bad = eval_err(err_assume(falsy()), Value::unit(), ctx);
  CHECK(asm_bad.outcomes == bad.outcomes);
  CHECK_FALSE(asm_bad.err);
}

TEST_CASE("err_ret has an empty error set; bind composes errors") {
  EvalCtx ctx;
  auto r = eval_err(err_ret(Value(1)), Value(0), ctx);
  CHECK_FALSE(r.err);
  // err_bind(err_ret(1), _ -> assert(false)) errs at every initial state
  auto p = err_bind(err_ret(Value(1)),
                    [](const Value&) { return assert_that(falsy()); });
  auto rb = eval_err(p, Value(0), ctx);
  CHECK(rb.outcomes.empty());
  CHECK(rb.err);
}

TEST_CASE("err_choice unions both nrm and err") {
  EvalCtx ctx;
  auto p = err_choice(err_ret(Value(1)), assert_that(falsy()));
  auto r = eval_err(p, Value(7), ctx);
  CHECK(r.outcomes.size() == 1);
  CHECK(r.err);
}

TEST_CASE("check_triple_err examples") {
  EvalCtx ctx;
  Pred pa = Pred::atom("s = a", [](const Value& s) { return s == Value('a'); });
  FiniteDomain ab = FiniteDomain::of({Value('a'), Value('b')});

  // {P} assert(P) {P(s)} holds
  auto rep = check_triple_err(
      pa, assert_that(pa),
      PostCond::atom("r", "P(s)",
                     [pa](const Value&, const Value& s) { return pa.test(s); }),
      ab, ctx);
  CHECK(rep.holds());

  // {true} assert(s = a) over {a, b}: error reachable at b
  auto bad = check_triple_err(
      truthy(), assert_that(pa),
      PostCond::atom("r", "true",
                     [](const Value&, const Value&) { return true; }),
      ab, ctx);
  CHECK(bad.verdict == Verdict::Counterexample);
  CHECK(bad.witness->initial == Value('b'));

  // {P} err_ret(1) {r = 1} holds (empty err)
  CHECK(check_triple_err(truthy(), err_ret(Value(1)),
                         PostCond::atom("r", "r = 1",
                                        [](const Value& r, const Value&) {
                                          return r == Value(1);
                                        }),
                         ab, ctx)
            .holds());
}

TEST_CASE("assert rule side condition") {
  FiniteDomain d = FiniteDomain::int_range(0, 3);
  Pred p = Pred::atom("s >= 1", [](const Value& s) { return s.as_int() >= 1; });
  Pred g = Pred::atom("s >= 0", [](const Value& s) { return s.as_int() >= 0; });
  CHECK(assert_rule_check(p, g, d).holds());
  CHECK(assert_rule_check(g, p, d).verdict == Verdict::Counterexample);
}

TEST_CASE("randomized: erasure, error monotonicity, nrm projection") {
  gen::ProgGen G(FiniteDomain::int_range(0, 3), FiniteDomain::int_range(0, 3),
                 0xE44);
  EvalCtx ctx;
  ctx.with_state_domain(G.states);
  for (int i = 0; i < 80; ++i) {
    EProg e = G.eprog();
    // erasure: nrm denotation equals the kernel denotation of the erased
    // program (assert replaced by assume)
    Prog erased = erase(e);
    for (const auto& s : G.states.elements()) {
      auto re = eval_err(e, s, ctx);
      auto rk = eval(erased, s, ctx);
      CHECK(re.outcomes == rk.outcomes);
    }
    // error monotonicity of bind: err(bind(c, f)) includes err(c)
    ECont k = G.rand_econt(1);
    EProg b = err_bind(e, k);
    for (const auto& s : G.states.elements()) {
      auto rc = eval_err(e, s, ctx);
      auto rb = eval_err(b, s, ctx);
      if (rc.err) CHECK(rb.err);
    }
    // check_triple_err Holds implies the kernel check on the nrm projection
    Pred pre = G.rand_pred();
    PostCond post = G.rand_post("q", 0.9);
    auto err_rep = check_triple_err(pre, e, post, G.states, ctx);
    if (err_rep.holds())
      CHECK(check_triple({pre, erased, post}, G.states, ctx).holds());
  }
}
