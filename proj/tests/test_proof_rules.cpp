#include "relmonad/gen.hpp"
#include "doctest.h"
#include "relmonad/proof.hpp"

using namespace relmonad;

namespace {
const FiniteDomain kUnit = FiniteDomain::unit_only();

// Semantic postcondition: what the program can actually reach from pre.
PostCond reachable_post(const Prog& p, const Pred& pre,
                        const FiniteDomain& states, const EvalCtx& ctx) {
  auto table = std::make_shared<OutcomeSet>();
  EvalCtx local = ctx;
  if (!local.state_domain()) local.with_state_domain(states);
  for (const auto& s : states.elements()) {
    if (!pre.test(s)) continue;
    auto r = eval(p, s, local);
    table->merge(r.outcomes);
  }
  return PostCond::atom("a", "reachable", [table](const Value& a,
                                                  const Value& s) {
    return table->contains({a, s});
  });
}
}  // namespace

TEST_CASE("conj composes {P}f{Q1} and {P}f{Q2} into {P}f{Q1 /\\ Q2}") {
  EvalCtx ctx;
  Pred p = Pred::constant("true", true);
  Prog f = any(FiniteDomain::int_range(1, 3));
  PostCond q1 = PostCond::atom("r", "r >= 1", [](const Value& r, const Value&) {
    return r.as_int() >= 1;
  });
  PostCond q2 = PostCond::atom("r", "r <= 3", [](const Value& r, const Value&) {
    return r.as_int() <= 3;
  });
  auto node = rule_conj(make_leaf({p, f, q1}, kUnit, ctx),
                        make_leaf({p, f, q2}, kUnit, ctx));
  HoareTriple t = compose(node);
  CHECK(t.post.label() == "r >= 1 /\\ r <= 3");
  CHECK(check_triple(t, kUnit, ctx).holds());
}

TEST_CASE("conj rejects children over different programs or preconditions") {
  EvalCtx ctx;
  Pred p = Pred::constant("true", true);
  Pred p2 = Pred::constant("true2", true);
  PostCond q = PostCond::atom("r", "any",
                              [](const Value&, const Value&) { return true; });
  Prog f = ret(Value(1));
  Prog g = ret(Value(1));  // equal denotation, different node
  CHECK_THROWS_AS(compose(rule_conj(make_leaf({p, f, q}, kUnit, ctx),
                                    make_leaf({p, g, q}, kUnit, ctx))),
                  SchemaMismatchError);
  CHECK_THROWS_AS(compose(rule_conj(make_leaf({p, f, q}, kUnit, ctx),
                                    make_leaf({p2, f, q}, kUnit, ctx))),
                  SchemaMismatchError);
}

TEST_CASE("choice composes branch triples") {
  EvalCtx ctx;
  Pred p = Pred::constant("true", true);
  PostCond q = PostCond::atom("r", "r in {1,2}",
                              [](const Value& r, const Value&) {
                                return r.as_int() == 1 || r.as_int() == 2;
                              });
  Prog f = ret(Value(1)), g = ret(Value(2));
  auto node = rule_choice(make_leaf({p, f, q}, kUnit, ctx),
                          make_leaf({p, g, q}, kUnit, ctx));
  HoareTriple t = compose(node);
  CHECK(t.prog->get_if<ChoiceP>() != nullptr);
  CHECK(check_triple(t, kUnit, ctx).holds());
}

TEST_CASE("compose rejects an unchecked (failing) leaf") {
  EvalCtx ctx;
  Pred p = Pred::constant("true", true);
  PostCond q = PostCond::atom("r", "r = 1", [](const Value& r, const Value&) {
    return r.as_int() == 1;
  });
  auto leaf = make_leaf({p, ret(Value(2)), q}, kUnit, ctx);
  CHECK_THROWS_AS(compose(leaf), UncheckedLeafError);
}

TEST_CASE("assume axiom: strongest postcondition is exact") {
  EvalCtx ctx;
  FiniteDomain states = FiniteDomain::int_range(0, 3);
  Pred p = Pred::atom("s >= 1", [](const Value& s) { return s.as_int() >= 1; });
  Pred g = Pred::atom("s <= 2", [](const Value& s) { return s.as_int() <= 2; });
  Prog a = assume(g);
  HoareTriple t = compose(rule_assume(p, a));
  CHECK(check_triple(t, states, ctx).holds());
  // exactness: every (tt, s) with P(s) /\ G(s) is reachable and vice versa
  for (const auto& s : states.elements()) {
    bool post_says = t.post.test(Value::unit(), s);
    bool reachable = p.test(s) && g.test(s);
    CHECK(post_says == reachable);
  }
}

TEST_CASE("update axiom: exact existential postcondition") {
  EvalCtx ctx;
  FiniteDomain states = FiniteDomain::int_range(0, 2);
  ctx.with_state_domain(states);
  Pred p = Pred::atom("s = 0", [](const Value& s) { return s.as_int() == 0; });
  Prog u = update("s2 = s1 + 1", [](const Value& a, const Value& b) {
    return b.as_int() == a.as_int() + 1;
  });
  HoareTriple t = compose(rule_update(p, u, states));
  CHECK(check_triple(t, states, ctx).holds());
  CHECK(t.post.test(Value::unit(), Value(1)));
  CHECK_FALSE(t.post.test(Value::unit(), Value(2)));
  CHECK_FALSE(t.post.test(Value(0), Value(1)));  // value pinned to tt
}

TEST_CASE("step axiom covers user relations") {
  EvalCtx ctx;
  FiniteDomain states = FiniteDomain::int_range(0, 2);
  Pred p = Pred::constant("true", true);
  Prog st = step("dup", [](const Value& s) -> std::vector<Outcome> {
    return {{s, s}, {Value(s.as_int() * 2), s}};
  });
  HoareTriple t = compose(rule_step(p, st, states));
  CHECK(check_triple(t, states, ctx).holds());
}

TEST_CASE("pre-ex rule bundles an existential precondition") {
  EvalCtx ctx;
  FiniteDomain states = FiniteDomain::int_range(0, 3);
  FiniteDomain xs = FiniteDomain::int_range(0, 3);
  // P(x) := (s = x); exists x. P(x) covers every state.
  PredFamily pf("s = x", [](const Value& x) {
    return Pred::atom("s = x", [x](const Value& s) { return s == x; });
  });
  Prog f = ret(Value(1));
  PostCond q = PostCond::atom("r", "r = 1", [](const Value& r, const Value&) {
    return r.as_int() == 1;
  });
  EvalCtx c2 = ctx;
  auto node = rule_pre_ex(
      "x", xs, pf, q,
      [&, c2](const Value& x, const Prog& goal, const PostCond& post) {
        return make_leaf({pf.at(x), goal, post}, states, c2);
      },
      f);
  HoareTriple t = compose(node);
  CHECK(t.pre.test(Value(2)));
  CHECK(check_triple(t, states, ctx).holds());
}

TEST_CASE("conseq validates its side conditions") {
  EvalCtx ctx;
  FiniteDomain states = FiniteDomain::int_range(0, 3);
  Pred strong =
      Pred::atom("s = 1", [](const Value& s) { return s.as_int() == 1; });
  Pred weak =
      Pred::atom("s >= 1", [](const Value& s) { return s.as_int() >= 1; });
  PostCond q = PostCond::atom("r", "true",
                              [](const Value&, const Value&) { return true; });
  auto child = make_leaf({weak, ret(Value(0)), q}, states, ctx);
  // strengthening: strong -> weak holds
  HoareTriple t =
      compose(rule_conseq(imply(strong, weak, states), child, std::nullopt));
  CHECK(t.pre.same(strong));
  // the reverse implication fails, and compose refuses it
  CHECK_THROWS_AS(
      compose(rule_conseq(imply(weak, strong, states),
                          make_leaf({strong, ret(Value(0)), q}, states, ctx),
                          std::nullopt)),
      UncheckedLeafError);
}

TEST_CASE("bind rule threads the intermediate condition") {
  EvalCtx ctx;
  FiniteDomain vals = FiniteDomain::int_range(1, 2);
  Pred p = Pred::constant("true", true);
  Prog f = any(vals);
  Prog g = mbind(f, [](const Value& v) { return ret(Value(v.as_int() + 10)); });
  PostCond q = PostCond::atom("r", "r in {11,12}",
                              [](const Value& r, const Value&) {
                                return r.as_int() == 11 || r.as_int() == 12;
                              });
  EvalCtx c2 = ctx;
  auto node = rule_bind(
      rule_any(p, f), vals,
      [q, c2](const Value& a, const Prog& goal, const PostCond& mid) {
        return make_leaf({mid.at(a), goal, q}, kUnit, c2);
      },
      g);
  HoareTriple t = compose(node);
  CHECK(t.prog == g);
  CHECK(check_triple(t, kUnit, ctx).holds());
}

TEST_CASE("randomized smoke: accepted compositions are sound") {
  // A slice of the acceptance suite, for fast feedback.
  gen::ProgGen G(FiniteDomain::int_range(0, 2), FiniteDomain::int_range(0, 2),
                 0xC0FFEE);
  EvalCtx ctx;
  ctx.with_state_domain(G.states);
  int accepted = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Prog f = G.prog();
    Prog g = G.prog();
    Pred p = G.rand_pred();
    Prog both = choice(f, g);
    PostCond q = reachable_post(both, p, G.states, ctx);
    auto node = rule_choice(make_leaf({p, f, q}, G.states, ctx),
                            make_leaf({p, g, q}, G.states, ctx), both);
    try {
      HoareTriple t = compose(node);
      ++accepted;
      CHECK(check_triple(t, G.states, ctx).holds());
    } catch (const CompositionError&) {
      // premise failed to hold; not a soundness question
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("fix rule rejects children with the wrong postcondition") {
  EvalCtx ctx;
  FiniteDomain dom = FiniteDomain::int_range(0, 1);
  RecBody f = [](const CallHandle&, const Value& a) { return ret(a); };
  PredFamily P("true",
               [](const Value&) { return Pred::constant("true", true); });
  PostFamily Q("r = a", [](const Value& a) {
    return PostCond::atom("r", "r = a", [a](const Value& r, const Value&) {
      return r == a;
    });
  });
  PostCond other = PostCond::atom(
      "r", "other", [](const Value&, const Value&) { return true; });
  EvalCtx c2 = ctx;
  auto node = rule_fix(
      rec("t", f, Value(0)), P, Q, dom, dom, kUnit,
      [other, c2](const Value&, const Prog& prem, const PostCond&) {
        // proves a triple with a post the rule did not ask for
        return make_leaf({Pred::constant("true", true), prem, other}, kUnit,
                         c2, {});
      },
      ctx);
  CHECK_THROWS_AS(compose(node), SchemaMismatchError);
}

TEST_CASE("repeat-break rule reports a failing break premise") {
  EvalCtx ctx;
  PredFamily P("true",
               [](const Value&) { return Pred::constant("true", true); });
  PostCond Q = PostCond::atom("r", "r = 0", [](const Value& r, const Value&) {
    return r == Value(0);
  });
  auto body = [](const Value& a) { return break_with(a); };
  auto rep = repeat_break_rule_check(body, P, Q,
                                     FiniteDomain::int_range(0, 3), kUnit,
                                     ctx);
  CHECK(rep.verdict == Verdict::Counterexample);
  CHECK(rep.note.find("break premise") != std::string::npos);
}
