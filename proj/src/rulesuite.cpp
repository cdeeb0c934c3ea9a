#include "relmonad/rulesuite.hpp"

#include <algorithm>
#include <map>

#include "relmonad/gen.hpp"

namespace relmonad {

namespace {

using gen::ProgGen;

// What the program can actually reach from pre-states: the strongest
// valid postcondition over the registered domains.
PostCond reachable_post(const Prog& p, const Pred& pre,
                        const FiniteDomain& states, const EvalCtx& ctx) {
  auto table = std::make_shared<OutcomeSet>();
  for (const auto& s : states.elements()) {
    if (!pre.test(s)) continue;
    table->merge(eval(p, s, ctx).outcomes);
  }
  return PostCond::atom("a", "reachable",
                        [table](const Value& a, const Value& s) {
                          return table->contains({a, s});
                        });
}

PostCond weaken(ProgGen& g, const PostCond& q) {
  PostCond noise = g.rand_post("noise", 0.3);
  return PostCond::atom("a", q.label() + " (weakened)",
                        [q, noise](const Value& a, const Value& s) {
                          return q.test(a, s) || noise.test(a, s);
                        });
}

struct Driver {
  ProgGen g;
  EvalCtx ctx;
  FiniteDomain unit_dom = FiniteDomain::unit_only();

  explicit Driver(std::uint64_t seed)
      : g(FiniteDomain::int_range(0, 3), FiniteDomain::int_range(0, 3), seed) {
    ctx.with_state_domain(g.states);
  }

  // Returns the composed node, or null when the instance should not count
  // as accepted (a premise failed to hold).
  ProofPtr instance(const std::string& rule) {
    if (rule == "ret") {
      return rule_ret(g.rand_post("p", 0.5), g.rand_value());
    }
    if (rule == "assume") {
      Prog goal = g.coin() ? assume(g.rand_pred("guard"))
                           : assume_pure("guard'", g.coin());
      return rule_assume(g.rand_pred("p"), goal);
    }
    if (rule == "any") return rule_any(g.rand_pred("p"), any(g.values));
    if (rule == "update")
      return rule_update(g.rand_pred("p"), update("rel", g.rand_rel()),
                         g.states);
    if (rule == "step")
      return rule_step(g.rand_pred("p"), step("step", g.rand_step()),
                       g.states);
    if (rule == "choice") {
      Prog f = g.prog(), h = g.prog();
      Pred p = g.rand_pred("p");
      Prog both = choice(f, h);
      PostCond q = reachable_post(both, p, g.states, ctx);
      return rule_choice(make_leaf({p, f, q}, g.states, ctx),
                         make_leaf({p, h, q}, g.states, ctx), both);
    }
    if (rule == "conj") {
      Prog f = g.prog();
      Pred p = g.rand_pred("p");
      PostCond q1 = reachable_post(f, p, g.states, ctx);
      PostCond q2 = weaken(g, q1);
      return rule_conj(make_leaf({p, f, q1}, g.states, ctx),
                       make_leaf({p, f, q2}, g.states, ctx));
    }
    if (rule == "bind") {
      Prog f = g.value_leaf();
      Cont k = g.rand_cont(1);
      Prog whole = mbind(f, k);
      Pred p = g.rand_pred("p");
      PostCond mid = reachable_post(f, p, g.states, ctx);
      PostCond q = reachable_post(whole, p, g.states, ctx);
      EvalCtx c2 = ctx;
      FiniteDomain st = g.states;
      return rule_bind(
          make_leaf({p, f, mid}, g.states, ctx), g.values,
          [q, c2, st](const Value& a, const Prog& goal, const PostCond& m) {
            return make_leaf({m.at(a), goal, q}, st, c2);
          },
          whole);
    }
    if (rule == "conseq") {
      Prog f = g.prog();
      Pred p2 = g.rand_pred("p2");
      Pred extra = g.rand_pred("extra");
      Pred p1 = Pred::atom("p1", [p2, extra](const Value& s) {
        return p2.test(s) && extra.test(s);
      });
      PostCond q2 = reachable_post(f, p2, g.states, ctx);
      PostCond q1 = weaken(g, q2);
      std::vector<Value> vals = g.values.elements();
      vals.push_back(Value::unit());
      FiniteDomain vdom(std::move(vals), "values+unit");
      return rule_conseq(imply(p1, p2, g.states),
                         make_leaf({p2, f, q2}, g.states, ctx),
                         imply_post(q2, q1, vdom, g.states));
    }
    if (rule == "pre-ex") {
      Prog f = g.prog();
      std::map<Value, Pred> table;
      for (const auto& x : g.values.elements())
        table.emplace(x, g.rand_pred("p(x)"));
      PredFamily pf("p", [table](const Value& x) {
        auto it = table.find(x);
        return it == table.end() ? Pred::constant("false", false) : it->second;
      });
      FiniteDomain xs = g.values;
      Pred ex = Pred::atom("exists x, p(x)", [pf, xs](const Value& s) {
        for (const auto& x : xs.elements())
          if (pf.at(x).test(s)) return true;
        return false;
      });
      PostCond q = reachable_post(f, ex, g.states, ctx);
      EvalCtx c2 = ctx;
      FiniteDomain st = g.states;
      return rule_pre_ex(
          "x", xs, pf, q,
          [pf, st, c2](const Value& x, const Prog& goal, const PostCond& post) {
            return make_leaf({pf.at(x), goal, post}, st, c2);
          },
          f);
    }
    if (rule == "repeat-break") {
      // Random loop body over ContinueOrBreak values, guard-split per arg.
      auto cont_t = std::make_shared<std::map<Value, Value>>();
      auto brk_t = std::make_shared<std::map<Value, Value>>();
      auto guards = std::make_shared<std::map<Value, Pred>>();
      for (const auto& v : g.values.elements()) {
        cont_t->emplace(v, g.rand_value());
        brk_t->emplace(v, g.rand_value());
        guards->emplace(v, g.rand_pred("g"));
      }
      auto body = [cont_t, brk_t, guards](const Value& a) -> Prog {
        Value cv = cont_t->count(a) ? cont_t->at(a) : a;
        Value bv = brk_t->count(a) ? brk_t->at(a) : a;
        Pred gd = guards->count(a) ? guards->at(a)
                                   : Pred::constant("false", false);
        return choice(mbind(assume(gd),
                            [cv](const Value&) { return continue_with(cv); }),
                      mbind(assume(Pred::atom("~g",
                                              [gd](const Value& s) {
                                                return !gd.test(s);
                                              })),
                            [bv](const Value&) { return break_with(bv); }));
      };
      PredFamily P("p", [this](const Value&) { return g.rand_pred("p(a)"); });
      // Touch every arg so the family is stable before composing.
      for (const auto& v : g.values.elements()) P.at(v);
      PostCond q = g.rand_post("q", 0.9);
      Value arg0 = g.rand_value();
      Prog goal = repeat_break("loop", body)(arg0);
      EvalCtx c2 = ctx;
      FiniteDomain st = g.states;
      PredFamily Pc = P;
      return rule_repeat_break(
          goal, body, P, q, g.values,
          [st, c2, Pc](const Value& a, const Prog& prem,
                       const PostCond& target) {
            return make_leaf({Pc.at(a), prem, target}, st, c2);
          },
          [st, c2, Pc](const Value& a, const Prog& prem,
                       const PostCond& target) {
            return make_leaf({Pc.at(a), prem, target}, st, c2);
          });
    }
    if (rule == "fix") {
      RecBody f = g.rand_functional();
      PredFamily P("p", [this](const Value&) { return g.rand_pred("p(a)"); });
      for (const auto& v : g.values.elements()) P.at(v);
      const int mode = static_cast<int>(g.pick(3));
      PostFamily Q;
      if (mode == 0) {
        PostCond truep = PostCond::atom(
            "a", "true", [](const Value&, const Value&) { return true; });
        Q = PostFamily::constant(truep);
      } else if (mode == 1) {
        EvalCtx c2 = ctx;
        FiniteDomain st = g.states;
        RecBody f2 = f;
        PredFamily P2 = P;
        Q = PostFamily("sem", [c2, st, f2, P2](const Value& a) {
          return reachable_post(rec("t", f2, a), P2.at(a), st, c2);
        });
      } else {
        auto memo = std::make_shared<std::map<Value, PostCond>>();
        ProgGen* gp = &g;
        Q = PostFamily("rand", [memo, gp](const Value& a) {
          auto it = memo->find(a);
          if (it == memo->end())
            it = memo->emplace(a, gp->rand_post("q(a)", 0.92)).first;
          return it->second;
        });
      }
      for (const auto& v : g.values.elements()) Q.at(v);
      Value arg0 = g.rand_value();
      Prog goal = rec("t", f, arg0);
      EvalCtx c2 = ctx;
      FiniteDomain st = g.states;
      return rule_fix(
          goal, P, Q, g.values, g.values, g.states,
          [st, c2, P](const Value& a, const Prog& prem, const PostCond& qa) {
            return make_leaf({P.at(a), prem, qa}, st, c2);
          },
          ctx);
    }
    throw Error("unknown rule: " + rule);
  }
};

}  // namespace

RuleSuiteResult run_rule_suite(const std::string& rule,
                               std::uint64_t instances, std::uint64_t seed) {
  Driver d(seed ^ std::hash<std::string>{}(rule));
  RuleSuiteResult out;
  out.rule = rule;
  const std::uint64_t max_attempts = instances * 200 + 1000;
  while (out.accepted < instances && out.attempts < max_attempts) {
    ++out.attempts;
    ProofPtr node;
    HoareTriple concl;
    try {
      node = d.instance(rule);
      concl = compose(node);
    } catch (const CompositionError&) {
      continue;  // premise did not hold; not an accepted instance
    }
    ++out.accepted;
    auto rep = check_triple(concl, d.g.states, d.ctx);
    if (!rep.holds()) {
      ++out.unsound;
      if (!out.witness) out.witness = rep.witness;
    }
  }
  return out;
}

std::vector<RuleSuiteResult> run_all_rule_suites(std::uint64_t instances,
                                                 std::uint64_t seed) {
  std::vector<RuleSuiteResult> out;
  for (const auto& r : rule_names())
    out.push_back(run_rule_suite(r, instances, seed));
  return out;
}

}  // namespace relmonad
