#include "relmonad/hoare.hpp"

#include <map>

namespace relmonad {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Counterexample:
      return "counterexample";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string Witness::str() const {
  return "(" + initial.str() + ", " + value.str() + ", " + final_state.str() +
         ")";
}

CheckReport CheckReport::make_holds(std::uint64_t states, std::string note) {
  return CheckReport{Verdict::Holds, std::nullopt, states, true,
                     std::move(note)};
}

CheckReport CheckReport::refuted(Witness w, std::uint64_t states,
                                 std::string note) {
  return CheckReport{Verdict::Counterexample, std::move(w), states, true,
                     std::move(note)};
}

CheckReport CheckReport::inconclusive(std::uint64_t states, std::string note) {
  return CheckReport{Verdict::Inconclusive, std::nullopt, states, false,
                     std::move(note)};
}

namespace {

// First post-violating outcome of one initial state, in canonical order.
std::optional<Witness> first_violation(const Value& s, const EvalResult& r,
                                       const PostCond& post) {
  for (const auto& o : r.outcomes.items())
    if (!post.test(o.value, o.state)) return Witness{s, o.value, o.state};
  return std::nullopt;
}

}  // namespace

CheckReport check_triple(const HoareTriple& t, const FiniteDomain& state_dom,
                         const EvalCtx& ctx, Exec exec) {
  EvalCtx local = ctx;
  if (!local.state_domain()) local.with_state_domain(state_dom);
  const size_t n = state_dom.size();

  if (!exec.parallel) {
    std::uint64_t checked = 0;
    bool complete = true;
    for (size_t i = 0; i < n; ++i) {
      const Value& s = state_dom.at(i);
      if (!t.pre.test(s)) continue;
      ++checked;
      local.stats().states_visited.fetch_add(1, std::memory_order_relaxed);
      EvalResult r = eval(t.prog, s, local);
      complete = complete && r.complete;
      if (auto w = first_violation(s, r, t.post)) {
        auto rep = CheckReport::refuted(*w, checked);
        rep.complete = complete;
        return rep;
      }
    }
    return complete ? CheckReport::make_holds(checked)
                    : CheckReport::inconclusive(checked);
  }

  // Parallel kernel: one independent slot per initial state, then a serial
  // fold that reproduces the serial report exactly.
  struct Row {
    bool relevant = false;
    bool complete = true;
    std::optional<Witness> witness;
  };
  std::vector<Row> rows(n);
  parallel_for(n, exec, [&](size_t i) {
    const Value& s = state_dom.at(i);
    if (!t.pre.test(s)) return;
    rows[i].relevant = true;
    local.stats().states_visited.fetch_add(1, std::memory_order_relaxed);
    EvalResult r = eval(t.prog, s, local);
    rows[i].complete = r.complete;
    rows[i].witness = first_violation(s, r, t.post);
  });
  std::uint64_t checked = 0;
  bool complete = true;
  for (size_t i = 0; i < n; ++i) {
    if (!rows[i].relevant) continue;
    ++checked;
    complete = complete && rows[i].complete;
    if (rows[i].witness) {
      auto rep = CheckReport::refuted(*rows[i].witness, checked);
      rep.complete = complete;
      return rep;
    }
  }
  return complete ? CheckReport::make_holds(checked)
                  : CheckReport::inconclusive(checked);
}

CheckReport check_implication(const Pred& p, const Pred& q,
                              const FiniteDomain& dom) {
  std::uint64_t checked = 0;
  for (const auto& s : dom.elements()) {
    ++checked;
    if (p.test(s) && !q.test(s))
      return CheckReport::refuted({s, Value::unit(), s}, checked,
                                  p.label() + " -> " + q.label());
  }
  return CheckReport::make_holds(checked, p.label() + " -> " + q.label());
}

CheckReport check_post_implication(const PostCond& p, const PostCond& q,
                                   const FiniteDomain& value_dom,
                                   const FiniteDomain& state_dom) {
  std::uint64_t checked = 0;
  for (const auto& a : value_dom.elements())
    for (const auto& s : state_dom.elements()) {
      ++checked;
      if (p.test(a, s) && !q.test(a, s))
        return CheckReport::refuted({s, a, s}, checked,
                                    p.label() + " -> " + q.label());
    }
  return CheckReport::make_holds(checked, p.label() + " -> " + q.label());
}

CheckReport equiv_check(const Prog& p, const Prog& q,
                        const FiniteDomain& state_dom, const EvalCtx& ctx,
                        Exec exec) {
  Denotation dp = denote(p, state_dom, ctx, exec);
  Denotation dq = denote(q, state_dom, ctx, exec);
  for (size_t i = 0; i < state_dom.size(); ++i) {
    const Value& s = state_dom.at(i);
    const auto& a = dp.row(i).outcomes;
    const auto& b = dq.row(i).outcomes;
    if (a == b) continue;
    for (const auto& o : a.items())
      if (!b.contains(o))
        return CheckReport::refuted({s, o.value, o.state}, i + 1,
                                    "outcome only on the left");
    for (const auto& o : b.items())
      if (!a.contains(o))
        return CheckReport::refuted({s, o.value, o.state}, i + 1,
                                    "outcome only on the right");
  }
  if (!dp.complete() || !dq.complete())
    return CheckReport::inconclusive(state_dom.size(),
                                     "equal so far, but incomplete");
  return CheckReport::make_holds(state_dom.size());
}

Prog greatest_spec(const PredFamily& P, const PostFamily& Q, const Value& arg,
                   const FiniteDomain& ret_dom,
                   const FiniteDomain& state_dom) {
  Pred pre = P.at(arg);
  PostCond post = Q.at(arg);
  return step("specW(" + arg.str() + ")",
              [pre, post, ret_dom, state_dom](const Value& s1) {
                std::vector<Outcome> out;
                const bool constrained = pre.test(s1);
                for (const auto& r : ret_dom.elements())
                  for (const auto& s2 : state_dom.elements())
                    if (!constrained || post.test(r, s2))
                      out.push_back({r, s2});
                return out;
              });
}

CheckReport fix_rule_check(const RecBody& F, const PredFamily& P,
                           const PostFamily& Q, const FiniteDomain& arg_dom,
                           const FiniteDomain& ret_dom,
                           const FiniteDomain& state_dom, const EvalCtx& ctx) {
  EvalCtx local = ctx;
  local.with_fresh_stats();
  if (!local.state_domain()) local.with_state_domain(state_dom);

  auto specw = std::make_shared<std::map<Value, Prog>>();
  CallHandle handle = [specw, &P, &Q, &ret_dom,
                       &state_dom](const Value& a) -> Prog {
    auto it = specw->find(a);
    if (it == specw->end())
      it = specw->emplace(a, greatest_spec(P, Q, a, ret_dom, state_dom)).first;
    return it->second;
  };

  auto merge_stats = [&]() {
    ctx.stats().states_visited += local.stats().states_visited.load();
    ctx.stats().fix_rounds += local.stats().fix_rounds.load();
    ctx.stats().rec_cells += local.stats().rec_cells.load();
    ctx.stats().chain_violations += local.stats().chain_violations.load();
  };

  std::uint64_t checked = 0;
  bool complete = true;
  bool escaped = false;
  std::string escape_note;
  std::optional<Witness> cex;
  std::string cex_note;

  for (const auto& a : arg_dom.elements()) {
    Prog premise = F(handle, a);
    Pred pre = P.at(a);
    PostCond post = Q.at(a);
    for (const auto& s : state_dom.elements()) {
      ++checked;
      EvalResult r = eval(premise, s, local);
      complete = complete && r.complete;
      for (const auto& o : r.outcomes.items()) {
        if (!ret_dom.contains(o.value) || !state_dom.contains(o.state)) {
          escaped = true;
          escape_note = "premise outcome " + o.value.str() +
                        " escapes the declared domains at arg " + a.str();
        }
        if (!cex && pre.test(s) && !post.test(o.value, o.state)) {
          cex = Witness{s, o.value, o.state};
          cex_note = "fix premise fails at arg " + a.str();
        }
      }
      if (cex) break;
    }
    if (cex) break;
  }

  merge_stats();
  if (local.stats().chain_violations.load() > 0)
    throw MonotonicityViolationError();
  if (cex) {
    auto rep = CheckReport::refuted(*cex, checked, cex_note);
    rep.complete = complete;
    return rep;
  }
  if (escaped) return CheckReport::inconclusive(checked, escape_note);
  if (!complete) return CheckReport::inconclusive(checked);
  return CheckReport::make_holds(checked);
}

CheckReport repeat_break_rule_check(
    const std::function<Prog(const Value&)>& body, const PredFamily& P,
    const PostCond& Q, const FiniteDomain& arg_dom,
    const FiniteDomain& state_dom, const EvalCtx& ctx) {
  PostCond cont_post = PostCond::of_family(P);
  std::uint64_t checked = 0;
  bool complete = true;
  for (const auto& a : arg_dom.elements()) {
    Prog body_a = body(a);
    Prog cont = mbind(body_a, [](const Value& x) { return continue_case(x); });
    Prog brk = mbind(body_a, [](const Value& x) { return break_case(x); });

    CheckReport c1 = check_triple({P.at(a), cont, cont_post}, state_dom, ctx);
    checked += c1.states_checked;
    complete = complete && c1.complete;
    if (c1.verdict == Verdict::Counterexample) {
      c1.note = "continue premise fails at arg " + a.str();
      c1.states_checked = checked;
      return c1;
    }

    CheckReport c2 = check_triple({P.at(a), brk, Q}, state_dom, ctx);
    checked += c2.states_checked;
    complete = complete && c2.complete;
    if (c2.verdict == Verdict::Counterexample) {
      c2.note = "break premise fails at arg " + a.str();
      c2.states_checked = checked;
      return c2;
    }
  }
  return complete ? CheckReport::make_holds(checked)
                  : CheckReport::inconclusive(checked);
}

}  // namespace relmonad
