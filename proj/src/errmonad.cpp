#include "relmonad/errmonad.hpp"

namespace relmonad {

namespace {
EProg make(EProgNode::Data d) {
  return std::make_shared<const EProgNode>(std::move(d));
}
}  // namespace

EProg err_ret(Value v) { return make(ERetP{std::move(v)}); }

EProg err_bind(EProg first, ECont rest) {
  return make(EBindP{std::move(first), std::move(rest)});
}

EProg err_seq(EProg first, EProg second) {
  return err_bind(std::move(first), [second](const Value&) { return second; });
}

EProg err_choice(EProg left, EProg right) {
  return make(EChoiceP{std::move(left), std::move(right)});
}

EProg err_assume(Pred pred) { return make(EAssumeP{std::move(pred)}); }

EProg err_assume_pure(std::string label, bool prop) {
  return make(EAssumePureP{[prop]() { return prop; }, std::move(label)});
}

EProg err_any(FiniteDomain dom) { return make(EAnyP{std::move(dom)}); }

EProg err_update(std::string label, StateRel rel) {
  return make(EUpdateP{std::move(rel), std::move(label)});
}

EProg assert_that(Pred pred) { return make(EAssertP{std::move(pred)}); }

EvalErrResult eval_err(const EProg& p, const Value& s0, const EvalCtx& ctx) {
  struct V {
    const Value& s0;
    const EvalCtx& ctx;

    EvalErrResult operator()(const ERetP& n) {
      EvalErrResult r;
      r.outcomes.insert({n.value, s0});
      return r;
    }
    EvalErrResult operator()(const EBindP& n) {
      EvalErrResult first = eval_err(n.first, s0, ctx);
      EvalErrResult out;
      out.err = first.err;
      out.complete = first.complete;
      for (const auto& o : first.outcomes.items()) {
        EvalErrResult rest = eval_err(n.rest(o.value), o.state, ctx);
        out.outcomes.merge(rest.outcomes);
        out.err = out.err || rest.err;
        out.complete = out.complete && rest.complete;
      }
      return out;
    }
    EvalErrResult operator()(const EChoiceP& n) {
      EvalErrResult l = eval_err(n.left, s0, ctx);
      EvalErrResult r = eval_err(n.right, s0, ctx);
      l.outcomes.merge(r.outcomes);
      l.err = l.err || r.err;
      l.complete = l.complete && r.complete;
      return l;
    }
    EvalErrResult operator()(const EAssumeP& n) {
      EvalErrResult r;
      if (n.pred.test(s0)) r.outcomes.insert({Value::unit(), s0});
      return r;
    }
    EvalErrResult operator()(const EAssumePureP& n) {
      EvalErrResult r;
      if (n.prop()) r.outcomes.insert({Value::unit(), s0});
      return r;
    }
    EvalErrResult operator()(const EAnyP& n) {
      EvalErrResult r;
      for (const auto& v : n.dom.elements()) r.outcomes.insert({v, s0});
      return r;
    }
    EvalErrResult operator()(const EUpdateP& n) {
      if (!ctx.state_domain()) throw MissingStateDomainError();
      EvalErrResult r;
      for (const auto& s2 : ctx.state_domain()->elements())
        if (n.rel(s0, s2)) r.outcomes.insert({Value::unit(), s2});
      return r;
    }
    EvalErrResult operator()(const EAssertP& n) {
      EvalErrResult r;
      if (n.pred.test(s0))
        r.outcomes.insert({Value::unit(), s0});
      else
        r.err = true;
      return r;
    }
  };
  return std::visit(V{s0, ctx}, p->data());
}

Prog erase(const EProg& p) {
  struct V {
    Prog operator()(const ERetP& n) { return ret(n.value); }
    Prog operator()(const EBindP& n) {
      ECont rest = n.rest;
      return mbind(erase(n.first),
                   [rest](const Value& v) { return erase(rest(v)); });
    }
    Prog operator()(const EChoiceP& n) {
      return choice(erase(n.left), erase(n.right));
    }
    Prog operator()(const EAssumeP& n) { return assume(n.pred); }
    Prog operator()(const EAssumePureP& n) {
      return assume_pure(n.label, n.prop);
    }
    Prog operator()(const EAnyP& n) { return any(n.dom); }
    Prog operator()(const EUpdateP& n) { return update(n.label, n.rel); }
    Prog operator()(const EAssertP& n) { return assume(n.pred); }
  };
  return std::visit(V{}, p->data());
}

CheckReport check_triple_err(const Pred& pre, const EProg& prog,
                             const PostCond& post,
                             const FiniteDomain& state_dom, const EvalCtx& ctx,
                             Exec exec) {
  EvalCtx local = ctx;
  if (!local.state_domain()) local.with_state_domain(state_dom);
  const size_t n = state_dom.size();

  struct Row {
    bool relevant = false;
    bool complete = true;
    bool err = false;
    std::optional<Witness> witness;
  };
  std::vector<Row> rows(n);
  parallel_for(n, exec, [&](size_t i) {
    const Value& s = state_dom.at(i);
    if (!pre.test(s)) return;
    rows[i].relevant = true;
    local.stats().states_visited.fetch_add(1, std::memory_order_relaxed);
    EvalErrResult r = eval_err(prog, s, local);
    rows[i].complete = r.complete;
    rows[i].err = r.err;
    for (const auto& o : r.outcomes.items())
      if (!post.test(o.value, o.state)) {
        rows[i].witness = Witness{s, o.value, o.state};
        break;
      }
  });

  std::uint64_t checked = 0;
  bool complete = true;
  for (size_t i = 0; i < n; ++i) {
    if (!rows[i].relevant) continue;
    ++checked;
    complete = complete && rows[i].complete;
    if (rows[i].err) {
      auto rep = CheckReport::refuted(
          {state_dom.at(i), Value::tagged("error", {}), state_dom.at(i)},
          checked, "error reachable from a pre-state");
      rep.complete = complete;
      return rep;
    }
    if (rows[i].witness) {
      auto rep = CheckReport::refuted(*rows[i].witness, checked);
      rep.complete = complete;
      return rep;
    }
  }
  return complete ? CheckReport::make_holds(checked)
                  : CheckReport::inconclusive(checked);
}

CheckReport assert_rule_check(const Pred& pre, const Pred& guard,
                              const FiniteDomain& state_dom) {
  auto rep = check_implication(pre, guard, state_dom);
  rep.note = "assert rule side condition: " + rep.note;
  return rep;
}

}  // namespace relmonad
