#include "relmonad/proof.hpp"

namespace relmonad {

CheckedImplication imply(Pred from, Pred to, const FiniteDomain& dom) {
  CheckReport r = check_implication(from, to, dom);
  return CheckedImplication{std::move(from), std::move(to), dom, std::move(r)};
}

CheckedPostImplication imply_post(PostCond from, PostCond to,
                                  const FiniteDomain& value_dom,
                                  const FiniteDomain& state_dom) {
  CheckReport r = check_post_implication(from, to, value_dom, state_dom);
  return CheckedPostImplication{std::move(from), std::move(to), value_dom,
                                state_dom, std::move(r)};
}

namespace {

std::string describe(const HoareTriple& t) {
  return "{" + t.pre.label() + "} " + kind_name(t.prog) + " {" +
         t.post.label() + "}";
}

void require_holds(const CheckReport& r, const std::string& what) {
  if (r.verdict == Verdict::Holds) return;
  std::string msg = what + " [" + verdict_name(r.verdict);
  if (r.witness) msg += " at " + r.witness->str();
  if (!r.note.empty()) msg += "; " + r.note;
  msg += "]";
  throw UncheckedLeafError(msg);
}

struct Composer {
  const ProofNode& node;
  std::vector<ProofPtr>& kids;

  HoareTriple sub(const ProofPtr& p) {
    kids.push_back(p);
    return p->conclusion();
  }

  HoareTriple operator()(const LeafN& n) {
    require_holds(n.report, describe(n.triple));
    return n.triple;
  }

  HoareTriple operator()(const RetN& n) {
    Prog goal = n.goal ? n.goal : ret(n.value);
    const auto* r = goal->get_if<RetP>();
    if (!r) throw SchemaMismatchError("ret", "goal is not a ret node");
    if (!(r->value == n.value))
      throw SchemaMismatchError("ret", "goal returns " + r->value.str() +
                                           ", rule instantiated at " +
                                           n.value.str());
    return {n.post.at(n.value), goal, n.post};
  }

  HoareTriple operator()(const BindN& n) {
    if (!n.goal) throw SchemaMismatchError("bind", "missing goal program");
    const auto* b = n.goal->get_if<BindP>();
    if (!b) throw SchemaMismatchError("bind", "goal is not a bind node");
    HoareTriple tl = sub(n.left);
    if (tl.prog != b->first)
      throw SchemaMismatchError("bind", "left premise proves a different "
                                        "program than the goal's first part");
    if (n.val_dom.empty())
      throw SchemaMismatchError("bind", "empty intermediate value domain");
    std::optional<PostCond> post;
    for (const auto& a : n.val_dom.elements()) {
      const Prog& ga = b->rest_at(a);
      HoareTriple tr = sub(n.right(a, ga, tl.post));
      if (!tr.pre.same(tl.post.at(a)))
        throw SchemaMismatchError(
            "bind", "premise at " + a.str() +
                        " does not start from the intermediate condition");
      if (tr.prog != ga)
        throw SchemaMismatchError("bind", "premise at " + a.str() +
                                              " proves a different program");
      if (!post)
        post = tr.post;
      else if (!post->same(tr.post))
        throw SchemaMismatchError("bind", "premise postconditions disagree");
    }
    return {tl.pre, n.goal, *post};
  }

  HoareTriple operator()(const ChoiceN& n) {
    HoareTriple tl = sub(n.left);
    HoareTriple tr = sub(n.right);
    if (!tl.pre.same(tr.pre))
      throw SchemaMismatchError("choice", "branch preconditions differ");
    if (!tl.post.same(tr.post))
      throw SchemaMismatchError("choice", "branch postconditions differ");
    Prog goal = n.goal;
    if (goal) {
      const auto* c = goal->get_if<ChoiceP>();
      if (!c) throw SchemaMismatchError("choice", "goal is not a choice node");
      if (c->left != tl.prog || c->right != tr.prog)
        throw SchemaMismatchError("choice",
                                  "branch premises prove different programs");
    } else {
      goal = choice(tl.prog, tr.prog);
    }
    return {tl.pre, goal, tl.post};
  }

  HoareTriple operator()(const AssumeN& n) {
    Pred guard;
    if (const auto* a = n.goal->get_if<AssumeP>()) {
      guard = a->pred;
    } else if (const auto* ap = n.goal->get_if<AssumePureP>()) {
      auto prop = ap->prop;
      guard = Pred::atom(ap->label, [prop](const Value&) { return prop(); });
    } else {
      throw SchemaMismatchError("assume", "goal is not an assume node");
    }
    return {n.pre, n.goal,
            PostCond::conj(PostCond::lift(n.pre), PostCond::lift(guard))};
  }

  HoareTriple operator()(const AnyN& n) {
    if (!n.goal->get_if<AnyP>())
      throw SchemaMismatchError("any", "goal is not an any node");
    return {n.pre, n.goal, PostCond::lift(n.pre)};
  }

  HoareTriple operator()(const UpdateN& n) {
    const auto* u = n.goal->get_if<UpdateP>();
    if (!u) throw SchemaMismatchError("update", "goal is not an update node");
    Pred pre = n.pre;
    auto rel = u->rel;
    FiniteDomain dom = n.state_dom;
    PostCond post = PostCond::atom(
        "a",
        "exists s1, " + u->label + "(s1, s2) /\\ (" + pre.label() + ")(s1)",
        [pre, rel, dom](const Value& a, const Value& s2) {
          if (!(a == Value::unit())) return false;
          for (const auto& s1 : dom.elements())
            if (pre.test(s1) && rel(s1, s2)) return true;
          return false;
        });
    return {n.pre, n.goal, post};
  }

  HoareTriple operator()(const StepN& n) {
    const auto* st = n.goal->get_if<StepP>();
    if (!st) throw SchemaMismatchError("step", "goal is not a step node");
    Pred pre = n.pre;
    auto fn = st->fn;
    FiniteDomain dom = n.state_dom;
    PostCond post = PostCond::atom(
        "a",
        "exists s1, (a, s2) in " + st->label + "(s1) /\\ (" + pre.label() +
            ")(s1)",
        [pre, fn, dom](const Value& a, const Value& s2) {
          for (const auto& s1 : dom.elements()) {
            if (!pre.test(s1)) continue;
            for (const auto& o : fn(s1))
              if (o.value == a && o.state == s2) return true;
          }
          return false;
        });
    return {n.pre, n.goal, post};
  }

  HoareTriple operator()(const ConseqN& n) {
    HoareTriple tc = sub(n.child);
    Pred pre = tc.pre;
    PostCond post = tc.post;
    if (n.pre_impl) {
      require_holds(n.pre_impl->report, "conseq precondition implication " +
                                            n.pre_impl->from.label() + " -> " +
                                            n.pre_impl->to.label());
      if (!n.pre_impl->to.same(tc.pre))
        throw SchemaMismatchError(
            "conseq", "implication strengthens to a different precondition");
      pre = n.pre_impl->from;
    }
    if (n.post_impl) {
      require_holds(n.post_impl->report, "conseq postcondition implication " +
                                             n.post_impl->from.label() +
                                             " -> " + n.post_impl->to.label());
      if (!n.post_impl->from.same(tc.post))
        throw SchemaMismatchError(
            "conseq", "implication weakens from a different postcondition");
      post = n.post_impl->to;
    }
    return {pre, tc.prog, post};
  }

  HoareTriple operator()(const PreExN& n) {
    if (!n.goal) throw SchemaMismatchError("pre-ex", "missing goal program");
    for (const auto& x : n.dom.elements()) {
      HoareTriple tx = sub(n.children(x, n.goal, n.post));
      if (!tx.pre.same(n.pre_family.at(x)))
        throw SchemaMismatchError("pre-ex", "premise at " + x.str() +
                                                " has the wrong precondition");
      if (tx.prog != n.goal)
        throw SchemaMismatchError("pre-ex", "premise at " + x.str() +
                                                " proves a different program");
      if (!tx.post.same(n.post))
        throw SchemaMismatchError("pre-ex", "premise at " + x.str() +
                                                " has the wrong postcondition");
    }
    return {Pred::exists_over(n.binder, n.dom, n.pre_family), n.goal, n.post};
  }

  HoareTriple operator()(const ConjN& n) {
    HoareTriple tl = sub(n.left);
    HoareTriple tr = sub(n.right);
    if (!tl.pre.same(tr.pre))
      throw SchemaMismatchError("conj", "premises have different preconditions");
    if (tl.prog != tr.prog)
      throw SchemaMismatchError("conj", "premises prove different programs");
    return {tl.pre, tl.prog, PostCond::conj(tl.post, tr.post)};
  }

  HoareTriple operator()(const FixN& n) {
    const auto* r = n.goal->get_if<RecP>();
    if (!r) throw SchemaMismatchError("fix", "goal is not a rec node");
    require_holds(n.domain_report, "fix rule domain-closure side condition");
    // Value captures only: premise trees outlive this frame.
    CallHandle handle = [specw = n.specw, P = n.P, Q = n.Q, rd = n.ret_dom,
                         sd = n.state_dom](const Value& a) -> Prog {
      auto it = specw->find(a);
      if (it == specw->end())
        it = specw->emplace(a, greatest_spec(P, Q, a, rd, sd)).first;
      return it->second;
    };
    auto premise_at = [&](const Value& a) -> const Prog& {
      auto it = n.premises->find(a);
      if (it == n.premises->end())
        it = n.premises->emplace(a, r->body(handle, a)).first;
      return it->second;
    };
    for (const auto& a : n.arg_dom.elements()) {
      const Prog& prem = premise_at(a);
      HoareTriple ta = sub(n.children(a, prem, n.Q.at(a)));
      if (!ta.pre.same(n.P.at(a)))
        throw SchemaMismatchError("fix", "premise at " + a.str() +
                                             " has the wrong precondition");
      if (ta.prog != prem)
        throw SchemaMismatchError(
            "fix", "premise at " + a.str() +
                       " proves a different program than F(specW)");
      if (!ta.post.same(n.Q.at(a)))
        throw SchemaMismatchError("fix", "premise at " + a.str() +
                                             " has the wrong postcondition");
    }
    return {n.P.at(r->arg), n.goal, n.Q.at(r->arg)};
  }

  HoareTriple operator()(const RepeatBreakN& n) {
    const auto* r = n.goal->get_if<RecP>();
    if (!r)
      throw SchemaMismatchError("repeat-break", "goal is not a rec node");
    if (!n.cont_post->valid()) *n.cont_post = PostCond::of_family(n.P);
    auto premise_at = [&](std::shared_ptr<std::map<Value, Prog>>& memo,
                          const Value& a, bool cont) -> const Prog& {
      auto it = memo->find(a);
      if (it == memo->end()) {
        Prog body_a = n.body(a);
        Prog prem =
            cont ? mbind(body_a,
                         [](const Value& x) { return continue_case(x); })
                 : mbind(body_a, [](const Value& x) { return break_case(x); });
        it = memo->emplace(a, std::move(prem)).first;
      }
      return it->second;
    };
    for (const auto& a : n.arg_dom.elements()) {
      auto cont_memo = n.cont_prem;
      const Prog& cp = premise_at(cont_memo, a, true);
      HoareTriple tc = sub(n.cont_children(a, cp, *n.cont_post));
      if (!tc.pre.same(n.P.at(a)) || tc.prog != cp ||
          !tc.post.same(*n.cont_post))
        throw SchemaMismatchError("repeat-break",
                                  "continue premise at " + a.str() +
                                      " does not match the rule schema");
      auto brk_memo = n.brk_prem;
      const Prog& bp = premise_at(brk_memo, a, false);
      HoareTriple tb = sub(n.brk_children(a, bp, n.Q));
      if (!tb.pre.same(n.P.at(a)) || tb.prog != bp || !tb.post.same(n.Q))
        throw SchemaMismatchError("repeat-break",
                                  "break premise at " + a.str() +
                                      " does not match the rule schema");
    }
    return {n.P.at(r->arg), n.goal, n.Q};
  }
};

}  // namespace

const HoareTriple& ProofNode::conclusion() const {
  if (!concl_) {
    kids_.clear();
    concl_ = std::visit(Composer{*this, kids_}, data_);
  }
  return *concl_;
}

HoareTriple compose(const ProofPtr& root) { return root->conclusion(); }

// ------------------------------------------------------------ builders

namespace {
ProofPtr make_node(ProofNode::Data d, ProofMeta m) {
  return std::make_shared<const ProofNode>(std::move(d), std::move(m));
}
}  // namespace

ProofPtr make_leaf(HoareTriple t, const FiniteDomain& state_dom,
                   const EvalCtx& ctx, ProofMeta meta) {
  CheckReport r = check_triple(t, state_dom, ctx);
  return make_node(LeafN{std::move(t), std::move(r)}, std::move(meta));
}

ProofPtr make_leaf_prechecked(HoareTriple t, CheckReport report,
                              ProofMeta meta) {
  return make_node(LeafN{std::move(t), std::move(report)}, std::move(meta));
}

ProofPtr rule_ret(PostCond post, Value value, Prog goal, ProofMeta meta) {
  return make_node(RetN{std::move(post), std::move(value), std::move(goal)},
                   std::move(meta));
}

ProofPtr rule_bind(ProofPtr left, FiniteDomain val_dom, GoalFamily right,
                   Prog goal, ProofMeta meta) {
  return make_node(BindN{std::move(left), std::move(val_dom), std::move(right),
                         std::move(goal)},
                   std::move(meta));
}

ProofPtr rule_choice(ProofPtr left, ProofPtr right, Prog goal,
                     ProofMeta meta) {
  return make_node(ChoiceN{std::move(left), std::move(right), std::move(goal)},
                   std::move(meta));
}

ProofPtr rule_assume(Pred pre, Prog goal, ProofMeta meta) {
  return make_node(AssumeN{std::move(pre), std::move(goal)}, std::move(meta));
}

ProofPtr rule_any(Pred pre, Prog goal, ProofMeta meta) {
  return make_node(AnyN{std::move(pre), std::move(goal)}, std::move(meta));
}

ProofPtr rule_update(Pred pre, Prog goal, FiniteDomain state_dom,
                     ProofMeta meta) {
  return make_node(UpdateN{std::move(pre), std::move(goal),
                           std::move(state_dom)},
                   std::move(meta));
}

ProofPtr rule_step(Pred pre, Prog goal, FiniteDomain state_dom,
                   ProofMeta meta) {
  return make_node(StepN{std::move(pre), std::move(goal), std::move(state_dom)},
                   std::move(meta));
}

ProofPtr rule_conseq(std::optional<CheckedImplication> pre_impl,
                     ProofPtr child,
                     std::optional<CheckedPostImplication> post_impl,
                     ProofMeta meta) {
  return make_node(ConseqN{std::move(pre_impl), std::move(child),
                           std::move(post_impl)},
                   std::move(meta));
}

ProofPtr rule_pre_ex(std::string binder, FiniteDomain dom,
                     PredFamily pre_family, PostCond post, GoalFamily children,
                     Prog goal, ProofMeta meta) {
  return make_node(PreExN{std::move(binder), std::move(dom),
                          std::move(pre_family), std::move(post),
                          std::move(children), std::move(goal)},
                   std::move(meta));
}

ProofPtr rule_conj(ProofPtr left, ProofPtr right, ProofMeta meta) {
  return make_node(ConjN{std::move(left), std::move(right)}, std::move(meta));
}

ProofPtr rule_fix(Prog goal, PredFamily P, PostFamily Q, FiniteDomain arg_dom,
                  FiniteDomain ret_dom, FiniteDomain state_dom,
                  GoalFamily children, const EvalCtx& ctx, ProofMeta meta) {
  const auto* r = goal->get_if<RecP>();
  if (!r) throw SchemaMismatchError("fix", "goal is not a rec node");

  // Domain-closure side condition: every premise outcome stays inside the
  // declared result/state universes.
  EvalCtx local = ctx;
  local.with_fresh_stats();
  if (!local.state_domain()) local.with_state_domain(state_dom);
  FixN node{std::move(goal), std::move(P), std::move(Q), std::move(arg_dom),
            std::move(ret_dom), std::move(state_dom), std::move(children),
            CheckReport{}, nullptr, nullptr};
  node.specw = std::make_shared<std::map<Value, Prog>>();
  node.premises = std::make_shared<std::map<Value, Prog>>();

  std::uint64_t checked = 0;
  bool ok = true;
  std::string note;
  CallHandle handle = [specw = node.specw, P = node.P, Q = node.Q,
                       rd = node.ret_dom,
                       sd = node.state_dom](const Value& a2) -> Prog {
    auto it = specw->find(a2);
    if (it == specw->end())
      it = specw->emplace(a2, greatest_spec(P, Q, a2, rd, sd)).first;
    return it->second;
  };
  for (const auto& a : node.arg_dom.elements()) {
    auto it = node.premises->find(a);
    if (it == node.premises->end())
      it = node.premises->emplace(a, r->body(handle, a)).first;
    for (const auto& s : node.state_dom.elements()) {
      ++checked;
      EvalResult res = eval(it->second, s, local);
      if (!res.complete) {
        ok = false;
        note = "incomplete premise evaluation at arg " + a.str();
      }
      for (const auto& o : res.outcomes.items())
        if (!node.ret_dom.contains(o.value) ||
            !node.state_dom.contains(o.state)) {
          ok = false;
          note = "premise outcome " + o.value.str() +
                 " escapes the declared domains at arg " + a.str();
        }
    }
  }
  ctx.stats().states_visited += local.stats().states_visited.load();
  ctx.stats().fix_rounds += local.stats().fix_rounds.load();
  ctx.stats().rec_cells += local.stats().rec_cells.load();
  ctx.stats().chain_violations += local.stats().chain_violations.load();
  if (local.stats().chain_violations.load() > 0)
    throw MonotonicityViolationError();
  node.domain_report = ok ? CheckReport::make_holds(checked, "domain closure")
                          : CheckReport::inconclusive(checked, note);
  return make_node(std::move(node), std::move(meta));
}

ProofPtr rule_repeat_break(Prog goal, std::function<Prog(const Value&)> body,
                           PredFamily P, PostCond Q, FiniteDomain arg_dom,
                           GoalFamily cont_children, GoalFamily brk_children,
                           ProofMeta meta) {
  return make_node(RepeatBreakN{std::move(goal), std::move(body), std::move(P),
                                std::move(Q), std::move(arg_dom),
                                std::move(cont_children),
                                std::move(brk_children)},
                   std::move(meta));
}

// ------------------------------------------------------------ reporting

namespace {

void collect(const ProofPtr& node, std::vector<LeafRecord>& out) {
  const auto& meta = node->meta();
  if (const auto* leaf = std::get_if<LeafN>(&node->data())) {
    out.push_back({meta.group,
                   meta.label.empty() ? describe(leaf->triple) : meta.label,
                   leaf->report.verdict, leaf->report.witness,
                   leaf->report.note});
    return;
  }
  if (const auto* c = std::get_if<ConseqN>(&node->data())) {
    if (c->pre_impl)
      out.push_back({meta.group,
                     meta.label.empty()
                         ? c->pre_impl->from.label() + " -> " +
                               c->pre_impl->to.label()
                         : meta.label,
                     c->pre_impl->report.verdict, c->pre_impl->report.witness,
                     "implication"});
    if (c->post_impl)
      out.push_back({meta.group,
                     meta.label.empty()
                         ? c->post_impl->from.label() + " -> " +
                               c->post_impl->to.label()
                         : meta.label + " (post)",
                     c->post_impl->report.verdict,
                     c->post_impl->report.witness, "implication"});
  }
  if (const auto* f = std::get_if<FixN>(&node->data())) {
    out.push_back({meta.group, "fix domain closure (" + meta.label + ")",
                   f->domain_report.verdict, f->domain_report.witness,
                   f->domain_report.note});
  }
  for (const auto& kid : node->kids()) collect(kid, out);
}

}  // namespace

void collect_leaf_records(const ProofPtr& root, std::vector<LeafRecord>& out) {
  collect(root, out);
}

}  // namespace relmonad
