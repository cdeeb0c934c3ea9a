#include "relmonad/vcgen.hpp"

#include <map>

namespace relmonad {

std::string VC::render() const {
  std::string out;
  for (size_t i = 0; i < hypotheses.size(); ++i) {
    if (i) out += " /\\ ";
    out += hypotheses[i];
  }
  if (!hypotheses.empty()) out += " ==> ";
  out += goal;
  return out;
}

namespace {

using Sig = std::vector<int>;  // choice decisions identifying a path

// ------------------------------------------------- label (representative) walk

struct LabelPath {
  Sig sig;
  std::vector<std::string> guards;
  std::vector<std::string> binders;
  // Strongest-postcondition components for the zero-VC match: the guard
  // predicates in order; disengaged entries break the match.
  std::vector<std::optional<Pred>> sp_guards;
  bool sp_exact = true;  // false once any/update/step intervened
  std::string result_label;
  bool has_result = false;  // false: path died
};

struct LabelWalk {
  std::vector<LabelPath> out;
  int fresh = 0;

  struct Incoming {
    std::string payload_label;
  };

  void run(const Prog& p, std::vector<Cont> frames, LabelPath acc,
           Incoming in) {
    if (const auto* b = p->get_if<BindP>()) {
      frames.push_back(b->rest);
      run(b->first, std::move(frames), std::move(acc), in);
      return;
    }
    if (const auto* c = p->get_if<ChoiceP>()) {
      LabelPath l = acc;
      l.sig.push_back(0);
      run(c->left, frames, std::move(l), in);
      acc.sig.push_back(1);
      run(c->right, std::move(frames), std::move(acc), in);
      return;
    }
    if (const auto* r = p->get_if<RetP>()) {
      resume(frames, std::move(acc), r->value,
             {r->payload_label.empty() ? r->label : r->payload_label},
             r->label);
      return;
    }
    if (const auto* a = p->get_if<AssumeP>()) {
      acc.guards.push_back(a->pred.label());
      acc.sp_guards.emplace_back(a->pred);
      resume(frames, std::move(acc), Value::unit(), {""}, "tt");
      return;
    }
    if (const auto* a = p->get_if<AssumePureP>()) {
      acc.guards.push_back(a->label);
      acc.sp_guards.emplace_back(std::nullopt);
      resume(frames, std::move(acc), Value::unit(), {""}, "tt");
      return;
    }
    if (const auto* a = p->get_if<AnyP>()) {
      if (a->dom.empty()) return;  // no outcomes on this path
      std::string name = "v" + std::to_string(fresh++);
      acc.binders.push_back(name + " in " + a->dom.name());
      acc.sp_exact = false;
      resume(frames, std::move(acc), a->dom.at(0), {""}, name);
      return;
    }
    if (const auto* u = p->get_if<UpdateP>()) {
      acc.binders.push_back("s' with " + u->label);
      acc.sp_exact = false;
      resume(frames, std::move(acc), Value::unit(), {""}, "tt");
      return;
    }
    if (const auto* st = p->get_if<StepP>()) {
      // Case steps are value-driven and state-agnostic; generic steps are
      // probed at the unit state for labeling purposes (discharge is exact).
      auto outs = st->fn(Value::unit());
      if (!st->case_tag.empty()) {
        if (outs.empty()) return;  // mismatched variant kills the path
        std::string lbl =
            in.payload_label.empty() ? outs[0].value.str() : in.payload_label;
        resume(frames, std::move(acc), outs[0].value, {""}, lbl);
        return;
      }
      acc.sp_exact = false;
      acc.binders.push_back("(a, s') in " + st->label);
      for (const auto& o : outs) {
        LabelPath copy = acc;
        resume(frames, std::move(copy), o.value, {""}, o.value.str());
      }
      return;
    }
    throw UnsupportedConstructError(kind_name(p));
  }

  void resume(std::vector<Cont> frames, LabelPath acc, const Value& v,
              Incoming in, std::string vlabel) {
    if (frames.empty()) {
      acc.result_label = std::move(vlabel);
      acc.has_result = true;
      out.push_back(std::move(acc));
      return;
    }
    Cont k = frames.back();
    frames.pop_back();
    in.payload_label = in.payload_label.empty() ? vlabel : in.payload_label;
    run(k(v), std::move(frames), std::move(acc), in);
  }
};

// Structural zero-VC test: post == lift(pre) /\ lift(g1) /\ ... in order.
bool sp_matches(const Pred& pre, const std::vector<std::optional<Pred>>& guards,
                const PostCond& post) {
  // Build the expected structure and compare with same(); conj is
  // left-associated by PostCond::conj usage below.
  for (const auto& g : guards)
    if (!g) return false;
  PostCond expect = PostCond::lift(pre);
  for (const auto& g : guards) expect = PostCond::conj(expect, PostCond::lift(*g));
  return expect.same(post);
}

std::vector<VC> gen_from(const HoareTriple& t,
                         const std::vector<std::pair<std::string, FiniteDomain>>& params,
                         std::vector<Sig>* sigs_out) {
  LabelWalk w;
  w.run(t.prog, {}, LabelPath{}, {});
  std::vector<VC> vcs;
  for (auto& path : w.out) {
    if (!path.has_result) continue;
    if (path.sp_exact && sp_matches(t.pre, path.sp_guards, t.post))
      continue;  // strongest-postcondition match: nothing to prove
    VC vc;
    vc.hypotheses = path.guards;
    vc.hypotheses.push_back(t.pre.label());
    vc.goal = t.post.render_goal(path.result_label);
    for (const auto& [name, dom] : params)
      vc.binders.push_back(name + " in " + dom.name());
    for (auto& b : path.binders) vc.binders.push_back(b);
    if (sigs_out) sigs_out->push_back(path.sig);
    vcs.push_back(std::move(vc));
  }
  return vcs;
}

// ------------------------------------------------------ concrete discharge

struct ExecWalk {
  const EvalCtx& ctx;
  const PostCond& post;
  const Value& s0;
  // per-signature violation evidence
  std::map<Sig, Witness>* violations;
  std::map<Sig, std::uint64_t>* checked;

  void run(const Prog& p, std::vector<Cont> frames, Sig sig, const Value& s) {
    if (const auto* b = p->get_if<BindP>()) {
      frames.push_back(b->rest);
      run(b->first, std::move(frames), std::move(sig), s);
      return;
    }
    if (const auto* c = p->get_if<ChoiceP>()) {
      Sig l = sig;
      l.push_back(0);
      run(c->left, frames, std::move(l), s);
      sig.push_back(1);
      run(c->right, std::move(frames), std::move(sig), s);
      return;
    }
    if (const auto* r = p->get_if<RetP>()) {
      resume(frames, std::move(sig), r->value, s);
      return;
    }
    if (const auto* a = p->get_if<AssumeP>()) {
      if (a->pred.test(s)) resume(frames, std::move(sig), Value::unit(), s);
      return;
    }
    if (const auto* a = p->get_if<AssumePureP>()) {
      if (a->prop()) resume(frames, std::move(sig), Value::unit(), s);
      return;
    }
    if (const auto* a = p->get_if<AnyP>()) {
      for (const auto& v : a->dom.elements()) resume(frames, sig, v, s);
      return;
    }
    if (const auto* u = p->get_if<UpdateP>()) {
      if (!ctx.state_domain()) throw MissingStateDomainError();
      for (const auto& s2 : ctx.state_domain()->elements())
        if (u->rel(s, s2)) resume(frames, sig, Value::unit(), s2);
      return;
    }
    if (const auto* st = p->get_if<StepP>()) {
      for (const auto& o : st->fn(s)) resume(frames, sig, o.value, o.state);
      return;
    }
    throw UnsupportedConstructError(kind_name(p));
  }

  void resume(std::vector<Cont> frames, Sig sig, const Value& v,
              const Value& s) {
    if (frames.empty()) {
      (*checked)[sig]++;
      if (!post.test(v, s) && !violations->count(sig))
        (*violations)[sig] = Witness{s0, v, s};
      return;
    }
    Cont k = frames.back();
    frames.pop_back();
    run(k(v), std::move(frames), std::move(sig), s);
  }
};

void discharge_instance(const HoareTriple& t,
                        const std::optional<FiniteDomain>& state_dom,
                        const EvalCtx& ctx, std::map<Sig, Witness>& violations,
                        std::map<Sig, std::uint64_t>& checked) {
  EvalCtx local = ctx;
  if (!local.state_domain() && state_dom) local.with_state_domain(*state_dom);
  std::vector<Value> initials;
  if (state_dom)
    initials = state_dom->elements();
  else
    initials = {Value::unit()};
  for (const auto& s0 : initials) {
    if (!t.pre.test(s0)) continue;
    ExecWalk w{local, t.post, s0, &violations, &checked};
    w.run(t.prog, {}, {}, s0);
  }
}

std::vector<CheckReport> reports_for(const std::vector<Sig>& sigs,
                                     const std::map<Sig, Witness>& violations,
                                     const std::map<Sig, std::uint64_t>& checked) {
  std::vector<CheckReport> out;
  out.reserve(sigs.size());
  for (const auto& sig : sigs) {
    auto c = checked.count(sig) ? checked.at(sig) : 0;
    auto v = violations.find(sig);
    if (v != violations.end())
      out.push_back(CheckReport::refuted(v->second, c));
    else
      out.push_back(CheckReport::make_holds(c));
  }
  // Violations on paths the representative label walk never reached (a
  // continuation branched on a value the representative didn't take) are
  // appended so a fully discharged list really does imply the triple.
  for (const auto& [sig, w] : violations) {
    if (std::find(sigs.begin(), sigs.end(), sig) != sigs.end()) continue;
    auto c = checked.count(sig) ? checked.at(sig) : 0;
    out.push_back(
        CheckReport::refuted(w, c, "path outside the representative walk"));
  }
  return out;
}

}  // namespace

std::vector<VC> vc_gen(const HoareTriple& t) { return gen_from(t, {}, nullptr); }

std::vector<VC> vc_gen(const TripleFamily& family) {
  ValueList env;
  for (const auto& [name, dom] : family.params) {
    if (dom.empty()) throw InvalidParameterError("empty domain for " + name);
    env.push_back(dom.at(0));
  }
  HoareTriple t = family.make(env);
  return gen_from(t, family.params, nullptr);
}

std::vector<CheckReport> vc_discharge(const HoareTriple& t,
                                      const std::optional<FiniteDomain>& state_dom,
                                      const EvalCtx& ctx) {
  std::vector<Sig> sigs;
  gen_from(t, {}, &sigs);
  std::map<Sig, Witness> violations;
  std::map<Sig, std::uint64_t> checked;
  discharge_instance(t, state_dom, ctx, violations, checked);
  return reports_for(sigs, violations, checked);
}

std::vector<CheckReport> vc_discharge(const TripleFamily& family,
                                      const std::optional<FiniteDomain>& state_dom,
                                      const EvalCtx& ctx) {
  ValueList rep_env;
  for (const auto& [name, dom] : family.params) {
    if (dom.empty()) throw InvalidParameterError("empty domain for " + name);
    rep_env.push_back(dom.at(0));
  }
  std::vector<Sig> sigs;
  gen_from(family.make(rep_env), family.params, &sigs);

  std::map<Sig, Witness> violations;
  std::map<Sig, std::uint64_t> checked;
  // Cartesian walk over the parameter domains.
  std::vector<size_t> idx(family.params.size(), 0);
  while (true) {
    ValueList env;
    for (size_t i = 0; i < idx.size(); ++i)
      env.push_back(family.params[i].second.at(idx[i]));
    discharge_instance(family.make(env), state_dom, ctx, violations, checked);
    size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < family.params[i].second.size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return reports_for(sigs, violations, checked);
}

}  // namespace relmonad
