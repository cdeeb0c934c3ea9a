#include "relmonad/prog.hpp"

namespace relmonad {

const Prog& BindP::rest_at(const Value& v) const {
  std::lock_guard<std::mutex> lock(memo_->mu);
  auto it = memo_->entries.find(v);
  if (it == memo_->entries.end()) it = memo_->entries.emplace(v, rest(v)).first;
  return it->second;
}

namespace {
Prog make(ProgNode::Data d) {
  return std::make_shared<const ProgNode>(std::move(d));
}
}  // namespace

Prog ret(Value v, std::string label) {
  if (label.empty()) label = v.str();
  return make(RetP{std::move(v), std::move(label), ""});
}

Prog mbind(Prog first, Cont rest) {
  return make(BindP{std::move(first), std::move(rest)});
}

Prog seq(Prog first, Prog second) {
  return relmonad::mbind(std::move(first),
                        [second](const Value&) { return second; });
}

Prog choice(Prog left, Prog right) {
  return make(ChoiceP{std::move(left), std::move(right)});
}

Prog assume(Pred pred) { return make(AssumeP{std::move(pred)}); }

Prog assume(std::string label, StateTest test) {
  return assume(Pred::atom(std::move(label), std::move(test)));
}

Prog assume_pure(std::string label, std::function<bool()> prop) {
  return make(AssumePureP{std::move(prop), std::move(label)});
}

Prog assume_pure(std::string label, bool prop) {
  return make(AssumePureP{[prop]() { return prop; }, std::move(label)});
}

Prog any(FiniteDomain dom) { return make(AnyP{std::move(dom)}); }

Prog update(std::string label, StateRel rel) {
  return make(UpdateP{std::move(rel), std::move(label)});
}

Prog step(std::string label, StepFn fn) {
  return make(StepP{std::move(fn), std::move(label), ""});
}

Prog rec(std::string name, RecBody body, Value arg) {
  return make(RecP{std::move(body), std::move(arg), std::move(name)});
}

namespace internal {

Prog rec_call(std::shared_ptr<RecActivation> act, Value arg) {
  return make(RecCallP{std::move(act), std::move(arg)});
}

Prog case_step(std::string case_tag, StepFn fn, std::string label) {
  return make(StepP{std::move(fn), std::move(label), std::move(case_tag)});
}

}  // namespace internal

const char* kind_name(const Prog& p) {
  struct V {
    const char* operator()(const RetP&) { return "ret"; }
    const char* operator()(const BindP&) { return "bind"; }
    const char* operator()(const ChoiceP&) { return "choice"; }
    const char* operator()(const AssumeP&) { return "assume"; }
    const char* operator()(const AssumePureP&) { return "assume'"; }
    const char* operator()(const AnyP&) { return "any"; }
    const char* operator()(const UpdateP&) { return "update"; }
    const char* operator()(const StepP&) { return "step"; }
    const char* operator()(const RecP&) { return "rec"; }
    const char* operator()(const RecCallP&) { return "rec-call"; }
  };
  return std::visit(V{}, p->data());
}

}  // namespace relmonad
