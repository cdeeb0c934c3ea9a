#include "relmonad/fixpoint.hpp"

namespace relmonad {

namespace {
const std::string kContinueTag = "by_continue";
const std::string kBreakTag = "by_break";
}  // namespace

Value by_continue(Value a) {
  return Value::tagged(kContinueTag, {std::move(a)});
}

Value by_break(Value b) { return Value::tagged(kBreakTag, {std::move(b)}); }

bool is_continue(const Value& v) {
  return v.is_tagged() && v.as_tagged().tag == kContinueTag;
}

bool is_break(const Value& v) {
  return v.is_tagged() && v.as_tagged().tag == kBreakTag;
}

const Value& cob_payload(const Value& v) { return v.as_tagged().fields[0]; }

FiniteDomain cob_domain(const FiniteDomain& continues,
                        const FiniteDomain& breaks) {
  std::vector<Value> xs;
  xs.reserve(continues.size() + breaks.size());
  for (const auto& a : continues.elements()) xs.push_back(by_continue(a));
  for (const auto& b : breaks.elements()) xs.push_back(by_break(b));
  return FiniteDomain(std::move(xs), "ContinueOrBreak(" + continues.name() +
                                         ", " + breaks.name() + ")");
}

Prog lfix(std::string name, RecBody f, Value arg) {
  return rec(std::move(name), std::move(f), std::move(arg));
}

namespace {

Prog make_cob_ret(const std::string& tag, Value payload,
                  std::string payload_label) {
  if (payload_label.empty()) payload_label = payload.str();
  Value v = Value::tagged(tag, {std::move(payload)});
  std::string label = tag + " (" + payload_label + ")";
  auto node = ret(std::move(v), std::move(label));
  // ret() has no payload-label parameter; rebuild with it set.
  const RetP* r = node->get_if<RetP>();
  RetP copy = *r;
  copy.payload_label = std::move(payload_label);
  return std::make_shared<const ProgNode>(ProgNode::Data(std::move(copy)));
}

Prog make_case(const std::string& tag, const Value& x) {
  StepFn fn = [tag, x](const Value& s) -> std::vector<Outcome> {
    if (x.is_tagged() && x.as_tagged().tag == tag)
      return {{x.as_tagged().fields[0], s}};
    return {};
  };
  return internal::case_step(tag, std::move(fn),
                             tag == kContinueTag ? "continue_case"
                                                 : "break_case");
}

}  // namespace

Prog continue_with(Value a, std::string payload_label) {
  return make_cob_ret(kContinueTag, std::move(a), std::move(payload_label));
}

Prog break_with(Value b, std::string payload_label) {
  return make_cob_ret(kBreakTag, std::move(b), std::move(payload_label));
}

Prog continue_case(const Value& x) { return make_case(kContinueTag, x); }

Prog break_case(const Value& x) { return make_case(kBreakTag, x); }

RecBody repeat_break_functional(std::function<Prog(const Value&)> body) {
  return [body](const CallHandle& w, const Value& a) -> Prog {
    return mbind(body(a), [w](const Value& x) -> Prog {
      return choice(
          mbind(continue_case(x), [w](const Value& a2) { return w(a2); }),
          mbind(break_case(x), [](const Value& b) { return ret(b); }));
    });
  };
}

std::function<Prog(Value)> repeat_break(
    std::string name, std::function<Prog(const Value&)> body) {
  RecBody f = repeat_break_functional(std::move(body));
  return [name, f](Value a) { return rec(name, f, std::move(a)); };
}

RecBody range_iter_functional(std::int64_t lo, std::int64_t hi,
                              RangeBody body) {
  (void)lo;  // the entry argument carries the start index
  return [hi, body](const CallHandle& w, const Value& ia) -> Prog {
    const std::int64_t i = ia.first().as_int();
    const Value acc = ia.second();
    Prog done = mbind(
        assume_pure("i >= " + std::to_string(hi), i >= hi),
        [acc](const Value&) { return continue_with(acc); });
    Prog iterate = mbind(
        assume_pure("i < " + std::to_string(hi), i < hi),
        [i, acc, body, w](const Value&) {
          return mbind(body(i, acc), [i, w](const Value& x) -> Prog {
            return choice(
                mbind(continue_case(x),
                     [i, w](const Value& a2) {
                       return w(Value::pair(Value(i + 1), a2));
                     }),
                mbind(break_case(x),
                     [](const Value& b) { return ret(by_break(b)); }));
          });
        });
    return choice(done, iterate);
  };
}

Prog range_iter_break(std::string name, std::int64_t lo, std::int64_t hi,
                      RangeBody body, Value init) {
  return rec(std::move(name), range_iter_functional(lo, hi, std::move(body)),
             Value::pair(Value(lo), std::move(init)));
}

}  // namespace relmonad
