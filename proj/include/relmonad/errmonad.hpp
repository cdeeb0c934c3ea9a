#ifndef RELMONAD_ERRMONAD_HPP
#define RELMONAD_ERRMONAD_HPP

#include "relmonad/hoare.hpp"

namespace relmonad {

// State relation monad with errors: normal denotation plus, per initial
// state, whether an error is reachable. Error states carry no payload.
class EProgNode;
using EProg = std::shared_ptr<const EProgNode>;
using ECont = std::function<EProg(const Value&)>;

struct ERetP {
  Value value;
};
struct EBindP {
  EProg first;
  ECont rest;
};
struct EChoiceP {
  EProg left, right;
};
struct EAssumeP {
  Pred pred;
};
struct EAssumePureP {
  std::function<bool()> prop;
  std::string label;
};
struct EAnyP {
  FiniteDomain dom;
};
struct EUpdateP {
  StateRel rel;
  std::string label;
};
// Produces an error exactly on the states where the guard fails.
struct EAssertP {
  Pred pred;
};

class EProgNode {
 public:
  using Data = std::variant<ERetP, EBindP, EChoiceP, EAssumeP, EAssumePureP,
                            EAnyP, EUpdateP, EAssertP>;
  explicit EProgNode(Data d) : data_(std::move(d)) {}
  const Data& data() const { return data_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&data_);
  }

 private:
  Data data_;
};

EProg err_ret(Value v);
EProg err_bind(EProg first, ECont rest);
EProg err_seq(EProg first, EProg second);
EProg err_choice(EProg left, EProg right);
EProg err_assume(Pred pred);
EProg err_assume_pure(std::string label, bool prop);
EProg err_any(FiniteDomain dom);
EProg err_update(std::string label, StateRel rel);
EProg assert_that(Pred pred);

struct EvalErrResult {
  OutcomeSet outcomes;  // nrm slice at the initial state
  bool err = false;     // initial state is in the err set
  bool complete = true;
};

EvalErrResult eval_err(const EProg& p, const Value& s0, const EvalCtx& ctx);

// Same syntax with assert replaced by assume, in the plain monad.
Prog erase(const EProg& p);

// Error-aware Hoare triple: the kernel condition on nrm, plus no pre-state
// may reach an error.
CheckReport check_triple_err(const Pred& pre, const EProg& prog,
                             const PostCond& post,
                             const FiniteDomain& state_dom, const EvalCtx& ctx,
                             Exec exec = Exec::serial());

// The assert rule's side condition: {P} assert(G) {P /\ G} holds iff
// P -> G over the state domain.
CheckReport assert_rule_check(const Pred& pre, const Pred& guard,
                              const FiniteDomain& state_dom);

}  // namespace relmonad

#endif  // RELMONAD_ERRMONAD_HPP
