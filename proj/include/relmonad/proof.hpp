#ifndef RELMONAD_PROOF_HPP
#define RELMONAD_PROOF_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relmonad/hoare.hpp"

namespace relmonad {

class ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

// Reporting metadata: the proof-group tag ("G1".."G4") and a
// human-readable label.
struct ProofMeta {
  std::string group;
  std::string label;
};

// Family of sub-proofs indexed by a value. The composer hands the builder
// the index, the goal subprogram the child must prove (pointer-stable),
// and the rule-determined postcondition context (the Bind rule's
// intermediate Q, the Fix rule's Q(a), the RepeatBreak rule's lifted P).
using GoalFamily =
    std::function<ProofPtr(const Value&, const Prog&, const PostCond&)>;

// A checked side-condition implication (the Conseq rule's premises).
struct CheckedImplication {
  Pred from, to;
  FiniteDomain dom;
  CheckReport report;
};
CheckedImplication imply(Pred from, Pred to, const FiniteDomain& dom);

struct CheckedPostImplication {
  PostCond from, to;
  FiniteDomain value_dom, state_dom;
  CheckReport report;
};
CheckedPostImplication imply_post(PostCond from, PostCond to,
                                  const FiniteDomain& value_dom,
                                  const FiniteDomain& state_dom);

// ---------------------------------------------------------- node payloads

struct LeafN {
  HoareTriple triple;
  CheckReport report;
};

// {P(a)} ret(a) {P}
struct RetN {
  PostCond post;
  Value value;
  Prog goal;  // may be null: synthesized as ret(value)
};

struct BindN {
  ProofPtr left;
  FiniteDomain val_dom;  // coverage of the forall-a premise
  GoalFamily right;
  Prog goal;  // required: the Bind node being proved
};

struct ChoiceN {
  ProofPtr left, right;
  Prog goal;  // may be null: synthesized as choice(l, r)
};

// Strongest-postcondition axioms.
struct AssumeN {
  Pred pre;
  Prog goal;  // Assume or AssumePure node
};
struct AnyN {
  Pred pre;
  Prog goal;
};
struct UpdateN {
  Pred pre;
  Prog goal;
  FiniteDomain state_dom;
};
struct StepN {
  Pred pre;
  Prog goal;
  FiniteDomain state_dom;
};

struct ConseqN {
  std::optional<CheckedImplication> pre_impl;
  ProofPtr child;
  std::optional<CheckedPostImplication> post_impl;
};

struct PreExN {
  std::string binder;
  FiniteDomain dom;
  PredFamily pre_family;
  PostCond post;
  GoalFamily children;
  Prog goal;  // required
};

struct ConjN {
  ProofPtr left, right;
};

struct FixN {
  Prog goal;  // the Rec node; its body is the iterated functional
  PredFamily P;
  PostFamily Q;
  FiniteDomain arg_dom, ret_dom, state_dom;
  GoalFamily children;  // child(a) proves {P(a)} F(specW)(a) {Q(a)}
  // Side-condition: premise outcomes stay inside ret_dom x state_dom.
  CheckReport domain_report;
  std::shared_ptr<std::map<Value, Prog>> specw =
      std::make_shared<std::map<Value, Prog>>();
  std::shared_ptr<std::map<Value, Prog>> premises =
      std::make_shared<std::map<Value, Prog>>();
};

struct RepeatBreakN {
  Prog goal;  // the Rec node of the loop
  std::function<Prog(const Value&)> body;
  PredFamily P;
  PostCond Q;
  FiniteDomain arg_dom;
  GoalFamily cont_children;  // {P(a)} x <- body(a);; continue_case(x) {P}
  GoalFamily brk_children;   // {P(a)} x <- body(a);; break_case(x) {Q}
  std::shared_ptr<std::map<Value, Prog>> cont_prem =
      std::make_shared<std::map<Value, Prog>>();
  std::shared_ptr<std::map<Value, Prog>> brk_prem =
      std::make_shared<std::map<Value, Prog>>();
  std::shared_ptr<PostCond> cont_post = std::make_shared<PostCond>();
};

class ProofNode {
 public:
  using Data = std::variant<LeafN, RetN, BindN, ChoiceN, AssumeN, AnyN,
                            UpdateN, StepN, ConseqN, PreExN, ConjN, FixN,
                            RepeatBreakN>;

  ProofNode(Data d, ProofMeta m) : data_(std::move(d)), meta_(std::move(m)) {}

  const Data& data() const { return data_; }
  const ProofMeta& meta() const { return meta_; }

  // Validates the rule schema against the children and returns the
  // conclusion triple. Memoized; composition is single-threaded per tree.
  const HoareTriple& conclusion() const;
  // Children materialized by the first conclusion() call.
  const std::vector<ProofPtr>& kids() const { return kids_; }

 private:
  Data data_;
  ProofMeta meta_;
  mutable std::optional<HoareTriple> concl_;
  mutable std::vector<ProofPtr> kids_;
};

// Bottom-up composition per the rule schemas; throws CompositionError
// (SchemaMismatchError / UncheckedLeafError) on malformed trees.
HoareTriple compose(const ProofPtr& root);

// ------------------------------------------------------------ builders

ProofPtr make_leaf(HoareTriple t, const FiniteDomain& state_dom,
                   const EvalCtx& ctx, ProofMeta meta = {});
ProofPtr make_leaf_prechecked(HoareTriple t, CheckReport report,
                              ProofMeta meta = {});
ProofPtr rule_ret(PostCond post, Value value, Prog goal = nullptr,
                  ProofMeta meta = {});
ProofPtr rule_bind(ProofPtr left, FiniteDomain val_dom, GoalFamily right,
                   Prog goal, ProofMeta meta = {});
ProofPtr rule_choice(ProofPtr left, ProofPtr right, Prog goal = nullptr,
                     ProofMeta meta = {});
ProofPtr rule_assume(Pred pre, Prog goal, ProofMeta meta = {});
ProofPtr rule_any(Pred pre, Prog goal, ProofMeta meta = {});
ProofPtr rule_update(Pred pre, Prog goal, FiniteDomain state_dom,
                     ProofMeta meta = {});
ProofPtr rule_step(Pred pre, Prog goal, FiniteDomain state_dom,
                   ProofMeta meta = {});
ProofPtr rule_conseq(std::optional<CheckedImplication> pre_impl,
                     ProofPtr child,
                     std::optional<CheckedPostImplication> post_impl,
                     ProofMeta meta = {});
ProofPtr rule_pre_ex(std::string binder, FiniteDomain dom,
                     PredFamily pre_family, PostCond post, GoalFamily children,
                     Prog goal, ProofMeta meta = {});
ProofPtr rule_conj(ProofPtr left, ProofPtr right, ProofMeta meta = {});
// Runs the domain-closure side-condition sweep via ctx at build time.
ProofPtr rule_fix(Prog goal, PredFamily P, PostFamily Q, FiniteDomain arg_dom,
                  FiniteDomain ret_dom, FiniteDomain state_dom,
                  GoalFamily children, const EvalCtx& ctx, ProofMeta meta = {});
ProofPtr rule_repeat_break(Prog goal, std::function<Prog(const Value&)> body,
                           PredFamily P, PostCond Q, FiniteDomain arg_dom,
                           GoalFamily cont_children, GoalFamily brk_children,
                           ProofMeta meta = {});

// ------------------------------------------------------------ reporting

struct LeafRecord {
  std::string group;
  std::string label;
  Verdict verdict;
  std::optional<Witness> witness;
  std::string note;
};

// Flattens the materialized tree (post-compose) into leaf/side-condition
// records for reports.
void collect_leaf_records(const ProofPtr& root, std::vector<LeafRecord>& out);

}  // namespace relmonad

#endif  // RELMONAD_PROOF_HPP
