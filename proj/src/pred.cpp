#include "relmonad/pred.hpp"

#include <stdexcept>

namespace relmonad {

namespace detail {

struct PredNode {
  enum class Kind { Atom, Conj, Exists, PostAt } kind;
  // Atom
  std::string label;
  StateTest test;
  // Conj
  std::shared_ptr<const PredNode> left, right;
  // Exists
  std::string binder;
  FiniteDomain dom;
  PredFamily family;
  // PostAt
  std::shared_ptr<const PostNode> post;
  Value applied;
};

struct PostNode {
  enum class Kind { Atom, Conj, Lift, OfFamily } kind;
  // Atom
  std::string result_name;
  std::string label;
  PostTest test;
  // Conj
  std::shared_ptr<const PostNode> left, right;
  // Lift
  Pred pred;
  // OfFamily
  PredFamily family;
  // Memoized partial applications (single-threaded composition per script).
  mutable std::map<Value, Pred> at_memo;
};

}  // namespace detail

using detail::PredNode;
using detail::PostNode;

// ---------------------------------------------------------------- Pred

Pred Pred::atom(std::string label, StateTest test) {
  auto n = std::make_shared<PredNode>();
  n->kind = PredNode::Kind::Atom;
  n->label = std::move(label);
  n->test = std::move(test);
  return Pred(std::move(n));
}

Pred Pred::constant(std::string label, bool value) {
  return atom(std::move(label), [value](const Value&) { return value; });
}

Pred Pred::conj(Pred a, Pred b) {
  auto n = std::make_shared<PredNode>();
  n->kind = PredNode::Kind::Conj;
  n->left = a.node_;
  n->right = b.node_;
  return Pred(std::move(n));
}

Pred Pred::exists_over(std::string binder, FiniteDomain dom,
                       const PredFamily& family) {
  auto n = std::make_shared<PredNode>();
  n->kind = PredNode::Kind::Exists;
  n->binder = std::move(binder);
  n->dom = std::move(dom);
  n->family = family;
  return Pred(std::move(n));
}

Pred Pred::post_at(const PostCond& q, Value a) {
  auto n = std::make_shared<PredNode>();
  n->kind = PredNode::Kind::PostAt;
  n->post = q.node_;
  n->applied = std::move(a);
  return Pred(std::move(n));
}

bool Pred::test(const Value& state) const {
  if (!node_) throw std::logic_error("Pred: empty");
  switch (node_->kind) {
    case PredNode::Kind::Atom:
      return node_->test(state);
    case PredNode::Kind::Conj:
      return Pred(node_->left).test(state) && Pred(node_->right).test(state);
    case PredNode::Kind::Exists:
      for (const auto& v : node_->dom.elements())
        if (node_->family.at(v).test(state)) return true;
      return false;
    case PredNode::Kind::PostAt:
      return PostCond(node_->post).test(node_->applied, state);
  }
  return false;
}

std::string Pred::label() const {
  if (!node_) return "<empty>";
  switch (node_->kind) {
    case PredNode::Kind::Atom:
      return node_->label;
    case PredNode::Kind::Conj:
      return Pred(node_->left).label() + " /\\ " + Pred(node_->right).label();
    case PredNode::Kind::Exists:
      return "exists " + node_->binder + " in " + node_->dom.name() + ", " +
             node_->family.name();
    case PredNode::Kind::PostAt:
      return PostCond(node_->post).render_goal(node_->applied.str());
  }
  return "";
}

bool Pred::same(const Pred& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_ || node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case PredNode::Kind::Atom:
      return false;  // atoms match only by identity
    case PredNode::Kind::Conj:
      return Pred(node_->left).same(Pred(other.node_->left)) &&
             Pred(node_->right).same(Pred(other.node_->right));
    case PredNode::Kind::Exists:
      return false;
    case PredNode::Kind::PostAt:
      return PostCond(node_->post).same(PostCond(other.node_->post)) &&
             node_->applied == other.node_->applied;
  }
  return false;
}

// ------------------------------------------------------------ PostCond

PostCond PostCond::atom(std::string result_name, std::string label,
                        PostTest test) {
  auto n = std::make_shared<PostNode>();
  n->kind = PostNode::Kind::Atom;
  n->result_name = std::move(result_name);
  n->label = std::move(label);
  n->test = std::move(test);
  return PostCond(std::move(n));
}

PostCond PostCond::conj(PostCond a, PostCond b) {
  auto n = std::make_shared<PostNode>();
  n->kind = PostNode::Kind::Conj;
  n->left = a.node_;
  n->right = b.node_;
  return PostCond(std::move(n));
}

PostCond PostCond::lift(Pred p) {
  auto n = std::make_shared<PostNode>();
  n->kind = PostNode::Kind::Lift;
  n->pred = std::move(p);
  return PostCond(std::move(n));
}

PostCond PostCond::of_family(const PredFamily& family) {
  auto n = std::make_shared<PostNode>();
  n->kind = PostNode::Kind::OfFamily;
  n->family = family;
  return PostCond(std::move(n));
}

bool PostCond::test(const Value& result, const Value& state) const {
  if (!node_) throw std::logic_error("PostCond: empty");
  switch (node_->kind) {
    case PostNode::Kind::Atom:
      return node_->test(result, state);
    case PostNode::Kind::Conj:
      return PostCond(node_->left).test(result, state) &&
             PostCond(node_->right).test(result, state);
    case PostNode::Kind::Lift:
      return node_->pred.test(state);
    case PostNode::Kind::OfFamily:
      return node_->family.at(result).test(state);
  }
  return false;
}

std::string PostCond::label() const {
  if (!node_) return "<empty>";
  switch (node_->kind) {
    case PostNode::Kind::Atom:
      return node_->label;
    case PostNode::Kind::Conj:
      return PostCond(node_->left).label() + " /\\ " +
             PostCond(node_->right).label();
    case PostNode::Kind::Lift:
      return node_->pred.label();
    case PostNode::Kind::OfFamily:
      return node_->family.name();
  }
  return "";
}

namespace {

// Whole-token substitution of `name` by `expr` in `label`.
std::string subst_token(const std::string& label, const std::string& name,
                        const std::string& expr) {
  if (name.empty()) return label;
  auto is_word = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  };
  std::string out;
  size_t i = 0;
  while (i < label.size()) {
    if (label.compare(i, name.size(), name) == 0 &&
        (i == 0 || !is_word(label[i - 1])) &&
        (i + name.size() >= label.size() || !is_word(label[i + name.size()]))) {
      out += expr;
      i += name.size();
    } else {
      out += label[i++];
    }
  }
  return out;
}

}  // namespace

std::string PostCond::render_goal(const std::string& result_expr) const {
  if (!node_) return "<empty>";
  switch (node_->kind) {
    case PostNode::Kind::Atom:
      return subst_token(node_->label, node_->result_name, result_expr);
    case PostNode::Kind::Conj:
      return PostCond(node_->left).render_goal(result_expr) + " /\\ " +
             PostCond(node_->right).render_goal(result_expr);
    case PostNode::Kind::Lift:
      return node_->pred.label();
    case PostNode::Kind::OfFamily:
      return node_->family.name() + "(" + result_expr + ")";
  }
  return "";
}

bool PostCond::same(const PostCond& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_ || node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case PostNode::Kind::Atom:
      return false;
    case PostNode::Kind::Conj:
      return PostCond(node_->left).same(PostCond(other.node_->left)) &&
             PostCond(node_->right).same(PostCond(other.node_->right));
    case PostNode::Kind::Lift:
      return node_->pred.same(other.node_->pred);
    case PostNode::Kind::OfFamily:
      return node_->family.same(other.node_->family);
  }
  return false;
}

Pred PostCond::at(const Value& a) const {
  if (!node_) throw std::logic_error("PostCond: empty");
  auto it = node_->at_memo.find(a);
  if (it != node_->at_memo.end()) return it->second;
  Pred p = Pred::post_at(*this, a);
  node_->at_memo.emplace(a, p);
  return p;
}

// ---------------------------------------------------------- families

struct PredFamily::Impl {
  std::string name;
  std::function<Pred(const Value&)> make;
  std::map<Value, Pred> memo;
};

PredFamily::PredFamily(std::string name, std::function<Pred(const Value&)> make)
    : impl_(std::make_shared<Impl>()) {
  impl_->name = std::move(name);
  impl_->make = std::move(make);
}

Pred PredFamily::at(const Value& a) const {
  if (!impl_) throw std::logic_error("PredFamily: empty");
  auto it = impl_->memo.find(a);
  if (it != impl_->memo.end()) return it->second;
  Pred p = impl_->make(a);
  impl_->memo.emplace(a, p);
  return p;
}

const std::string& PredFamily::name() const {
  static const std::string empty = "<empty>";
  return impl_ ? impl_->name : empty;
}

struct PostFamily::Impl {
  std::string name;
  std::function<PostCond(const Value&)> make;
  std::map<Value, PostCond> memo;
};

PostFamily::PostFamily(std::string name,
                       std::function<PostCond(const Value&)> make)
    : impl_(std::make_shared<Impl>()) {
  impl_->name = std::move(name);
  impl_->make = std::move(make);
}

PostFamily PostFamily::constant(PostCond q) {
  return PostFamily(q.label(), [q](const Value&) { return q; });
}

PostCond PostFamily::at(const Value& a) const {
  if (!impl_) throw std::logic_error("PostFamily: empty");
  auto it = impl_->memo.find(a);
  if (it != impl_->memo.end()) return it->second;
  PostCond q = impl_->make(a);
  impl_->memo.emplace(a, q);
  return q;
}

const std::string& PostFamily::name() const {
  static const std::string empty = "<empty>";
  return impl_ ? impl_->name : empty;
}

}  // namespace relmonad
