#include "relmonad/eval.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <utility>

namespace relmonad {

void OutcomeSet::insert(Outcome o) {
  auto it = std::lower_bound(items_.begin(), items_.end(), o);
  if (it != items_.end() && *it == o) return;
  items_.insert(it, std::move(o));
}

void OutcomeSet::merge(const OutcomeSet& other) {
  if (other.items_.empty()) return;
  if (items_.empty()) {
    items_ = other.items_;
    return;
  }
  std::vector<Outcome> merged;
  merged.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(),
                 other.items_.end(), std::back_inserter(merged));
  items_ = std::move(merged);
}

bool OutcomeSet::contains(const Outcome& o) const {
  return std::binary_search(items_.begin(), items_.end(), o);
}

bool OutcomeSet::includes(const OutcomeSet& other) const {
  return std::includes(items_.begin(), items_.end(), other.items_.begin(),
                       other.items_.end());
}

// ------------------------------------------------------------------
// Kleene iteration for Rec nodes.
//
// The chain W0 = bottom, W(n+1) = F(Wn) is materialized per evaluation as a
// table over the (argument, state) pairs the evaluation actually touches.
// A round recomputes every discovered pair against the previous round's
// table (reads of just-discovered pairs see bottom); pairs queried for the
// first time are appended and iterated from the next round on. On finite
// domains this chaotic iteration reaches the same least fixed point as the
// global chain, restricted to the reachable pairs, and it must stabilize;
// fuel only guards non-stabilizing (infinite-universe or non-monotone)
// evaluations, which are reported as incomplete.
// ------------------------------------------------------------------

class RecActivation {
 public:
  RecActivation(const RecP* def, const EvalCtx* ctx) : def_(def), ctx_(ctx) {}

  const RecP* def() const { return def_; }

  size_t find_or_discover(const Value& arg, const Value& state) {
    auto key = std::make_pair(arg, state);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    if (keys_.size() >= ctx_->state_cap())
      throw StateSpaceTooLargeError(keys_.size() + 1);
    size_t slot = keys_.size();
    index_.emplace(std::move(key), slot);
    keys_.emplace_back(arg, state);
    prev_.emplace_back();
    curr_.emplace_back();
    discovered_new_ = true;
    ctx_->stats().rec_cells.fetch_add(1, std::memory_order_relaxed);
    if (ctx_->rec_observer()) ctx_->rec_observer()(arg, state);
    return slot;
  }

  // Read of the previous round's approximation (by value: the backing
  // vector may grow while a round is in flight).
  EvalResult read(size_t slot) const {
    return {prev_[slot].outcomes, true};
  }

  std::map<Value, Prog>& body_memo() { return body_memo_; }
  std::vector<std::pair<Value, Value>>& keys() { return keys_; }
  std::vector<EvalResult>& prev() { return prev_; }
  std::vector<EvalResult>& curr() { return curr_; }
  bool take_discovered() {
    bool d = discovered_new_;
    discovered_new_ = false;
    return d;
  }

 private:
  const RecP* def_;
  const EvalCtx* ctx_;
  std::map<std::pair<Value, Value>, size_t> index_;
  std::vector<std::pair<Value, Value>> keys_;
  std::vector<EvalResult> prev_, curr_;
  std::map<Value, Prog> body_memo_;
  bool discovered_new_ = false;
};

namespace {

EvalResult eval_node(const ProgNode& n, const Value& s0, const EvalCtx& ctx);

EvalResult eval_rec(const RecP& def, const Value& s0, const EvalCtx& ctx) {
  auto act = std::make_shared<RecActivation>(&def, &ctx);
  CallHandle handle = [act](const Value& a) {
    return internal::rec_call(act, a);
  };
  auto body_for = [&](const Value& arg) -> const Prog& {
    auto& memo = act->body_memo();
    auto it = memo.find(arg);
    if (it == memo.end() || !it->second)
      it = memo.insert_or_assign(arg, def.body(handle, arg)).first;
    return it->second;
  };

  size_t root = act->find_or_discover(def.arg, s0);
  act->take_discovered();

  bool stabilized = false;
  bool monotone = true;
  for (std::int64_t round = 0; round < ctx.fuel(); ++round) {
    ctx.stats().fix_rounds.fetch_add(1, std::memory_order_relaxed);
    const size_t n = act->keys().size();
    bool changed = false;
    for (size_t i = 0; i < n; ++i) {
      // Copy the key: discoveries may reallocate the vector.
      const auto key = act->keys()[i];
      EvalResult r = eval(body_for(key.first), key.second, ctx);
      if (!r.outcomes.includes(act->prev()[i].outcomes)) {
        ctx.stats().chain_violations.fetch_add(1, std::memory_order_relaxed);
        monotone = false;
      }
      if (!(r.outcomes == act->prev()[i].outcomes)) changed = true;
      act->curr()[i] = std::move(r);
    }
    bool discovered = act->take_discovered();
    if (!changed && !discovered) {
      stabilized = true;
      break;
    }
    act->prev() = act->curr();
  }

  EvalResult out = act->curr()[root];
  // A broken chain means there is no least fixed point to be exact about;
  // whatever was reached is reported as an approximation only.
  if (!stabilized || !monotone) {
    out.complete = false;
    return out;
  }
  for (const auto& r : act->curr()) out.complete = out.complete && r.complete;
  return out;
}

EvalResult eval_node(const ProgNode& n, const Value& s0, const EvalCtx& ctx) {
  struct V {
    const Value& s0;
    const EvalCtx& ctx;

    EvalResult operator()(const RetP& p) {
      EvalResult r;
      r.outcomes.insert({p.value, s0});
      return r;
    }

    EvalResult operator()(const BindP& p) {
      EvalResult first = eval(p.first, s0, ctx);
      EvalResult out;
      out.complete = first.complete;
      for (const auto& o : first.outcomes.items()) {
        EvalResult rest = eval(p.rest(o.value), o.state, ctx);
        out.outcomes.merge(rest.outcomes);
        out.complete = out.complete && rest.complete;
      }
      return out;
    }

    EvalResult operator()(const ChoiceP& p) {
      EvalResult l = eval(p.left, s0, ctx);
      EvalResult r = eval(p.right, s0, ctx);
      l.outcomes.merge(r.outcomes);
      l.complete = l.complete && r.complete;
      return l;
    }

    EvalResult operator()(const AssumeP& p) {
      EvalResult r;
      if (p.pred.test(s0)) r.outcomes.insert({Value::unit(), s0});
      return r;
    }

    EvalResult operator()(const AssumePureP& p) {
      EvalResult r;
      if (p.prop()) r.outcomes.insert({Value::unit(), s0});
      return r;
    }

    EvalResult operator()(const AnyP& p) {
      EvalResult r;
      for (const auto& v : p.dom.elements()) r.outcomes.insert({v, s0});
      return r;
    }

    EvalResult operator()(const UpdateP& p) {
      if (!ctx.state_domain()) throw MissingStateDomainError();
      EvalResult r;
      for (const auto& s2 : ctx.state_domain()->elements())
        if (p.rel(s0, s2)) r.outcomes.insert({Value::unit(), s2});
      return r;
    }

    EvalResult operator()(const StepP& p) {
      EvalResult r;
      for (auto& o : p.fn(s0)) r.outcomes.insert(std::move(o));
      return r;
    }

    EvalResult operator()(const RecP& p) { return eval_rec(p, s0, ctx); }

    EvalResult operator()(const RecCallP& p) {
      size_t slot = p.act->find_or_discover(p.arg, s0);
      return p.act->read(slot);
    }
  };
  return std::visit(V{s0, ctx}, n.data());
}

}  // namespace

EvalResult eval(const Prog& p, const Value& s0, const EvalCtx& ctx) {
  return eval_node(*p, s0, ctx);
}

// ------------------------------------------------------------ denote

Denotation::Denotation(FiniteDomain dom, std::vector<EvalResult> rows)
    : dom_(std::move(dom)), rows_(std::move(rows)) {
  for (const auto& r : rows_) complete_ = complete_ && r.complete;
}

const EvalResult* Denotation::at(const Value& s) const {
  auto i = dom_.index_of(s);
  return i ? &rows_[*i] : nullptr;
}

bool operator==(const Denotation& a, const Denotation& b) {
  if (!(a.dom_ == b.dom_) || a.rows_.size() != b.rows_.size()) return false;
  for (size_t i = 0; i < a.rows_.size(); ++i) {
    if (!(a.rows_[i].outcomes == b.rows_[i].outcomes)) return false;
    if (a.rows_[i].complete != b.rows_[i].complete) return false;
  }
  return true;
}

void parallel_for(size_t n, Exec exec, const std::function<void(size_t)>& f) {
#ifdef _OPENMP
  if (exec.parallel) {
    std::exception_ptr err;
    #pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      try {
        f(static_cast<size_t>(i));
      } catch (...) {
        #pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)exec;
#endif
  for (size_t i = 0; i < n; ++i) f(i);
}

Denotation denote(const Prog& p, const FiniteDomain& state_dom,
                  const EvalCtx& ctx, Exec exec) {
  EvalCtx local = ctx;
  if (!local.state_domain()) local.with_state_domain(state_dom);
  std::vector<EvalResult> rows(state_dom.size());
  parallel_for(state_dom.size(), exec, [&](size_t i) {
    rows[i] = eval(p, state_dom.at(i), local);
    local.stats().states_visited.fetch_add(1, std::memory_order_relaxed);
  });
  return Denotation(state_dom, std::move(rows));
}

}  // namespace relmonad
