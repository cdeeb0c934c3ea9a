#ifndef RELMONAD_GEN_HPP
#define RELMONAD_GEN_HPP

// Deterministic random generators for programs, predicates and relations
// over small finite domains. Continuations are total lookup tables so the
// generated programs are pure and reproducible.

#include <map>
#include <random>

#include "relmonad/errmonad.hpp"
#include "relmonad/eval.hpp"
#include "relmonad/fixpoint.hpp"
#include "relmonad/pred.hpp"
#include "relmonad/prog.hpp"

namespace relmonad::gen {



struct ProgGen {
  FiniteDomain states;
  FiniteDomain values;
  std::mt19937_64 rng;
  int max_depth = 3;

  ProgGen(FiniteDomain st, FiniteDomain val, std::uint64_t seed)
      : states(std::move(st)), values(std::move(val)), rng(seed) {}

  size_t pick(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  }
  bool coin(double p = 0.5) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  }

  Value rand_value() { return values.at(pick(values.size())); }

  // Random state predicate as a bitmask over the state domain.
  Pred rand_pred(const std::string& tag = "p") {
    std::vector<bool> bits(states.size());
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = coin();
    FiniteDomain dom = states;
    return Pred::atom(tag, [dom, bits](const Value& s) {
      auto i = dom.index_of(s);
      return i && bits[*i];
    });
  }

  PostCond rand_post(const std::string& tag = "q", double true_bias = 0.5) {
    std::vector<bool> bits(states.size() * values.size());
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = coin(true_bias);
    FiniteDomain sd = states, vd = values;
    return PostCond::atom(
        "a", tag, [sd, vd, bits](const Value& a, const Value& s) {
          auto i = sd.index_of(s);
          auto j = vd.index_of(a);
          if (!i || !j) return false;
          return static_cast<bool>(bits[*j * sd.size() + *i]);
        });
  }

  StateRel rand_rel() {
    std::vector<bool> bits(states.size() * states.size());
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = coin(0.4);
    FiniteDomain dom = states;
    return [dom, bits](const Value& a, const Value& b) {
      auto i = dom.index_of(a);
      auto j = dom.index_of(b);
      if (!i || !j) return false;
      return static_cast<bool>(bits[*i * dom.size() + *j]);
    };
  }

  StepFn rand_step() {
    std::map<Value, std::vector<Outcome>> table;
    for (const auto& s : states.elements()) {
      std::vector<Outcome> outs;
      for (const auto& v : values.elements())
        for (const auto& s2 : states.elements())
          if (coin(0.25)) outs.push_back({v, s2});
      table.emplace(s, std::move(outs));
    }
    return [table](const Value& s) -> std::vector<Outcome> {
      auto it = table.find(s);
      return it == table.end() ? std::vector<Outcome>{} : it->second;
    };
  }

  // Total continuation: value -> program table.
  Cont rand_cont(int depth) {
    auto table = std::make_shared<std::map<Value, Prog>>();
    for (const auto& v : values.elements()) table->emplace(v, prog(depth));
    Prog dflt = prog(depth);
    return [table, dflt](const Value& v) -> Prog {
      auto it = table->find(v);
      return it == table->end() ? dflt : it->second;
    };
  }

  Prog leaf() {
    switch (pick(6)) {
      case 0:
        return ret(rand_value());
      case 1:
        return any(values);
      case 2:
        return assume(rand_pred("assume"));
      case 3:
        return assume_pure("p?", coin());
      case 4:
        return update("rel", rand_rel());
      default:
        return step("step", rand_step());
    }
  }

  // Leaf whose result is always a domain value (for bind left sides).
  Prog value_leaf() {
    switch (pick(3)) {
      case 0:
        return ret(rand_value());
      case 1:
        return any(values);
      default:
        return step("step", rand_step());
    }
  }

  Prog prog(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(4)) {
      case 0:
        return leaf();
      case 1:
        return choice(prog(depth - 1), prog(depth - 1));
      case 2:
        return mbind(value_leaf(), rand_cont(depth - 1));
      default:
        return mbind(prog(depth - 1), rand_cont(depth - 1));
    }
  }

  Prog prog() { return prog(max_depth); }

  // Random monotone functional: built from the combinators, the handle
  // used through bind/choice only.
  RecBody rand_functional() {
    // arg transition table for recursive calls
    auto trans = std::make_shared<std::map<Value, Value>>();
    for (const auto& v : values.elements())
      trans->emplace(v, rand_value());
    Prog base = prog(1);
    Cont after = rand_cont(0);
    bool guarded = coin(0.7);
    return [trans, base, after, guarded](const CallHandle& w,
                                         const Value& a) -> Prog {
      auto it = trans->find(a);
      Value next = it == trans->end() ? a : it->second;
      Prog recurse = mbind(w(next), after);
      if (guarded) return choice(base, recurse);
      return recurse;
    };
  }

  // ---- errorful variants ----

  EProg eleaf() {
    switch (pick(6)) {
      case 0:
        return err_ret(rand_value());
      case 1:
        return err_any(values);
      case 2:
        return err_assume(rand_pred("assume"));
      case 3:
        return assert_that(rand_pred("assert"));
      case 4:
        return err_update("rel", rand_rel());
      default:
        return err_assume_pure("p?", coin());
    }
  }

  ECont rand_econt(int depth) {
    auto table = std::make_shared<std::map<Value, EProg>>();
    for (const auto& v : values.elements()) table->emplace(v, eprog(depth));
    EProg dflt = eprog(depth);
    return [table, dflt](const Value& v) -> EProg {
      auto it = table->find(v);
      return it == table->end() ? dflt : it->second;
    };
  }

  EProg eprog(int depth) {
    if (depth <= 0) return eleaf();
    switch (pick(3)) {
      case 0:
        return eleaf();
      case 1:
        return err_choice(eprog(depth - 1), eprog(depth - 1));
      default:
        return err_bind(eprog(depth - 1), rand_econt(depth - 1));
    }
  }

  EProg eprog() { return eprog(max_depth); }
};

}  // namespace relmonad::gen

#endif  // RELMONAD_GEN_HPP
