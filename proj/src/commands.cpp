#include "relmonad/cli/commands.hpp"

#include <chrono>
#include <random>
#include <set>

#include "relmonad/casestudies/dfs.hpp"
#include "relmonad/casestudies/examples.hpp"
#include "relmonad/casestudies/kmp.hpp"
#include "relmonad/rulesuite.hpp"
#include "relmonad/vcgen.hpp"

namespace relmonad::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::int64_t get_int(const RunManifest& m, const std::string& key,
                     std::optional<std::int64_t> dflt = std::nullopt) {
  auto it = m.params.find(key);
  if (it == m.params.end()) {
    if (dflt) return *dflt;
    throw InvalidParameterError("missing required parameter " + key);
  }
  try {
    size_t pos = 0;
    std::int64_t v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw InvalidParameterError(key + "=" + it->second + " is not an integer");
  }
}

std::string get_str(const RunManifest& m, const std::string& key,
                    std::optional<std::string> dflt = std::nullopt) {
  auto it = m.params.find(key);
  if (it == m.params.end()) {
    if (dflt) return *dflt;
    throw InvalidParameterError("missing required parameter " + key);
  }
  return it->second;
}

// "0-1,1-2" -> directed edges
std::vector<std::pair<std::int64_t, std::int64_t>> parse_edges(
    const std::string& spec) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (spec.empty()) return out;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    std::string item = spec.substr(pos, comma - pos);
    size_t dash = item.find('-');
    if (dash == std::string::npos)
      throw InvalidParameterError("edge '" + item + "' is not of form s-d");
    try {
      out.emplace_back(std::stoll(item.substr(0, dash)),
                       std::stoll(item.substr(dash + 1)));
    } catch (const std::exception&) {
      throw InvalidParameterError("edge '" + item + "' is not of form s-d");
    }
    pos = comma + 1;
  }
  return out;
}

void report_outcomes(Report& rep, const EvalResult& r) {
  for (const auto& o : r.outcomes.items())
    rep.add("outcomes", "(" + o.value.str() + ", " + o.state.str() + ")",
            Verdict::Holds);
  if (!r.complete) {
    rep.add("outcomes", "incomplete: fuel exhausted before stabilization",
            Verdict::Inconclusive);
  } else if (r.outcomes.empty()) {
    rep.add("outcomes", "(no outcomes)", Verdict::Holds);
  }
}

CheckReport merge_reports(CheckReport agg, const CheckReport& one,
                          const std::string& where) {
  agg.states_checked += one.states_checked;
  agg.complete = agg.complete && one.complete;
  if (agg.verdict == Verdict::Counterexample) return agg;
  if (one.verdict == Verdict::Counterexample) {
    agg.verdict = Verdict::Counterexample;
    agg.witness = one.witness;
    agg.note = where;
  } else if (one.verdict == Verdict::Inconclusive &&
             agg.verdict == Verdict::Holds) {
    agg.verdict = Verdict::Inconclusive;
  }
  return agg;
}

// All strings over `alpha` with the given length.
std::vector<std::string> words(const std::string& alpha, std::int64_t len) {
  std::vector<std::string> out{""};
  for (std::int64_t i = 0; i < len; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (char c : alpha) next.push_back(w + c);
    out = std::move(next);
  }
  return out;
}

}  // namespace

const std::vector<TargetInfo>& targets() {
  static const std::vector<TargetInfo> t = {
      {"compute_abs", "run", "absolute value by guarded choice", "z (required)"},
      {"any_prime", "run", "arbitrary non-composite in [0, hi]", "hi=10"},
      {"fibonacci", "run", "Fibonacci via the least fixed point", "n (required)"},
      {"hailstone", "run", "Collatz loop with break", "x (required)"},
      {"dfs", "run", "nondeterministic DFS terminal states",
       "n=3 edges=0-1,1-2 start=0"},
      {"kmp_match", "run", "KMP match loop over the set monad",
       "patn (required) text (required)"},
      {"hailstone-positivity", "check",
       "{x >= 1} hailstone_body;; continue_case {y >= 1}", "x_lo=1 x_hi=20"},
      {"hailstone-terminates", "check", "{true} hailstone(x) {r = 1}",
       "x_lo=1 x_hi=30"},
      {"compute_abs-correct", "check", "{true} compute_abs(z) {r = |z|}",
       "z_lo=-20 z_hi=20"},
      {"any-pair-eq1", "check",
       "{true} any({1,2}) {r = 1} (deliberately false)", ""},
      {"any_prime-sound", "check",
       "{true} any_prime(hi) {~ exists m n > 1, r = m * n}", "hi=10"},
      {"fibonacci-spec", "check", "fix rule: {true} fibonacci(n) {r = fib(n)}",
       "n_lo=0 n_hi=8"},
      {"kmp", "prove", "two-stage KMP proof over bounded contexts",
       "alphabet=ab patn_max=3 text_max=5 corrupt_next=0"},
      {"dfs", "prove", "reachability theorem by exhaustive model checking",
       "n_max=3 random=200 seed=1"},
      {"rules", "prove", "randomized soundness of the 12 Hoare rules",
       "instances=200 seed=7"},
      {"hailstone-continue", "vcgen", "the two hailstone continue goals",
       "x_lo=1 x_hi=100"},
      {"ret-const", "vcgen", "{P} ret(5) {Q}: one implication", ""},
      {"assume-sp", "vcgen", "strongest-postcondition match: zero goals", ""},
  };
  return t;
}

// ------------------------------------------------------------------ run

Report cmd_run(const RunManifest& m) {
  auto t0 = Clock::now();
  Report rep;
  rep.target = m.target;
  EvalCtx ctx = m.make_ctx();

  if (m.target == "compute_abs") {
    auto r = eval(examples::compute_abs(get_int(m, "z")), Value::unit(), ctx);
    report_outcomes(rep, r);
  } else if (m.target == "any_prime") {
    auto r = eval(examples::any_prime(get_int(m, "hi", 10)), Value::unit(), ctx);
    report_outcomes(rep, r);
  } else if (m.target == "fibonacci") {
    auto r = eval(examples::fibonacci(get_int(m, "n")), Value::unit(), ctx);
    report_outcomes(rep, r);
  } else if (m.target == "hailstone") {
    auto r = eval(examples::hailstone(get_int(m, "x")), Value::unit(), ctx);
    report_outcomes(rep, r);
  } else if (m.target == "dfs") {
    const std::int64_t n = get_int(m, "n", 3);
    std::vector<std::int64_t> vs;
    for (std::int64_t v = 0; v < n; ++v) vs.push_back(v);
    graph::PreGraph g(vs, parse_edges(get_str(m, "edges", "0-1,1-2")));
    auto r = eval(graph::dfs(g, get_int(m, "start", 0)),
                  graph::dfs_initial_state(), ctx);
    report_outcomes(rep, r);
  } else if (m.target == "kmp_match") {
    kmp::KmpContext c{get_str(m, "patn"), get_str(m, "text"), {}, 'a'};
    c.next = kmp::build_next_oracle(c.patn);
    auto r = eval(kmp::match_loop(c), Value::unit(), ctx);
    report_outcomes(rep, r);
  } else {
    throw UnknownTargetError(m.target);
  }

  rep.take_stats(ctx.stats());
  rep.wall_ms = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------- check

Report cmd_check(const RunManifest& m) {
  auto t0 = Clock::now();
  Report rep;
  rep.target = m.target;
  EvalCtx ctx = m.make_ctx();
  const FiniteDomain unit_dom = FiniteDomain::unit_only();

  auto finish = [&](const CheckReport& r, const std::string& label) {
    rep.add("check", label, r.verdict, r.witness, r.note);
    rep.take_stats(ctx.stats());
    rep.wall_ms = ms_since(t0);
    return rep;
  };

  if (m.target == "hailstone-positivity") {
    const std::int64_t lo = get_int(m, "x_lo", 1), hi = get_int(m, "x_hi", 20);
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t x = lo; x <= hi; ++x) {
      Prog prog = mbind(examples::hailstone_body(x),
                        [](const Value& y) { return continue_case(y); });
      HoareTriple t{Pred::constant("x >= 1", x >= 1), prog,
                    PostCond::atom("y", "y >= 1",
                                   [](const Value& r, const Value&) {
                                     return r.as_int() >= 1;
                                   })};
      agg = merge_reports(agg, check_triple(t, unit_dom, ctx, m.exec()),
                          "x=" + std::to_string(x));
    }
    return finish(agg, "{x >= 1} y <- hailstone_body(x);; continue_case(y) "
                       "{y >= 1} over x in [" +
                           std::to_string(lo) + ", " + std::to_string(hi) +
                           "]");
  }
  if (m.target == "hailstone-terminates") {
    const std::int64_t lo = get_int(m, "x_lo", 1), hi = get_int(m, "x_hi", 30);
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t x = lo; x <= hi; ++x) {
      HoareTriple t{Pred::constant("true", true), examples::hailstone(x),
                    PostCond::atom("r", "r = 1",
                                   [](const Value& r, const Value&) {
                                     return r == Value(1);
                                   })};
      agg = merge_reports(agg, check_triple(t, unit_dom, ctx, m.exec()),
                          "x=" + std::to_string(x));
    }
    return finish(agg, "{true} hailstone(x) {r = 1} over x in [" +
                           std::to_string(lo) + ", " + std::to_string(hi) +
                           "]");
  }
  if (m.target == "compute_abs-correct") {
    const std::int64_t lo = get_int(m, "z_lo", -20),
                       hi = get_int(m, "z_hi", 20);
    CheckReport agg = CheckReport::make_holds(0);
    for (std::int64_t z = lo; z <= hi; ++z) {
      const std::int64_t want = z < 0 ? -z : z;
      HoareTriple t{Pred::constant("true", true), examples::compute_abs(z),
                    PostCond::atom("r", "r = |z|",
                                   [want](const Value& r, const Value&) {
                                     return r.as_int() == want;
                                   })};
      agg = merge_reports(agg, check_triple(t, unit_dom, ctx, m.exec()),
                          "z=" + std::to_string(z));
    }
    return finish(agg, "{true} compute_abs(z) {r = |z|}");
  }
  if (m.target == "any-pair-eq1") {
    HoareTriple t{Pred::constant("true", true),
                  any(FiniteDomain::int_range(1, 2)),
                  PostCond::atom("r", "r = 1", [](const Value& r, const Value&) {
                    return r == Value(1);
                  })};
    return finish(check_triple(t, unit_dom, ctx, m.exec()),
                  "{true} any({1,2}) {r = 1}");
  }
  if (m.target == "any_prime-sound") {
    const std::int64_t hi = get_int(m, "hi", 10);
    HoareTriple t{Pred::constant("true", true), examples::any_prime(hi),
                  PostCond::atom("r", "~ exists m n, m > 1 /\\ n > 1 /\\ r "
                                      "= m * n",
                                 [](const Value& r, const Value&) {
                                   const std::int64_t x = r.as_int();
                                   for (std::int64_t a = 2; a <= x; ++a)
                                     for (std::int64_t b = 2; a * b <= x; ++b)
                                       if (a * b == x) return false;
                                   return true;
                                 })};
    return finish(check_triple(t, unit_dom, ctx, m.exec()),
                  "{true} any_prime(" + std::to_string(hi) +
                      ") {result is not a product of two factors > 1}");
  }
  if (m.target == "fibonacci-spec") {
    const std::int64_t lo = get_int(m, "n_lo", 0), hi = get_int(m, "n_hi", 8);
    auto fib = [](std::int64_t n) {
      std::int64_t a = 0, b = 1;
      for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t t = a + b;
        a = b;
        b = t;
      }
      return a;
    };
    RecBody f = [](const CallHandle& w, const Value& nv) -> Prog {
      const std::int64_t k = nv.as_int();
      return choice(
          mbind(assume_pure("n <= 1", k <= 1),
                [nv](const Value&) { return ret(nv); }),
          mbind(assume_pure("n > 1", k > 1), [k, wc = w](const Value&) {
            return mbind(wc(Value(k - 1)), [k, wc](const Value& x) {
              return mbind(wc(Value(k - 2)), [x](const Value& y) {
                return ret(Value(x.as_int() + y.as_int()));
              });
            });
          }));
    };
    PredFamily P("true",
                 [](const Value&) { return Pred::constant("true", true); });
    PostFamily Q("r = fib(n)", [fib](const Value& n) {
      const std::int64_t want = fib(n.as_int());
      return PostCond::atom("r", "r = fib(n)",
                            [want](const Value& r, const Value&) {
                              return r.as_int() == want;
                            });
    });
    std::vector<Value> rets;
    for (std::int64_t v = 0; v <= fib(hi); ++v) rets.emplace_back(v);
    auto r = fix_rule_check(f, P, Q, FiniteDomain::int_range(lo, hi),
                            FiniteDomain(std::move(rets), "range"), unit_dom,
                            ctx);
    return finish(r, "fix rule: {true} fibonacci(n) {r = fib(n)} over n in [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  throw UnknownTargetError(m.target);
}

// ---------------------------------------------------------------- prove

namespace {

Report prove_kmp(const RunManifest& m) {
  auto t0 = Clock::now();
  Report rep;
  rep.target = "kmp";
  const std::string alpha = get_str(m, "alphabet", "ab");
  const std::int64_t patn_max = get_int(m, "patn_max", 3);
  const std::int64_t text_max = get_int(m, "text_max", 5);
  // corrupt_next=1 perturbs the shift table to demonstrate how a violated
  // precondition surfaces: the Group 1 table facts fail with a witness.
  const bool corrupt = get_int(m, "corrupt_next", 0) != 0;

  std::vector<kmp::KmpContext> contexts;
  for (std::int64_t pl = 1; pl <= patn_max; ++pl)
    for (const auto& p : words(alpha, pl))
      for (std::int64_t tl = 0; tl <= text_max; ++tl)
        for (const auto& t : words(alpha, tl)) {
          auto next = kmp::build_next_oracle(p);
          if (corrupt) next.back() = next.back() + 1;
          contexts.push_back({p, t, std::move(next),
                              alpha.empty() ? 'a' : alpha[0]});
        }

  struct CtxOut {
    std::vector<LeafRecord> stage1;
    std::vector<LeafRecord> stage2;
    bool composed = false;
    bool crosscheck = false;
    std::string error;
    std::string where;
  };
  std::vector<CtxOut> outs(contexts.size());
  EvalCtx ctx = m.make_ctx();

  parallel_for(contexts.size(), m.exec(), [&](size_t i) {
    const auto& c = contexts[i];
    CtxOut& o = outs[i];
    o.where = "patn=" + c.patn + " text=\"" + c.text + "\"";
    EvalCtx local = ctx;  // copies share the stats counters
    o.stage1 = kmp::kmp_stage1(c, local);
    try {
      auto script = kmp::kmp_proof_script(c, local);
      HoareTriple concl = compose(script);
      o.composed = true;
      collect_leaf_records(script, o.stage2);
      auto direct = check_triple(concl, FiniteDomain::unit_only(), local);
      o.crosscheck = direct.holds();
    } catch (const CompositionError& e) {
      o.error = e.what();
    }
  });

  // Deterministic aggregation: per (group, label), ordered by first sight.
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>,
           std::pair<Verdict, std::optional<std::string>>>
      agg;
  auto fold = [&](const LeafRecord& l, const std::string& where) {
    auto key = std::make_pair(l.group, l.label);
    auto it = agg.find(key);
    if (it == agg.end()) {
      order.push_back(key);
      it = agg.emplace(key, std::make_pair(Verdict::Holds, std::nullopt)).first;
    }
    if (l.verdict != Verdict::Holds && it->second.first == Verdict::Holds) {
      it->second.first = l.verdict;
      std::string w = l.witness ? l.witness->str() : "";
      if (!l.note.empty()) w += (w.empty() ? "" : " ") + l.note;
      it->second.second = w + " [" + where + "]";
    }
  };
  std::uint64_t composed = 0, crosschecked = 0;
  std::string first_error;
  for (size_t i = 0; i < outs.size(); ++i) {
    for (const auto& l : outs[i].stage1) fold(l, outs[i].where);
    for (const auto& l : outs[i].stage2) fold(l, outs[i].where);
    if (outs[i].composed) ++composed;
    if (outs[i].crosscheck) ++crosschecked;
    if (!outs[i].error.empty() && first_error.empty())
      first_error = outs[i].error + " [" + outs[i].where + "]";
  }
  for (const auto& key : order) {
    const auto& [v, w] = agg.at(key);
    ReportLeaf leaf;
    leaf.group = key.first;
    leaf.label = key.second;
    leaf.verdict = v;
    leaf.witness = w;
    rep.absorb_worst(v);
    rep.leaves.push_back(std::move(leaf));
  }
  const std::string claim =
      "{patn <> nil /\\ patn.len = next.len /\\ prefix_func(next)} match_loop "
      "{r = by_break(i) => first_occur(i) | r = by_continue(_) => "
      "no_occur(text.len)}";
  if (composed == contexts.size()) {
    rep.add("compose", "composition yields " + claim + " on all " +
                           std::to_string(contexts.size()) + " contexts",
            Verdict::Holds);
  } else {
    rep.add("compose", "composition failed: " + first_error,
            Verdict::Counterexample);
  }
  rep.add("compose",
          "direct enumeration cross-check of the composed triple",
          crosschecked == contexts.size() ? Verdict::Holds
                                          : Verdict::Counterexample);
  rep.take_stats(ctx.stats());
  rep.wall_ms = ms_since(t0);
  return rep;
}

Report prove_dfs(const RunManifest& m) {
  auto t0 = Clock::now();
  Report rep;
  rep.target = "dfs";
  const std::int64_t n_max = get_int(m, "n_max", 3);
  const std::int64_t random_count = get_int(m, "random", 200);
  const std::uint64_t seed = static_cast<std::uint64_t>(get_int(m, "seed", 1));

  struct Task {
    graph::PreGraph g;
    std::int64_t start;
    std::string batch;
  };
  std::vector<Task> tasks;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    std::vector<std::int64_t> vs;
    for (std::int64_t v = 0; v < n; ++v) vs.push_back(v);
    std::vector<std::pair<std::int64_t, std::int64_t>> universe;
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b) universe.emplace_back(a, b);
    for (std::uint64_t mask = 0; mask < (1ull << universe.size()); ++mask) {
      std::vector<std::pair<std::int64_t, std::int64_t>> edges;
      for (size_t e = 0; e < universe.size(); ++e)
        if (mask & (1ull << e)) edges.push_back(universe[e]);
      graph::PreGraph g(vs, edges);
      for (std::int64_t s = 0; s < n; ++s)
        tasks.push_back({g, s, "exhaustive n=" + std::to_string(n)});
    }
  }
  std::mt19937_64 rng(seed);
  for (std::int64_t k = 0; k < random_count; ++k) {
    const std::int64_t n = 4 + static_cast<std::int64_t>(rng() % 2);
    std::vector<std::int64_t> vs;
    for (std::int64_t v = 0; v < n; ++v) vs.push_back(v);
    const double p = 0.1 + 0.4 * std::uniform_real_distribution<double>(
                                     0, 1)(rng);
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        if (std::uniform_real_distribution<double>(0, 1)(rng) < p)
          edges.emplace_back(a, b);
    graph::PreGraph g(vs, edges);
    tasks.push_back({g, static_cast<std::int64_t>(rng() % n),
                     "random n=4..5"});
  }

  std::vector<CheckReport> results(tasks.size());
  EvalCtx ctx = m.make_ctx();
  parallel_for(tasks.size(), m.exec(), [&](size_t i) {
    EvalCtx local = ctx;  // copies share the stats counters
    results[i] = graph::dfs_reachability_check(tasks[i].g, tasks[i].start,
                                               local);
  });

  std::vector<std::string> batch_order;
  std::map<std::string, CheckReport> agg;
  for (size_t i = 0; i < tasks.size(); ++i) {
    auto it = agg.find(tasks[i].batch);
    if (it == agg.end()) {
      batch_order.push_back(tasks[i].batch);
      it = agg.emplace(tasks[i].batch, CheckReport::make_holds(0)).first;
    }
    it->second = merge_reports(it->second, results[i],
                               tasks[i].g.describe() + " start=" +
                                   std::to_string(tasks[i].start));
  }
  for (const auto& batch : batch_order) {
    const auto& r = agg.at(batch);
    rep.add("reachability",
            batch + ": visited set equals the reachable set (" +
                std::to_string(r.states_checked) + " terminal states)",
            r.verdict, r.witness, r.note);
  }
  rep.take_stats(ctx.stats());
  rep.wall_ms = ms_since(t0);
  return rep;
}

Report prove_rules(const RunManifest& m) {
  auto t0 = Clock::now();
  Report rep;
  rep.target = "rules";
  const std::uint64_t instances =
      static_cast<std::uint64_t>(get_int(m, "instances", 200));
  const std::uint64_t seed = static_cast<std::uint64_t>(get_int(m, "seed", 7));
  for (const auto& r : run_all_rule_suites(instances, seed)) {
    Verdict v = Verdict::Holds;
    if (r.unsound > 0)
      v = Verdict::Counterexample;
    else if (r.accepted < instances)
      v = Verdict::Inconclusive;
    rep.add("rule-soundness",
            r.rule + ": " + std::to_string(r.accepted) +
                " accepted compositions, " + std::to_string(r.unsound) +
                " unsound (" + std::to_string(r.attempts) + " attempts)",
            v, r.witness);
  }
  rep.wall_ms = ms_since(t0);
  return rep;
}

}  // namespace

Report cmd_prove(const RunManifest& m) {
  if (m.target == "kmp") return prove_kmp(m);
  if (m.target == "dfs") return prove_dfs(m);
  if (m.target == "rules") return prove_rules(m);
  throw UnknownTargetError(m.target);
}

// ---------------------------------------------------------------- vcgen

Report cmd_vcgen(const RunManifest& m) {
  auto t0 = Clock::now();
  Report rep;
  rep.target = m.target;
  EvalCtx ctx = m.make_ctx();

  TripleFamily fam;
  if (m.target == "hailstone-continue") {
    const std::int64_t lo = get_int(m, "x_lo", 1),
                       hi = get_int(m, "x_hi", 100);
    fam.params = {{"x", FiniteDomain::int_range(lo, hi)}};
    fam.make = [](const ValueList& env) -> HoareTriple {
      const std::int64_t x = env[0].as_int();
      Prog prog = mbind(examples::hailstone_body_disjoint(x),
                        [](const Value& y) { return continue_case(y); });
      return {Pred::constant("x >= 1", x >= 1), prog,
              PostCond::atom("y", "y >= 1", [](const Value& r, const Value&) {
                return r.as_int() >= 1;
              })};
    };
  } else if (m.target == "ret-const") {
    fam.make = [](const ValueList&) -> HoareTriple {
      return {Pred::constant("P", true), ret(Value(5), "5"),
              PostCond::atom("r", "r = 5", [](const Value& r, const Value&) {
                return r == Value(5);
              })};
    };
  } else if (m.target == "assume-sp") {
    fam.make = [](const ValueList&) -> HoareTriple {
      Pred p = Pred::constant("P", true);
      Pred q = Pred::atom("Q", [](const Value&) { return true; });
      return {p, assume(q),
              PostCond::conj(PostCond::lift(p), PostCond::lift(q))};
    };
  } else {
    throw UnknownTargetError(m.target);
  }

  auto vcs = vc_gen(fam);
  for (const auto& [name, dom] : fam.params)
    rep.add("binders", "forall " + name + " in " + dom.name(), Verdict::Holds);
  if (m.discharge) {
    auto reports = vc_discharge(fam, std::nullopt, ctx);
    for (size_t i = 0; i < reports.size(); ++i) {
      std::string label =
          i < vcs.size() ? vcs[i].render() : "(extra path)";
      rep.add("vc", label, reports[i].verdict, reports[i].witness,
              reports[i].note);
    }
    if (vcs.empty())
      rep.add("vc", "(no goals: strongest postcondition matched)",
              Verdict::Holds);
  } else {
    for (const auto& vc : vcs)
      rep.add("vc", vc.render(), Verdict::Inconclusive);
    if (vcs.empty())
      rep.add("vc", "(no goals: strongest postcondition matched)",
              Verdict::Holds);
  }
  rep.take_stats(ctx.stats());
  rep.wall_ms = ms_since(t0);
  return rep;
}

// ----------------------------------------------------------------- list

Report cmd_list(const RunManifest&) {
  Report rep;
  rep.target = "list";
  for (const auto& t : targets())
    rep.add(t.kind, t.name + (t.params.empty() ? "" : " [" + t.params + "]") +
                        " -- " + t.doc,
            Verdict::Holds);
  return rep;
}

Report dispatch(const std::string& cmd, const RunManifest& m) {
  if (cmd == "run") return cmd_run(m);
  if (cmd == "check") return cmd_check(m);
  if (cmd == "prove") return cmd_prove(m);
  if (cmd == "vcgen") return cmd_vcgen(m);
  if (cmd == "list") return cmd_list(m);
  throw UsageError("unknown command: " + cmd);
}

}  // namespace relmonad::cli
