// Serial vs parallel comparison for the enumeration kernels: denote over a
// state domain, triple checking over initial states, and the two suite
// drivers. Prints one line per kernel with both timings and the speedup.

#include <chrono>
#include <cstdio>
#include <string>

#include "relmonad/casestudies/dfs.hpp"
#include "relmonad/casestudies/kmp.hpp"
#include "relmonad/gen.hpp"
#include "relmonad/casestudies/examples.hpp"
#include "relmonad/hoare.hpp"

using namespace relmonad;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
  auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
              name.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  const int scale = quick ? 1 : 4;

  // denote: a nondeterministic update/choice-heavy program over many states.
  {
    gen::ProgGen g(FiniteDomain::int_range(0, quick ? 40 : 120),
                   FiniteDomain::int_range(0, 5), 99);
    g.max_depth = 4;
    Prog p = g.prog();
    EvalCtx ctx;
    ctx.with_state_domain(g.states);
    Denotation ds, dp;
    double s = time_ms([&] { ds = denote(p, g.states, ctx, Exec::serial()); });
    double q = time_ms([&] { dp = denote(p, g.states, ctx, Exec::par()); });
    if (!(ds == dp)) {
      std::fprintf(stderr, "denote mismatch between serial and parallel\n");
      return 1;
    }
    row("denote/random-program", s, q);
  }

  // check_triple: hailstone termination claims over many initial values,
  // encoded via a step from an integer state.
  {
    FiniteDomain states = FiniteDomain::int_range(1, 40 * scale);
    EvalCtx ctx;
    ctx.with_state_domain(states);
    Prog p = mbind(step("read x",
                        [](const Value& s) -> std::vector<Outcome> {
                          return {{s, s}};
                        }),
                   [](const Value& x) {
                     return examples::hailstone(x.as_int());
                   });
    HoareTriple t{Pred::constant("true", true), p,
                  PostCond::atom("r", "r = 1", [](const Value& r, const Value&) {
                    return r == Value(1);
                  })};
    CheckReport rs, rp;
    double s = time_ms([&] { rs = check_triple(t, states, ctx, Exec::serial()); });
    double q = time_ms([&] { rp = check_triple(t, states, ctx, Exec::par()); });
    if (rs.verdict != rp.verdict) {
      std::fprintf(stderr, "check_triple verdict mismatch\n");
      return 1;
    }
    row("check_triple/hailstone", s, q);
  }

  // DFS reachability over a batch of random graphs.
  {
    std::mt19937_64 rng(5);
    std::vector<graph::PreGraph> graphs;
    for (int k = 0; k < 30 * scale; ++k) {
      const std::int64_t n = 4;
      std::vector<std::int64_t> vs{0, 1, 2, 3};
      std::vector<std::pair<std::int64_t, std::int64_t>> edges;
      for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
          if (rng() % 4 == 0) edges.emplace_back(a, b);
      graphs.emplace_back(vs, edges);
    }
    auto run = [&](Exec exec) {
      std::vector<CheckReport> out(graphs.size());
      parallel_for(graphs.size(), exec, [&](size_t i) {
        EvalCtx local;
        out[i] = graph::dfs_reachability_check(graphs[i], 0, local);
      });
      return out;
    };
    std::vector<CheckReport> rs, rp;
    double s = time_ms([&] { rs = run(Exec::serial()); });
    double q = time_ms([&] { rp = run(Exec::par()); });
    for (size_t i = 0; i < rs.size(); ++i)
      if (rs[i].verdict != rp[i].verdict) {
        std::fprintf(stderr, "dfs batch mismatch at %zu\n", i);
        return 1;
      }
    row("dfs-suite/random-graphs", s, q);
  }

  // KMP end-to-end denotations over all bounded contexts.
  {
    std::vector<kmp::KmpContext> ctxs;
    for (const std::string p : {"a", "b", "ab", "ba", "aab", "bba"})
      for (int tl = 0; tl <= (quick ? 3 : 5); ++tl) {
        std::string t;
        for (int i = 0; i < tl; ++i) t += (i % 2 == 0 ? 'a' : 'b');
        ctxs.push_back({p, t, kmp::build_next_oracle(p), 'a'});
      }
    auto run = [&](Exec exec) {
      std::vector<size_t> sizes(ctxs.size());
      parallel_for(ctxs.size(), exec, [&](size_t i) {
        EvalCtx local;
        sizes[i] = eval(kmp::match_loop(ctxs[i]), Value::unit(), local)
                       .outcomes.size();
      });
      return sizes;
    };
    std::vector<size_t> rs, rp;
    double s = time_ms([&] { rs = run(Exec::serial()); });
    double q = time_ms([&] { rp = run(Exec::par()); });
    if (rs != rp) {
      std::fprintf(stderr, "kmp batch mismatch\n");
      return 1;
    }
    row("kmp-suite/match-loop", s, q);
  }

  return 0;
}
