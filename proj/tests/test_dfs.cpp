#include <set>

#include "common/oracles.hpp"
#include "doctest.h"
#include "relmonad/casestudies/dfs.hpp"

using namespace relmonad;
using graph::PreGraph;

namespace {
PreGraph path3() { return PreGraph({0, 1, 2}, {{0, 1}, {1, 2}}); }
}  // namespace

TEST_CASE("step relation") {
  PreGraph g({0, 1}, {{0, 1}});
  CHECK(graph::step(g, 0, 1));
  CHECK_FALSE(graph::step(g, 1, 0));
  PreGraph empty({0, 1}, {});
  CHECK_FALSE(graph::step(empty, 0, 1));
  PreGraph loop({0}, {{0, 0}});
  CHECK(graph::step(loop, 0, 0));
  CHECK_THROWS_AS(PreGraph({0}, {{0, 1}}), Error);
}

TEST_CASE("dfs state operations") {
  EvalCtx ctx;
  Value s0 = graph::dfs_initial_state();

  auto r = eval(graph::visit(3), s0, ctx);
  REQUIRE(r.outcomes.size() == 1);
  CHECK(graph::visited_of(r.outcomes.items()[0].state) ==
        std::vector<std::int64_t>{3});
  CHECK(graph::stack_of(r.outcomes.items()[0].state).empty());

  Value st = graph::dfs_state({4, 5}, {4, 5});
  auto rp = eval(graph::pop_stack(), st, ctx);
  REQUIRE(rp.outcomes.size() == 1);
  CHECK(rp.outcomes.items()[0].value == Value(4));
  CHECK(graph::stack_of(rp.outcomes.items()[0].state) ==
        std::vector<std::int64_t>{5});

  // popping the empty stack has no outcomes
  CHECK(eval(graph::pop_stack(), s0, ctx).outcomes.empty());
}

TEST_CASE("step-form operations equal the literal update relations") {
  EvalCtx ctx;
  PreGraph g({0, 1}, {{0, 1}});
  FiniteDomain states = graph::dfs_state_domain(g, 1 << 12);
  ctx.with_state_domain(states);
  for (std::int64_t v : {0, 1}) {
    CHECK(equiv_check(graph::visit(v), graph::visit_rel(v), states, ctx)
              .holds());
    // push_stack's successor leaves the duplicate-free universe when v is
    // already stacked; compare where the successor stays in-domain.
    std::vector<Value> ok;
    for (const auto& s : states.elements()) {
      auto st = graph::stack_of(s);
      if (std::find(st.begin(), st.end(), v) == st.end()) ok.push_back(s);
    }
    FiniteDomain pushable(std::move(ok), "pushable");
    CHECK(equiv_check(graph::push_stack(v), graph::push_stack_rel(v), pushable,
                      ctx)
              .holds());
  }
}

TEST_CASE("dfs terminal states") {
  EvalCtx ctx;
  SUBCASE("single vertex, no edges") {
    PreGraph g({0}, {});
    auto r = eval(graph::dfs(g, 0), graph::dfs_initial_state(), ctx);
    REQUIRE(r.complete);
    REQUIRE(r.outcomes.size() == 1);
    CHECK(graph::visited_of(r.outcomes.items()[0].state) ==
          std::vector<std::int64_t>{0});
    CHECK(graph::stack_of(r.outcomes.items()[0].state).empty());
  }
  SUBCASE("path 0 -> 1 -> 2 visits everything") {
    auto r = eval(graph::dfs(path3(), 0), graph::dfs_initial_state(), ctx);
    REQUIRE(r.complete);
    for (const auto& o : r.outcomes.items())
      CHECK(graph::visited_of(o.state) == std::vector<std::int64_t>{0, 1, 2});
  }
  SUBCASE("two components: 0 -> 1, isolated 2") {
    PreGraph g({0, 1, 2}, {{0, 1}});
    auto r = eval(graph::dfs(g, 0), graph::dfs_initial_state(), ctx);
    REQUIRE(r.complete);
    for (const auto& o : r.outcomes.items())
      CHECK(graph::visited_of(o.state) == std::vector<std::int64_t>{0, 1});
  }
}

TEST_CASE("reachability check on K3 and an isolated start") {
  EvalCtx ctx;
  PreGraph k3({0, 1, 2}, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}});
  for (std::int64_t s : {0, 1, 2})
    CHECK(graph::dfs_reachability_check(k3, s, ctx).holds());
  PreGraph iso({0, 1, 2}, {{1, 2}});
  CHECK(graph::reachable_from(iso, 0) == std::vector<std::int64_t>{0});
  CHECK(graph::dfs_reachability_check(iso, 0, ctx).holds());
}

TEST_CASE("stack discipline: no duplicates, every stacked vertex visited") {
  EvalCtx ctx;
  PreGraph g({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  bool ok = true;
  ctx.with_rec_observer([&ok](const Value&, const Value& st) {
    if (!st.is_tagged()) return;
    auto stack = graph::stack_of(st);
    auto sorted = stack;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      ok = false;
    for (auto v : stack)
      if (!graph::is_visited(st, v)) ok = false;
  });
  eval(graph::dfs(g, 0), graph::dfs_initial_state(), ctx);
  CHECK(ok);
}

TEST_CASE("dfs body guards are exclusive and exhaustive on reachable states") {
  EvalCtx ctx;
  PreGraph g({0, 1, 2}, {{0, 1}, {1, 2}});
  auto body = graph::dfs_body(g);
  std::vector<std::pair<Value, Value>> seen;
  ctx.with_rec_observer([&seen](const Value& arg, const Value& st) {
    seen.emplace_back(arg, st);
  });
  eval(graph::dfs(g, 0), graph::dfs_initial_state(), ctx);
  REQUIRE(!seen.empty());
  for (const auto& [arg, st] : seen) {
    if (!st.is_tagged()) continue;
    const std::int64_t u = arg.as_int();
    bool all_visited = true;
    for (auto v : g.vertices())
      if (graph::step(g, u, v) && !graph::is_visited(st, v))
        all_visited = false;
    bool has_unvisited_neighbor = !all_visited;
    // exactly one arm of the body's choice can fire
    CHECK((all_visited || has_unvisited_neighbor));
    CHECK(all_visited == !has_unvisited_neighbor);
    (void)body;
  }
}

TEST_CASE("exhaustive 2-vertex sweep against the closure oracle") {
  EvalCtx ctx;
  const std::vector<std::pair<int, int>> all_edges{{0, 0}, {0, 1}, {1, 0},
                                                   {1, 1}};
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::vector<std::pair<int, int>> raw;
    for (size_t b = 0; b < all_edges.size(); ++b)
      if (mask & (1u << b)) {
        edges.emplace_back(all_edges[b].first, all_edges[b].second);
        raw.push_back(all_edges[b]);
      }
    PreGraph g({0, 1}, edges);
    auto closure = oracles::closure(2, raw);
    for (std::int64_t s : {0, 1}) {
      CHECK(graph::dfs_reachability_check(g, s, ctx).holds());
      // independent oracle agreement
      std::vector<std::int64_t> want;
      for (std::int64_t v = 0; v < 2; ++v)
        if (closure[static_cast<size_t>(s)][static_cast<size_t>(v)])
          want.push_back(v);
      CHECK(graph::reachable_from(g, s) == want);
    }
  }
}

TEST_CASE("state-space cap reports the computed bound") {
  EvalCtx ctx;
  ctx.with_state_cap(10);
  PreGraph g({0, 1, 2, 3, 4}, {});
  CHECK_THROWS_AS(graph::dfs_reachability_check(g, 0, ctx),
                  StateSpaceTooLargeError);
  try {
    graph::dfs_reachability_check(g, 0, ctx);
  } catch (const StateSpaceTooLargeError& e) {
    CHECK(e.bound == graph::dfs_state_universe_bound(g));
  }
}
