#include "relmonad/casestudies/dfs.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace relmonad::graph {

PreGraph::PreGraph(
    std::vector<std::int64_t> vertices,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()),
                  vertices_.end());
  std::int64_t id = 0;
  for (const auto& [s, d] : edges) {
    if (!valid_vertex(s) || !valid_vertex(d))
      throw Error("edge endpoint outside the vertex set");
    edges_.push_back({id++, s, d});
  }
}

bool PreGraph::valid_vertex(std::int64_t v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

FiniteDomain PreGraph::vertex_domain() const {
  std::vector<Value> xs;
  for (auto v : vertices_) xs.emplace_back(v);
  return FiniteDomain(std::move(xs), "V");
}

std::string PreGraph::describe() const {
  std::ostringstream os;
  os << "V={";
  for (size_t i = 0; i < vertices_.size(); ++i)
    os << (i ? "," : "") << vertices_[i];
  os << "} E={";
  for (size_t i = 0; i < edges_.size(); ++i)
    os << (i ? "," : "") << edges_[i].src << ">" << edges_[i].dst;
  os << "}";
  return os.str();
}

bool step(const PreGraph& pg, std::int64_t x, std::int64_t y) {
  for (const auto& e : pg.edges())
    if (e.src == x && e.dst == y) return true;
  return false;
}

namespace {
const std::string kStateTag = "dfs_state";

ValueList to_values(const std::vector<std::int64_t>& xs) {
  ValueList out;
  out.reserve(xs.size());
  for (auto x : xs) out.emplace_back(x);
  return out;
}

std::vector<std::int64_t> to_ints(const ValueList& xs) {
  std::vector<std::int64_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.as_int());
  return out;
}
}  // namespace

Value dfs_state(const std::vector<std::int64_t>& stack,
                const std::vector<std::int64_t>& visited) {
  auto vis = visited;
  std::sort(vis.begin(), vis.end());
  vis.erase(std::unique(vis.begin(), vis.end()), vis.end());
  return Value::tagged(kStateTag,
                       {Value(to_values(stack)), Value(to_values(vis))});
}

Value dfs_initial_state() { return dfs_state({}, {}); }

std::vector<std::int64_t> stack_of(const Value& state) {
  return to_ints(state.as_tagged().fields[0].as_list());
}

std::vector<std::int64_t> visited_of(const Value& state) {
  return to_ints(state.as_tagged().fields[1].as_list());
}

bool is_visited(const Value& state, std::int64_t v) {
  const auto vis = visited_of(state);
  return std::binary_search(vis.begin(), vis.end(), v);
}

Prog visit(std::int64_t v) {
  return relmonad::step("visit(" + std::to_string(v) + ")",
              [v](const Value& s) -> std::vector<Outcome> {
                auto vis = visited_of(s);
                vis.push_back(v);
                return {{Value::unit(), dfs_state(stack_of(s), vis)}};
              });
}

Prog push_stack(std::int64_t v) {
  return relmonad::step("push_stack(" + std::to_string(v) + ")",
              [v](const Value& s) -> std::vector<Outcome> {
                auto st = stack_of(s);
                st.insert(st.begin(), v);
                return {{Value::unit(), dfs_state(st, visited_of(s))}};
              });
}

Prog pop_stack() {
  return relmonad::step("pop_stack", [](const Value& s) -> std::vector<Outcome> {
    auto st = stack_of(s);
    if (st.empty()) return {};
    std::int64_t top = st.front();
    st.erase(st.begin());
    return {{Value(top), dfs_state(st, visited_of(s))}};
  });
}

Prog if_all_neighbor_visited(const PreGraph& pg, std::int64_t u) {
  std::vector<std::int64_t> nbrs;
  for (auto v : pg.vertices())
    if (step(pg, u, v)) nbrs.push_back(v);
  return assume("forall v, step(u, v) -> v in visited",
                [nbrs](const Value& s) {
                  for (auto v : nbrs)
                    if (!is_visited(s, v)) return false;
                  return true;
                });
}

Prog visit_rel(std::int64_t v) {
  return update("s2.visited = s1.visited U {" + std::to_string(v) +
                    "} /\\ s2.stack = s1.stack",
                [v](const Value& s1, const Value& s2) {
                  auto vis = visited_of(s1);
                  vis.push_back(v);
                  std::sort(vis.begin(), vis.end());
                  vis.erase(std::unique(vis.begin(), vis.end()), vis.end());
                  return stack_of(s2) == stack_of(s1) &&
                         visited_of(s2) == vis;
                });
}

Prog push_stack_rel(std::int64_t v) {
  return update("s2.stack = " + std::to_string(v) +
                    " :: s1.stack /\\ s2.visited = s1.visited",
                [v](const Value& s1, const Value& s2) {
                  auto st = stack_of(s1);
                  st.insert(st.begin(), v);
                  return stack_of(s2) == st &&
                         visited_of(s2) == visited_of(s1);
                });
}

std::function<Prog(const Value&)> dfs_body(const PreGraph& pg) {
  // Copy the graph into the closure: bodies outlive the call site.
  auto g = std::make_shared<const PreGraph>(pg);
  return [g](const Value& uv) -> Prog {
    const std::int64_t u = uv.as_int();
    Prog backtrack = mbind(
        if_all_neighbor_visited(*g, u), [](const Value&) -> Prog {
          return choice(
              mbind(assume("stack = nil",
                           [](const Value& s) { return stack_of(s).empty(); }),
                    [](const Value&) { return break_with(Value::unit(), "tt"); }),
              mbind(pop_stack(),
                    [](const Value& v) { return continue_with(v, "v"); }));
        });
    Prog explore = mbind(any(g->vertex_domain()), [g, u](const Value& vv) {
      const std::int64_t v = vv.as_int();
      return mbind(
          assume("~ v in visited",
                 [v](const Value& s) { return !is_visited(s, v); }),
          [g, u, v, vv](const Value&) {
            return mbind(
                assume_pure("step(u, v)", step(*g, u, v)),
                [u, v, vv](const Value&) {
                  return mbind(push_stack(u), [v, vv](const Value&) {
                    return mbind(visit(v), [vv](const Value&) {
                      return continue_with(vv, "v");
                    });
                  });
                });
          });
    });
    return choice(backtrack, explore);
  };
}

Prog dfs(const PreGraph& pg, std::int64_t start) {
  auto loop = repeat_break("dfs", dfs_body(pg));
  return seq(visit(start), loop(Value(start)));
}

std::vector<std::int64_t> reachable_from(const PreGraph& pg, std::int64_t u) {
  std::vector<std::int64_t> out{u};
  std::deque<std::int64_t> work{u};
  while (!work.empty()) {
    auto x = work.front();
    work.pop_front();
    for (auto v : pg.vertices()) {
      if (!step(pg, x, v)) continue;
      if (std::find(out.begin(), out.end(), v) != out.end()) continue;
      out.push_back(v);
      work.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t dfs_state_universe_bound(const PreGraph& pg) {
  const std::uint64_t n = pg.vertices().size();
  // sum over k of n!/(n-k)! duplicate-free stacks, times 2^n visited sets.
  std::uint64_t stacks = 0, perm = 1;
  for (std::uint64_t k = 0; k <= n; ++k) {
    stacks += perm;
    perm *= (n - k);
  }
  return stacks << n;
}

FiniteDomain dfs_state_domain(const PreGraph& pg, std::uint64_t cap) {
  const std::uint64_t bound = dfs_state_universe_bound(pg);
  if (bound > cap) throw StateSpaceTooLargeError(bound);

  const auto& vs = pg.vertices();
  std::vector<std::vector<std::int64_t>> stacks{{}};
  for (size_t i = 0; i < stacks.size(); ++i) {
    auto base = stacks[i];
    for (auto v : vs) {
      if (std::find(base.begin(), base.end(), v) != base.end()) continue;
      auto next = base;
      next.insert(next.begin(), v);
      stacks.push_back(std::move(next));
    }
  }
  std::vector<Value> states;
  const size_t n = vs.size();
  for (const auto& st : stacks)
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<std::int64_t> vis;
      for (size_t b = 0; b < n; ++b)
        if (mask & (1ull << b)) vis.push_back(vs[b]);
      states.push_back(dfs_state(st, vis));
    }
  return FiniteDomain(std::move(states), "DfsState");
}

CheckReport dfs_reachability_check(const PreGraph& pg, std::int64_t start,
                                   const EvalCtx& ctx) {
  const std::uint64_t bound = dfs_state_universe_bound(pg);
  if (bound > ctx.state_cap()) throw StateSpaceTooLargeError(bound);
  if (!pg.valid_vertex(start))
    throw InvalidParameterError("start vertex not in the graph");

  EvalResult r = eval(dfs(pg, start), dfs_initial_state(), ctx);
  const auto expected = reachable_from(pg, start);
  std::uint64_t checked = 0;
  for (const auto& o : r.outcomes.items()) {
    ++checked;
    if (visited_of(o.state) != expected)
      return CheckReport::refuted({dfs_initial_state(), o.value, o.state},
                                  checked,
                                  "terminal visited set differs from the "
                                  "reachable set on " +
                                      pg.describe());
  }
  if (!r.complete) return CheckReport::inconclusive(checked);
  if (r.outcomes.empty())
    return CheckReport::refuted(
        {dfs_initial_state(), Value::unit(), dfs_initial_state()}, 0,
        "DFS produced no terminal states on " + pg.describe());
  return CheckReport::make_holds(checked);
}

}  // namespace relmonad::graph
