#ifndef RELMONAD_CASESTUDIES_DFS_HPP
#define RELMONAD_CASESTUDIES_DFS_HPP

#include <cstdint>
#include <vector>

#include "relmonad/fixpoint.hpp"
#include "relmonad/hoare.hpp"
#include "relmonad/prog.hpp"

namespace relmonad::graph {

// Directed graph as a vertex set plus identified edges with source and
// destination maps. Construction rejects edges over invalid vertices.
class PreGraph {
 public:
  struct Edge {
    std::int64_t id, src, dst;
  };

  PreGraph(std::vector<std::int64_t> vertices,
           const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

  const std::vector<std::int64_t>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool valid_vertex(std::int64_t v) const;
  FiniteDomain vertex_domain() const;
  std::string describe() const;

 private:
  std::vector<std::int64_t> vertices_;
  std::vector<Edge> edges_;
};

// Some valid edge runs from x to y.
bool step(const PreGraph& pg, std::int64_t x, std::int64_t y);

// DFS program state: a search-path stack plus the visited set, encoded as
// dfs_state(stack list, sorted visited list).
Value dfs_state(const std::vector<std::int64_t>& stack,
                const std::vector<std::int64_t>& visited);
Value dfs_initial_state();
std::vector<std::int64_t> stack_of(const Value& state);
std::vector<std::int64_t> visited_of(const Value& state);  // sorted
bool is_visited(const Value& state, std::int64_t v);

// The search-state operations, in forward-executable step form.
Prog visit(std::int64_t v);
Prog push_stack(std::int64_t v);
Prog pop_stack();
Prog if_all_neighbor_visited(const PreGraph& pg, std::int64_t u);

// The same operations as literal update relations over a registered state
// domain; denotationally equal to the step forms (cross-checked in tests).
Prog visit_rel(std::int64_t v);
Prog push_stack_rel(std::int64_t v);

std::function<Prog(const Value&)> dfs_body(const PreGraph& pg);
Prog dfs(const PreGraph& pg, std::int64_t start);

// Transitive closure of step from u, including u itself.
std::vector<std::int64_t> reachable_from(const PreGraph& pg, std::int64_t u);

// Size of the duplicate-free (stack, visited) universe.
std::uint64_t dfs_state_universe_bound(const PreGraph& pg);

// Every (stack, visited) pair with a duplicate-free stack. Throws
// StateSpaceTooLargeError when the universe exceeds `cap`.
FiniteDomain dfs_state_domain(const PreGraph& pg, std::uint64_t cap);

// Holds iff evaluation is complete and every terminal visited set equals
// the reachable set from `start`. Throws StateSpaceTooLargeError when the
// state universe bound exceeds ctx.state_cap().
CheckReport dfs_reachability_check(const PreGraph& pg, std::int64_t start,
                                   const EvalCtx& ctx);

}  // namespace relmonad::graph

#endif  // RELMONAD_CASESTUDIES_DFS_HPP
