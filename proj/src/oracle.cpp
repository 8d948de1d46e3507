#include "motif/oracle.hpp"

#include <algorithm>

#include "motif/errors.hpp"

namespace motif {

namespace {

struct Backtracker {
  const DataGraph& g;
  const QueryGraph& q;
  const Coloring* chi;  // null: ignore colors
  uint64_t steps = 0;
  uint64_t limit;

  std::vector<int> order;                      // query nodes in assignment order
  std::vector<std::vector<int>> placed_neigh;  // per order slot: earlier neighbors (order index)
  std::vector<uint32_t> image;                 // per order slot
  std::vector<bool> used;                      // data vertex used
  uint32_t used_colors = 0;

  Backtracker(const DataGraph& g_, const QueryGraph& q_, const Coloring* chi_, uint64_t limit_)
      : g(g_), q(q_), chi(chi_), limit(limit_) {
    // Assignment order: DFS over the query so every node after the first
    // has at least one already-placed neighbor to check edges against.
    std::vector<bool> seen(q.k, false);
    std::vector<int> stack;
    for (int s = 0; s < q.k; ++s) {
      if (!q.is_active(s) || seen[s]) continue;
      stack.push_back(s);
      seen[s] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int w : q.neighbors(v)) {
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
    }
    placed_neigh.resize(order.size());
    std::vector<int> slot_of(q.k, -1);
    for (size_t i = 0; i < order.size(); ++i) slot_of[order[i]] = static_cast<int>(i);
    for (size_t i = 0; i < order.size(); ++i) {
      for (int w : q.neighbors(order[i])) {
        if (slot_of[w] < static_cast<int>(i)) placed_neigh[i].push_back(slot_of[w]);
      }
    }
    image.resize(order.size());
    used.assign(g.num_vertices(), false);
  }

  template <class Visit>
  void run(size_t slot, Visit&& visit) {
    if (slot == order.size()) {
      visit(image);
      return;
    }
    for (uint32_t v = 0; v < g.num_vertices(); ++v) {
      if (++steps > limit) throw BudgetError("oracle budget exceeded after " +
                                             std::to_string(steps - 1) + " steps");
      if (used[v]) continue;
      if (chi) {
        uint32_t bit = chi->color_bit(v);
        if (used_colors & bit) continue;
      }
      bool ok = true;
      for (int p : placed_neigh[slot]) {
        if (!g.has_edge(image[p], v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[slot] = v;
      used[v] = true;
      if (chi) used_colors |= chi->color_bit(v);
      run(slot + 1, visit);
      used[v] = false;
      if (chi) used_colors &= ~chi->color_bit(v);
    }
  }
};

}  // namespace

uint64_t brute_matches(const DataGraph& g, const QueryGraph& q, OracleBudget budget) {
  Backtracker bt(g, q, nullptr, budget.max_steps);
  uint64_t count = 0;
  bt.run(0, [&](const std::vector<uint32_t>&) { count = checked_add(count, 1); });
  return count;
}

uint64_t brute_colorful(const DataGraph& g, const QueryGraph& q, const Coloring& chi,
                        OracleBudget budget) {
  Backtracker bt(g, q, &chi, budget.max_steps);
  uint64_t count = 0;
  bt.run(0, [&](const std::vector<uint32_t>&) { count = checked_add(count, 1); });
  return count;
}

ProjectionTable brute_projection(const DataGraph& g, const QueryGraph& q, const Coloring& chi,
                                 const std::vector<int>& boundary, OracleBudget budget) {
  if (boundary.empty() || boundary.size() > 2)
    throw SchemaError("brute_projection takes 1 or 2 boundary nodes");
  Backtracker bt(g, q, &chi, budget.max_steps);
  std::vector<int> slot_of_node(q.k, -1);
  for (size_t i = 0; i < bt.order.size(); ++i) slot_of_node[bt.order[i]] = static_cast<int>(i);

  ProjectionTable out(TableSchema{static_cast<int>(boundary.size()), 0, {-1, -1}});
  bt.run(0, [&](const std::vector<uint32_t>& image) {
    TableKey k;
    uint32_t sig = 0;
    for (uint32_t v : image) sig |= chi.color_bit(v);
    k.sig = sig;
    for (size_t i = 0; i < boundary.size(); ++i) k.key[i] = image[slot_of_node[boundary[i]]];
    out.add(k, 1);
  });
  return out;
}

Subquery subquery_of(const QueryGraph& original, const DecompositionTree& tree, BlockId block) {
  const uint32_t mask = tree.subquery_nodes(block);
  std::vector<int> nodes;
  for (int v = 0; v < original.k; ++v) {
    if ((mask >> v) & 1u) nodes.push_back(v);
  }
  std::vector<int> renum(original.k, -1);
  for (size_t i = 0; i < nodes.size(); ++i) renum[nodes[i]] = static_cast<int>(i);

  std::vector<std::pair<int, int>> edges;
  for (const auto& e : original.edges) {
    if (((mask >> e.a) & 1u) && ((mask >> e.b) & 1u)) edges.emplace_back(renum[e.a], renum[e.b]);
  }
  Subquery sq;
  sq.q = QueryGraph::from_edges(static_cast<int>(nodes.size()), edges);
  for (int b : tree.blocks[block].boundary) sq.boundary.push_back(renum[b]);
  return sq;
}

}  // namespace motif
