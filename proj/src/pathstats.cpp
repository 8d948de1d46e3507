#include "motif/pathstats.hpp"

#include <numeric>

#include "motif/errors.hpp"
#include "motif/rng.hpp"

namespace motif {

namespace {

// Counts simple q-node tuples from each start whose later nodes all
// satisfy key(node) < key(start); key == nullptr count all tuples.
uint64_t dfs_count(const DataGraph& g, int q, const std::vector<uint32_t>* key, uint64_t budget) {
  const uint32_t n = g.num_vertices();
  std::vector<bool> on_path(n, false);
  uint64_t total = 0;
  uint64_t steps = 0;

  auto walk = [&](auto&& self, uint32_t v, uint32_t start, int depth) -> void {
    if (depth == q) {
      total = checked_add(total, 1);
      return;
    }
    for (uint32_t w : g.neighbors(v)) {
      if (++steps > budget) throw BudgetError("path enumeration budget exceeded");
      if (on_path[w]) continue;
      if (key && (*key)[w] >= (*key)[start]) continue;
      on_path[w] = true;
      self(self, w, start, depth + 1);
      on_path[w] = false;
    }
  };

  for (uint32_t s = 0; s < n; ++s) {
    on_path[s] = true;
    walk(walk, s, s, 1);
    on_path[s] = false;
  }
  return total;
}

}  // namespace

PathStats path_stats(const DataGraph& g, int q, const VertexOrdering& ord,
                     const std::vector<uint32_t>& id_perm, uint64_t budget) {
  if (q < 2) throw SpecError("paths need at least 2 nodes");
  std::vector<uint32_t> rank_key(g.num_vertices());
  for (uint32_t v = 0; v < g.num_vertices(); ++v) rank_key[v] = ord.rank(v);
  PathStats st;
  st.q = q;
  st.x = dfs_count(g, q, &rank_key, budget);
  st.y = dfs_count(g, q, &id_perm, budget);
  return st;
}

uint64_t count_path_tuples(const DataGraph& g, int q, uint64_t budget) {
  if (q < 2) throw SpecError("paths need at least 2 nodes");
  return dfs_count(g, q, nullptr, budget);
}

std::vector<uint32_t> random_id_permutation(uint32_t n, uint64_t seed) {
  std::vector<uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  shuffle_vec(perm, rng);
  return perm;
}

}  // namespace motif
