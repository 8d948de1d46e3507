#pragma once

#include <cstdint>
#include <vector>

#include "motif/graph.hpp"

namespace motif {

struct PathStats {
  int q = 0;       // path node count
  uint64_t x = 0;  // tuples whose start is degree-order highest
  uint64_t y = 0;  // tuples whose start has the highest permuted id
};

// X(q): simple q-node path tuples (u1..uq) with u1 above every other
// node in the degree order. Y(q): same with id_perm[u1] maximal. Paths
// are counted as directed tuples. Budget counts DFS visits.
PathStats path_stats(const DataGraph& g, int q, const VertexOrdering& ord,
                     const std::vector<uint32_t>& id_perm, uint64_t budget = 1000000000ULL);

// All simple q-node directed path tuples, no ordering constraint.
uint64_t count_path_tuples(const DataGraph& g, int q, uint64_t budget = 1000000000ULL);

// Random permutation of 0..n-1 for the Y definition.
std::vector<uint32_t> random_id_permutation(uint32_t n, uint64_t seed);

}  // namespace motif
