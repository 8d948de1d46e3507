#pragma once

#include <cstdint>
#include <vector>

#include "motif/graph.hpp"
#include "motif/query.hpp"
#include "motif/table.hpp"

namespace motif {

// Cap on backtracking steps (vertex-assignment attempts) before aborting.
struct OracleBudget {
  uint64_t max_steps = 1000000000ULL;
};

// Exact number of injective edge-preserving maps V(Q) -> V(G).
uint64_t brute_matches(const DataGraph& g, const QueryGraph& q, OracleBudget budget = {});

// Matches whose image uses k pairwise-distinct colors.
uint64_t brute_colorful(const DataGraph& g, const QueryGraph& q, const Coloring& chi,
                        OracleBudget budget = {});

// Colorful matches of a subquery grouped by the images of 1 or 2 boundary
// nodes and the signature; same layout as the engine-built tables.
ProjectionTable brute_projection(const DataGraph& g, const QueryGraph& q, const Coloring& chi,
                                 const std::vector<int>& boundary, OracleBudget budget = {});

// Helper for comparing a tree block's table against the oracle: the
// induced subquery represented by the block, with the block's boundary
// nodes renumbered into it.
struct Subquery {
  QueryGraph q;
  std::vector<int> boundary;  // node ids within q, in block key order
};
Subquery subquery_of(const QueryGraph& original, const DecompositionTree& tree, BlockId block);

}  // namespace motif
