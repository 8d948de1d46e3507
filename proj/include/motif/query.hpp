#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace motif {

/// Query graph over nodes 0..k-1. The same type represents the residual
/// query during contraction: nodes leave the active set, virtual edges
/// appear, and nodes/edges pick up block annotations.
struct QueryGraph {
  struct Edge {
    int a = -1, b = -1;      // a < b
    int child = -1;          // block annotating this edge (-1: original query edge)
    bool child_fwd = true;   // child's boundary order equals (a, b)
  };

  int k = 0;
  std::vector<Edge> edges;
  uint32_t active = 0;          // bitmask of live nodes
  std::vector<int> node_child;  // per node annotation, -1 if none

  static QueryGraph from_edges(int k, const std::vector<std::pair<int, int>>& edges);

  bool is_active(int v) const { return (active >> v) & 1u; }
  int active_count() const { return __builtin_popcount(active); }
  int find_edge(int a, int b) const;  // index into edges, -1 if absent
  std::vector<int> neighbors(int v) const;
  int degree(int v) const;
  bool connected() const;  // over active nodes
};

// File format: first line "k", then "u v" node pairs, 0-based.
QueryGraph parse_query(std::istream& in);
QueryGraph load_query_file(const std::string& path);

using BlockId = int;

/// A decomposition block: a leaf edge or a contractible cycle, together
/// with the child blocks it inherited from node/edge annotations.
struct Block {
  enum class Kind { LeafEdge, Cycle };

  BlockId id = -1;
  Kind kind = Kind::Cycle;
  // Cycle: nodes in cycle order (edge i joins nodes[i], nodes[(i+1)%L]).
  // LeafEdge: nodes = {boundary, leaf}; the single edge joins them.
  std::vector<int> nodes;
  // Boundary nodes in key order; the block's projection table is keyed by
  // their images in this order. 0..2 entries.
  std::vector<int> boundary;
  std::vector<int> child_on_node;      // per node position, -1 if none
  std::vector<int> child_on_edge;      // per edge position, -1 if none
  std::vector<char> edge_child_fwd;    // child boundary order matches edge direction

  int length() const { return static_cast<int>(nodes.size()); }
  int num_edges() const { return kind == Kind::Cycle ? length() : 1; }
  int position_of(int node) const;
  std::string canonical() const;  // structural serialization (ignores ids)
};

struct DecompositionTree {
  int k = 0;
  std::vector<Block> blocks;   // indexed by BlockId
  BlockId root = -1;
  // True when contraction ended on a single annotated node rather than a
  // boundary-free cycle; the final count is then the entry total of the
  // root block's unary table.
  bool singleton_root = false;
  int singleton_node = -1;
  std::vector<BlockId> parent;  // per block, -1 for root

  std::vector<BlockId> bottom_up_order() const;
  std::string canonical() const;
  // Nodes of the subquery represented by a block: block nodes plus all
  // descendants' nodes, as a bitmask.
  uint32_t subquery_nodes(BlockId b) const;
};

// All leaf edges and induced cycles with at most two boundary nodes in
// the current residual query. Empty only if the (residual) query has
// treewidth above 2.
std::vector<Block> find_blocks(const QueryGraph& q);

// Applies one contraction. The returned block is `b` with inherited
// children filled in; `q` is updated in place.
Block contract_block(QueryGraph& q, const Block& b, BlockId new_id);

// Exhaustive enumeration over contraction choices, deduplicated by
// canonical serialization, sorted by it. Throws TreewidthError when some
// residual query admits no block.
std::vector<DecompositionTree> enumerate_trees(const QueryGraph& q, size_t max_trees = 10000);

struct PlanScore {
  int max_cycle_length = 0;
  int boundary_total = 0;
  int annotation_total = 0;

  auto operator<=>(const PlanScore&) const = default;
};

PlanScore plan_score(const DecompositionTree& t);

// Lexicographic minimum of (max cycle length, total boundary nodes,
// total annotations), ties broken by canonical serialization.
const DecompositionTree& select_plan(const std::vector<DecompositionTree>& trees);

}  // namespace motif
