#include "motif/query.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "motif/errors.hpp"

namespace motif {

QueryGraph QueryGraph::from_edges(int k, const std::vector<std::pair<int, int>>& edges) {
  if (k < 1 || k > 32) throw ParseError("query node count must be in [1,32]");
  QueryGraph q;
  q.k = k;
  q.active = (k == 32) ? 0xFFFFFFFFu : ((1u << k) - 1);
  q.node_child.assign(k, -1);
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || a >= k || b < 0 || b >= k) throw ParseError("query edge endpoint out of range");
    if (a == b) throw ParseError("query self loop");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) throw ParseError("duplicate query edge");
    q.edges.push_back({a, b, -1, true});
  }
  return q;
}

int QueryGraph::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].a == a && edges[i].b == b) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> QueryGraph::neighbors(int v) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.a == v) out.push_back(e.b);
    if (e.b == v) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int QueryGraph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool QueryGraph::connected() const {
  if (active == 0) return true;
  int start = __builtin_ctz(active);
  uint32_t seen = 1u << start;
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : neighbors(v)) {
      if (!((seen >> u) & 1u)) {
        seen |= 1u << u;
        stack.push_back(u);
      }
    }
  }
  return seen == active;
}

QueryGraph parse_query(std::istream& in) {
  int k;
  if (!(in >> k)) throw ParseError("query file: missing node count");
  long long u, v;
  std::vector<std::pair<int, int>> edges;
  while (in >> u) {
    if (!(in >> v)) throw ParseError("query file: dangling endpoint");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  QueryGraph q = QueryGraph::from_edges(k, edges);
  if (!q.connected()) throw ParseError("query must be connected");
  return q;
}

QueryGraph load_query_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open query file: " + path);
  return parse_query(f);
}

int Block::position_of(int node) const {
  for (int i = 0; i < length(); ++i) {
    if (nodes[i] == node) return i;
  }
  return -1;
}

std::string Block::canonical() const {
  std::ostringstream s;
  s << (kind == Kind::Cycle ? 'C' : 'L') << '(';
  for (size_t i = 0; i < nodes.size(); ++i) s << (i ? "," : "") << nodes[i];
  s << "|";
  for (size_t i = 0; i < boundary.size(); ++i) s << (i ? "," : "") << boundary[i];
  s << ')';
  return s.str();
}

namespace {

// Rotation/direction canonical form: minimum node first, then the smaller
// of its two cycle neighbors.
std::vector<int> canonical_cycle(std::vector<int> c) {
  auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
  return c;
}

uint32_t node_mask(const std::vector<int>& nodes) {
  uint32_t m = 0;
  for (int v : nodes) m |= 1u << v;
  return m;
}

// All simple cycles of the active query, emitted in canonical form.
void simple_cycles(const QueryGraph& q, std::vector<std::vector<int>>& out) {
  std::vector<std::vector<int>> adj(q.k);
  for (int v = 0; v < q.k; ++v) {
    if (q.is_active(v)) adj[v] = q.neighbors(v);
  }
  std::vector<int> path;
  uint32_t on_path = 0;
  auto dfs = [&](auto&& self, int v) -> void {
    int s = path.front();
    for (int w : adj[v]) {
      if (w == s && path.size() >= 3) {
        if (path[1] < path.back()) out.push_back(path);
      } else if (w > s && !((on_path >> w) & 1u)) {
        path.push_back(w);
        on_path |= 1u << w;
        self(self, w);
        path.pop_back();
        on_path &= ~(1u << w);
      }
    }
  };
  for (int s = 0; s < q.k; ++s) {
    if (!q.is_active(s)) continue;
    path = {s};
    on_path = 1u << s;
    dfs(dfs, s);
  }
}

}  // namespace

std::vector<Block> find_blocks(const QueryGraph& q) {
  std::vector<Block> out;

  for (int b = 0; b < q.k; ++b) {
    if (!q.is_active(b) || q.degree(b) != 1) continue;
    int a = q.neighbors(b)[0];
    Block blk;
    blk.kind = Block::Kind::LeafEdge;
    blk.nodes = {a, b};
    blk.boundary = {a};
    blk.child_on_node.assign(2, -1);
    blk.child_on_edge.assign(1, -1);
    blk.edge_child_fwd.assign(1, 0);
    out.push_back(std::move(blk));
  }

  std::vector<std::vector<int>> cycles;
  simple_cycles(q, cycles);
  for (auto& cyc : cycles) {
    const uint32_t mask = node_mask(cyc);
    bool induced = true;
    std::vector<int> boundary;
    for (int v : cyc) {
      int inside = 0;
      bool outside = false;
      for (int w : q.neighbors(v)) {
        if ((mask >> w) & 1u) {
          inside++;
        } else {
          outside = true;
        }
      }
      if (inside != 2) {  // any in-cycle neighbor beyond prev/next is a chord
        induced = false;
        break;
      }
      if (outside) boundary.push_back(v);
    }
    if (!induced || boundary.size() > 2) continue;

    Block blk;
    blk.kind = Block::Kind::Cycle;
    blk.nodes = canonical_cycle(cyc);
    // boundary ordered by cycle position
    std::sort(boundary.begin(), boundary.end(), [&](int x, int y) {
      return blk.position_of(x) < blk.position_of(y);
    });
    blk.boundary = boundary;
    const int L = blk.length();
    blk.child_on_node.assign(L, -1);
    blk.child_on_edge.assign(L, -1);
    blk.edge_child_fwd.assign(L, 0);
    out.push_back(std::move(blk));
  }

  std::sort(out.begin(), out.end(), [](const Block& x, const Block& y) {
    if (x.kind != y.kind) return x.kind == Block::Kind::LeafEdge;
    return x.nodes < y.nodes;
  });
  return out;
}

Block contract_block(QueryGraph& q, const Block& b, BlockId new_id) {
  Block blk = b;
  blk.id = new_id;
  const int L = blk.length();

  for (int v : blk.nodes) {
    if (v < 0 || v >= q.k || !q.is_active(v)) throw ContractError("block node not active in query");
  }

  // Capture inherited annotations; they become the block's children.
  const int n_edges = blk.num_edges();
  blk.child_on_node.assign(L, -1);
  blk.child_on_edge.assign(n_edges, -1);
  blk.edge_child_fwd.assign(n_edges, 0);
  for (int i = 0; i < L; ++i) blk.child_on_node[i] = q.node_child[blk.nodes[i]];

  std::vector<int> edge_idx(n_edges);
  for (int i = 0; i < n_edges; ++i) {
    const int u = blk.nodes[i];
    const int v = blk.nodes[(i + 1) % L];
    const int idx = q.find_edge(u, v);
    if (idx < 0) throw ContractError("block edge missing from query");
    edge_idx[i] = idx;
    const auto& e = q.edges[idx];
    blk.child_on_edge[i] = e.child;
    blk.edge_child_fwd[i] = (u == e.a) ? e.child_fwd : !e.child_fwd;
  }

  if (blk.kind == Block::Kind::LeafEdge) {
    if (q.degree(blk.nodes[1]) != 1) throw ContractError("leaf node has degree != 1");
  } else {
    const uint32_t mask = node_mask(blk.nodes);
    std::vector<int> boundary;
    for (int v : blk.nodes) {
      int inside = 0;
      bool outside = false;
      for (int w : q.neighbors(v)) {
        if ((mask >> w) & 1u) {
          inside++;
        } else {
          outside = true;
        }
      }
      if (inside != 2) throw ContractError("cycle is not induced");
      if (outside) boundary.push_back(v);
    }
    std::sort(boundary.begin(), boundary.end(), [&](int x, int y) {
      return blk.position_of(x) < blk.position_of(y);
    });
    if (boundary != blk.boundary) throw ContractError("block boundary does not match query state");
  }

  // Remove the block's edges, then its interior nodes.
  std::vector<int> sorted_idx = edge_idx;
  std::sort(sorted_idx.rbegin(), sorted_idx.rend());
  for (int idx : sorted_idx) q.edges.erase(q.edges.begin() + idx);

  uint32_t keep = 0;
  for (int v : blk.boundary) keep |= 1u << v;
  for (int v : blk.nodes) {
    if (blk.kind == Block::Kind::LeafEdge && v == blk.nodes[0]) continue;  // boundary stays
    if ((keep >> v) & 1u) continue;
    q.active &= ~(1u << v);
    q.node_child[v] = -1;
  }

  if (blk.kind == Block::Kind::LeafEdge) {
    q.node_child[blk.nodes[0]] = new_id;
  } else if (blk.boundary.size() == 1) {
    q.node_child[blk.boundary[0]] = new_id;
  } else if (blk.boundary.size() == 2) {
    int a = blk.boundary[0], bnd = blk.boundary[1];
    q.node_child[a] = -1;
    q.node_child[bnd] = -1;
    QueryGraph::Edge e;
    e.a = std::min(a, bnd);
    e.b = std::max(a, bnd);
    e.child = new_id;
    e.child_fwd = (e.a == a);  // child's table is keyed (boundary[0], boundary[1])
    q.edges.push_back(e);
  }
  // 0-boundary cycle: the query is now empty; the block becomes the root.

  return blk;
}

std::vector<BlockId> DecompositionTree::bottom_up_order() const {
  std::vector<BlockId> order;
  if (root < 0) return order;
  auto visit = [&](auto&& self, BlockId id) -> void {
    const Block& b = blocks[id];
    for (int c : b.child_on_node) {
      if (c >= 0) self(self, c);
    }
    for (int c : b.child_on_edge) {
      if (c >= 0) self(self, c);
    }
    order.push_back(id);
  };
  visit(visit, root);
  return order;
}

uint32_t DecompositionTree::subquery_nodes(BlockId id) const {
  const Block& b = blocks[id];
  uint32_t m = 0;
  for (int v : b.nodes) m |= 1u << v;
  for (int c : b.child_on_node) {
    if (c >= 0) m |= subquery_nodes(c);
  }
  for (int c : b.child_on_edge) {
    if (c >= 0) m |= subquery_nodes(c);
  }
  return m;
}

namespace {

std::string tree_ser(const DecompositionTree& t, BlockId id) {
  const Block& b = t.blocks[id];
  std::ostringstream s;
  s << b.canonical() << '[';
  for (int i = 0; i < b.length(); ++i) {
    if (b.child_on_node[i] >= 0) s << 'n' << i << '{' << tree_ser(t, b.child_on_node[i]) << '}';
  }
  for (int i = 0; i < b.num_edges(); ++i) {
    if (b.child_on_edge[i] >= 0) {
      s << 'e' << i << (b.edge_child_fwd[i] ? '+' : '-') << '{' << tree_ser(t, b.child_on_edge[i])
        << '}';
    }
  }
  s << ']';
  return s.str();
}

}  // namespace

std::string DecompositionTree::canonical() const {
  std::ostringstream s;
  if (singleton_root) s << 'S' << singleton_node << ':';
  if (root >= 0) s << tree_ser(*this, root);
  return s.str();
}

namespace {

void renumber_canonical(DecompositionTree& t) {
  if (t.root < 0) return;
  std::vector<BlockId> order;  // new id = position
  auto visit = [&](auto&& self, BlockId id) -> void {
    order.push_back(id);
    const Block& b = t.blocks[id];
    for (int i = 0; i < b.length(); ++i) {
      if (b.child_on_node[i] >= 0) self(self, b.child_on_node[i]);
      if (i < b.num_edges() && b.child_on_edge[i] >= 0) self(self, b.child_on_edge[i]);
    }
  };
  visit(visit, t.root);
  std::vector<int> remap(t.blocks.size(), -1);
  for (size_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = static_cast<int>(pos);

  std::vector<Block> nb(order.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    Block b = t.blocks[order[pos]];
    b.id = static_cast<int>(pos);
    for (auto& c : b.child_on_node) {
      if (c >= 0) c = remap[c];
    }
    for (auto& c : b.child_on_edge) {
      if (c >= 0) c = remap[c];
    }
    nb[pos] = std::move(b);
  }
  t.blocks = std::move(nb);
  t.root = remap[t.root];
  t.parent.assign(t.blocks.size(), -1);
  for (const Block& b : t.blocks) {
    for (int c : b.child_on_node) {
      if (c >= 0) t.parent[c] = b.id;
    }
    for (int c : b.child_on_edge) {
      if (c >= 0) t.parent[c] = b.id;
    }
  }
}

struct TreeSearch {
  size_t max_trees;
  std::map<std::string, DecompositionTree> found;

  void finalize(const QueryGraph& q, std::vector<Block> blocks, BlockId root, bool singleton,
                int snode) {
    DecompositionTree t;
    t.k = q.k;
    t.blocks = std::move(blocks);
    t.root = root;
    t.singleton_root = singleton;
    t.singleton_node = snode;
    renumber_canonical(t);
    std::string key = t.canonical();
    if (found.size() >= max_trees && !found.count(key))
      throw SpecError("decomposition tree enumeration exceeds cap");
    found.emplace(std::move(key), std::move(t));
  }

  void dfs(const QueryGraph& q, const std::vector<Block>& blocks) {
    if (q.active_count() == 0) throw ContractError("unexpected empty query state");
    if (q.active_count() == 1) {
      const int v = __builtin_ctz(q.active);
      finalize(q, blocks, q.node_child[v], true, v);
      return;
    }
    auto cands = find_blocks(q);
    if (cands.empty()) {
      std::ostringstream msg;
      msg << "query has treewidth above 2; stuck residual:";
      for (const auto& e : q.edges) msg << ' ' << e.a << '-' << e.b;
      throw TreewidthError(msg.str());
    }
    for (const Block& cand : cands) {
      QueryGraph qc = q;
      std::vector<Block> bc = blocks;
      BlockId id = static_cast<BlockId>(bc.size());
      bc.push_back(contract_block(qc, cand, id));
      if (qc.active_count() == 0) {
        finalize(qc, std::move(bc), id, false, -1);
      } else {
        dfs(qc, bc);
      }
    }
  }
};

}  // namespace

std::vector<DecompositionTree> enumerate_trees(const QueryGraph& q, size_t max_trees) {
  if (q.active_count() == 0) throw SpecError("empty query");
  if (!q.connected()) throw SpecError("query must be connected");

  if (q.active_count() == 1) {
    DecompositionTree t;
    t.k = q.k;
    t.singleton_root = true;
    t.singleton_node = __builtin_ctz(q.active);
    t.root = -1;
    return {t};
  }

  TreeSearch search;
  search.max_trees = max_trees;
  search.dfs(q, {});
  std::vector<DecompositionTree> out;
  out.reserve(search.found.size());
  for (auto& [key, t] : search.found) out.push_back(std::move(t));
  return out;  // map iteration = sorted by canonical serialization
}

PlanScore plan_score(const DecompositionTree& t) {
  PlanScore s;
  for (const Block& b : t.blocks) {
    if (b.kind == Block::Kind::Cycle) s.max_cycle_length = std::max(s.max_cycle_length, b.length());
    s.boundary_total += static_cast<int>(b.boundary.size());
    for (int c : b.child_on_node) s.annotation_total += (c >= 0);
    for (int c : b.child_on_edge) s.annotation_total += (c >= 0);
  }
  return s;
}

const DecompositionTree& select_plan(const std::vector<DecompositionTree>& trees) {
  if (trees.empty()) throw SpecError("no decomposition trees to select from");
  const DecompositionTree* best = &trees[0];
  PlanScore best_score = plan_score(*best);
  for (const auto& t : trees) {
    PlanScore s = plan_score(t);
    if (s < best_score) {  // input is sorted by serialization, so ties keep the first
      best = &t;
      best_score = s;
    }
  }
  return *best;
}

}  // namespace motif
