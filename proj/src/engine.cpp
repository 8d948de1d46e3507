#include "motif/engine.hpp"

#include <algorithm>
#include <cassert>

#include "motif/errors.hpp"

namespace motif {

namespace {

struct SerialTable : EngineTable {
  ProjectionTable t;
  explicit SerialTable(ProjectionTable tbl) : t(std::move(tbl)) {}
  const TableSchema& schema() const override { return t.schema(); }
};

const ProjectionTable& unwrap(const TablePtr& p) {
  return static_cast<const SerialTable&>(*p).t;
}

TablePtr wrap_tbl(ProjectionTable t) { return std::make_shared<SerialTable>(std::move(t)); }

}  // namespace

TablePtr SerialExecutor::wrap(ProjectionTable t) { return wrap_tbl(std::move(t)); }

TablePtr SerialExecutor::edge_base(bool capped) {
  TablePtr& cache = capped ? edges_capped_ : edges_uncapped_;
  if (!cache) cache = wrap_tbl(edge_table(g_, chi_, capped ? &ord_ : nullptr, stats_));
  return cache;
}

TablePtr SerialExecutor::transposed(TablePtr t) { return wrap_tbl(transpose(unwrap(t))); }

TablePtr SerialExecutor::filter_capped(TablePtr t) {
  return wrap_tbl(filter_cap(unwrap(t), ord_));
}

TablePtr SerialExecutor::extend(TablePtr left, TablePtr right, bool capped, int record_slot,
                                int record_boundary) {
  const VertexOrdering* cap = capped ? &ord_ : nullptr;
  if (!right) {
    return wrap_tbl(
        edge_join_graph(unwrap(left), g_, chi_, cap, record_slot, record_boundary, stats_));
  }
  return wrap_tbl(
      edge_join(unwrap(left), unwrap(right), chi_, cap, record_slot, record_boundary, stats_));
}

TablePtr SerialExecutor::record_trailing(TablePtr t, int record_slot, int record_boundary) {
  const ProjectionTable& src = unwrap(t);
  TableSchema s = src.schema();
  if (record_slot != s.rec_arity || record_slot >= 2)
    throw SchemaError("recorded slots must be appended in order");
  s.rec_arity = record_slot + 1;
  s.rec_boundary[record_slot] = record_boundary;
  ProjectionTable out(s);
  src.for_each([&](const TableKey& k, uint64_t c) {
    TableKey ok = k;
    ok.rec[record_slot] = k.key[1];
    out.add(ok, c);
  });
  return wrap_tbl(std::move(out));
}

TablePtr SerialExecutor::annotate(TablePtr t, TablePtr unary, bool front) {
  return wrap_tbl(node_join(unwrap(t), unwrap(unary), chi_, front, stats_));
}

TablePtr SerialExecutor::merge(TablePtr plus, TablePtr minus, const MergeOutSpec& spec) {
  return wrap_tbl(merge_halves(unwrap(plus), unwrap(minus), chi_, spec, stats_));
}

TablePtr SerialExecutor::to_unary(TablePtr t) { return wrap_tbl(project_to_unary(unwrap(t))); }

TablePtr SerialExecutor::add(TablePtr a, TablePtr b) {
  ProjectionTable out = unwrap(a);
  add_into(out, unwrap(b));
  return wrap_tbl(std::move(out));
}

uint64_t SerialExecutor::total(TablePtr t) { return unwrap(t).total(); }

ProjectionTable SerialExecutor::materialize(TablePtr t) { return unwrap(t); }

namespace {

// Positions along the path, start first.
std::vector<int> path_positions(const Block& b, const HalfPathSpec& spec) {
  const int L = b.length();
  std::vector<int> pos{spec.start_pos};
  int p = spec.start_pos;
  while (p != spec.end_pos) {
    p = spec.clockwise ? (p + 1) % L : (p + L - 1) % L;
    pos.push_back(p);
    if (pos.size() > static_cast<size_t>(L) + 1) throw SchemaError("half path does not close");
  }
  return pos;
}

// Boundary ordinal of the node at cycle position `pos`, or -1.
int boundary_ordinal_at(const Block& b, int pos) {
  for (size_t i = 0; i < b.boundary.size(); ++i) {
    if (b.position_of(b.boundary[i]) == pos) return static_cast<int>(i);
  }
  return -1;
}

// Table for the cycle edge crossed when stepping from `from_pos` in the
// given direction, oriented so its leading key is the image of the node
// at from_pos. nullptr means plain graph edges.
TablePtr oriented_edge_table(Executor& ex, const Block& b,
                             const std::vector<TablePtr>& child_tables, int from_pos,
                             bool clockwise) {
  const int L = b.length();
  const int slot = clockwise ? from_pos : (from_pos + L - 1) % L;
  const int child = b.child_on_edge[slot];
  if (child < 0) return nullptr;
  const bool stored_fwd = b.edge_child_fwd[slot];  // child key order == (nodes[slot], nodes[slot+1])
  const bool traversal_fwd = clockwise;            // we need key order (from, to)
  TablePtr t = child_tables[child];
  if (!t) throw SchemaError("child table not yet solved");
  if (stored_fwd != traversal_fwd) t = ex.transposed(t);
  return t;
}

}  // namespace

TablePtr build_half_path_table(Executor& ex, const Block& b, const HalfPathSpec& spec,
                               const std::vector<TablePtr>& child_tables) {
  if (b.kind != Block::Kind::Cycle) throw SchemaError("half paths apply to cycle blocks");
  const std::vector<int> pos = path_positions(b, spec);
  const int r = static_cast<int>(pos.size()) - 1;  // edges on the path
  if (r < 1) throw SchemaError("degenerate half path");

  int next_rec = 0;
  auto record_args = [&](int p, int step_index) -> std::pair<int, int> {
    // Interior boundary nodes get captured; endpoints are key slots.
    if (step_index == r) return {-1, -1};
    const int ord = boundary_ordinal_at(b, p);
    if (ord < 0) return {-1, -1};
    return {next_rec++, ord};
  };

  // First edge.
  TablePtr t = oriented_edge_table(ex, b, child_tables, pos[0], spec.clockwise);
  if (!t) {
    t = ex.edge_base(spec.capped);
  } else if (spec.capped) {
    t = ex.filter_capped(t);
  }
  auto [rs0, rb0] = record_args(pos[1], 1);
  if (rs0 >= 0) t = ex.record_trailing(t, rs0, rb0);

  if (spec.include_start_annotation && b.child_on_node[pos[0]] >= 0) {
    t = ex.annotate(t, child_tables[b.child_on_node[pos[0]]], /*front=*/true);
  }

  for (int s = 1; s < r; ++s) {
    const int p = pos[s];
    if (b.child_on_node[p] >= 0) t = ex.annotate(t, child_tables[b.child_on_node[p]], false);
    auto [rs, rb] = record_args(pos[s + 1], s + 1);
    TablePtr right = oriented_edge_table(ex, b, child_tables, p, spec.clockwise);
    t = ex.extend(t, right, spec.capped, rs, rb);
  }

  if (spec.include_end_annotation && b.child_on_node[pos[r]] >= 0) {
    t = ex.annotate(t, child_tables[b.child_on_node[pos[r]]], false);
  }
  return t;
}

namespace {

MergeOutSpec merge_spec_for(const Block& b, const TableSchema& plus, const TableSchema& minus,
                            int h, int d) {
  MergeOutSpec spec;
  spec.arity = static_cast<int>(b.boundary.size());
  for (int o = 0; o < spec.arity; ++o) {
    const int pos = b.position_of(b.boundary[o]);
    MergeSource src;
    if (pos == h) {
      src.kind = MergeSource::KeyU;
    } else if (pos == d) {
      src.kind = MergeSource::KeyV;
    } else {
      src.kind = MergeSource::KeyU;
      bool found = false;
      for (int s = 0; s < plus.rec_arity; ++s) {
        if (plus.rec_boundary[s] == o) {
          src = {MergeSource::PlusRec, s};
          found = true;
        }
      }
      for (int s = 0; s < minus.rec_arity; ++s) {
        if (minus.rec_boundary[s] == o) {
          if (found) throw SchemaError("boundary recorded on both halves");
          src = {MergeSource::MinusRec, s};
          found = true;
        }
      }
      if (!found) throw SchemaError("boundary image missing from both halves");
    }
    spec.src[o] = src;
  }
  return spec;
}

}  // namespace

TablePtr solve_cycle_block(Executor& ex, const Block& b, const std::vector<TablePtr>& child_tables,
                           EngineKind kind, std::vector<TablePtr>* per_h) {
  const int L = b.length();
  const int nb = static_cast<int>(b.boundary.size());

  if (kind == EngineKind::PS) {
    const int s = nb >= 1 ? b.position_of(b.boundary[0]) : 0;
    const int t = nb == 2 ? b.position_of(b.boundary[1]) : (s + L / 2) % L;
    HalfPathSpec plus{s, t, true, false, true, false};
    HalfPathSpec minus{s, t, false, true, false, false};
    TablePtr tp = build_half_path_table(ex, b, plus, child_tables);
    TablePtr tm = build_half_path_table(ex, b, minus, child_tables);
    MergeOutSpec spec = merge_spec_for(b, tp->schema(), tm->schema(), s, t);
    return ex.merge(tp, tm, spec);
  }

  TablePtr result;
  for (int h = 0; h < L; ++h) {
    const int d = (h + L / 2) % L;
    HalfPathSpec plus{h, d, true, false, true, true};
    HalfPathSpec minus{h, d, false, true, false, true};
    TablePtr tp = build_half_path_table(ex, b, plus, child_tables);
    TablePtr tm = build_half_path_table(ex, b, minus, child_tables);
    MergeOutSpec spec = merge_spec_for(b, tp->schema(), tm->schema(), h, d);
    TablePtr part = ex.merge(tp, tm, spec);
    if (per_h) per_h->push_back(part);
    result = result ? ex.add(result, part) : part;
  }
  return result;
}

TablePtr solve_leaf_block(Executor& ex, const Block& b,
                          const std::vector<TablePtr>& child_tables) {
  if (b.kind != Block::Kind::LeafEdge) throw SchemaError("not a leaf block");
  TablePtr t;
  if (b.child_on_edge[0] >= 0) {
    t = child_tables[b.child_on_edge[0]];
    if (!t) throw SchemaError("child table not yet solved");
    if (!b.edge_child_fwd[0]) t = ex.transposed(t);  // want key order (boundary, leaf)
  } else {
    t = ex.edge_base(false);
  }
  if (b.child_on_node[1] >= 0) t = ex.annotate(t, child_tables[b.child_on_node[1]], false);
  if (b.child_on_node[0] >= 0) t = ex.annotate(t, child_tables[b.child_on_node[0]], true);
  return ex.to_unary(t);
}

TablePtr solve_block(Executor& ex, const Block& b, const std::vector<TablePtr>& child_tables,
                     EngineKind kind) {
  return b.kind == Block::Kind::Cycle ? solve_cycle_block(ex, b, child_tables, kind)
                                      : solve_leaf_block(ex, b, child_tables);
}

uint64_t count_colorful_exec(Executor& ex, const DecompositionTree& tree, EngineKind kind) {
  if (tree.k == 1) return ex.graph().num_vertices();  // every vertex is a colorful match
  if (tree.root < 0) throw SchemaError("tree has no root block");

  std::vector<TablePtr> tables(tree.blocks.size());
  for (BlockId id : tree.bottom_up_order()) {
    tables[id] = solve_block(ex, tree.blocks[id], tables, kind);
  }
  return ex.total(tables[tree.root]);
}

uint64_t count_colorful(const DataGraph& g, const Coloring& chi, const VertexOrdering& ord,
                        const DecompositionTree& tree, EngineKind kind, JoinStats* stats) {
  SerialExecutor ex(g, chi, ord, stats);
  return count_colorful_exec(ex, tree, kind);
}

}  // namespace motif
