#pragma once

#include <memory>
#include <vector>

#include "motif/graph.hpp"
#include "motif/query.hpp"
#include "motif/table.hpp"

namespace motif {

enum class EngineKind { PS, DB };

// How a cycle is split into two half paths. Clockwise runs start -> end in
// increasing cycle positions. By convention the clockwise half joins only
// the block annotating the end node and the counter-clockwise half only
// the block annotating the start node, so shared endpoints are counted
// once.
struct HalfPathSpec {
  int start_pos = 0;
  int end_pos = 0;
  bool clockwise = true;
  bool include_start_annotation = false;
  bool include_end_annotation = false;
  bool capped = false;  // DB: start image must stay above every later image
};

// Opaque table handle; the serial executor holds one ProjectionTable, the
// bulk-synchronous runtime a shard per worker.
struct EngineTable {
  virtual ~EngineTable() = default;
  virtual const TableSchema& schema() const = 0;
};
using TablePtr = std::shared_ptr<const EngineTable>;

/// Primitive table operations the tree traversal is written against. One
/// serial implementation (the reference) and one partitioned
/// bulk-synchronous implementation.
class Executor {
 public:
  virtual ~Executor() = default;

  virtual const DataGraph& graph() const = 0;
  virtual const Coloring& coloring() const = 0;
  virtual const VertexOrdering& ordering() const = 0;

  // Graph edges as a binary table; capped keeps only pairs (u,v) with u
  // above v.
  virtual TablePtr edge_base(bool capped) = 0;
  virtual TablePtr transposed(TablePtr t) = 0;
  virtual TablePtr filter_capped(TablePtr t) = 0;
  // Extend across one cycle edge; right == nullptr joins the graph edges.
  virtual TablePtr extend(TablePtr left, TablePtr right, bool capped, int record_slot,
                          int record_boundary) = 0;
  // Copy the trailing key into a recorded slot (boundary hit on the first
  // edge of a path).
  virtual TablePtr record_trailing(TablePtr t, int record_slot, int record_boundary) = 0;
  virtual TablePtr annotate(TablePtr t, TablePtr unary, bool front) = 0;
  virtual TablePtr merge(TablePtr plus, TablePtr minus, const MergeOutSpec& spec) = 0;
  virtual TablePtr to_unary(TablePtr t) = 0;
  virtual TablePtr add(TablePtr a, TablePtr b) = 0;
  virtual uint64_t total(TablePtr t) = 0;
  // Gather into a single in-memory table (tests, dumps).
  virtual ProjectionTable materialize(TablePtr t) = 0;
};

class SerialExecutor : public Executor {
 public:
  SerialExecutor(const DataGraph& g, const Coloring& chi, const VertexOrdering& ord,
                 JoinStats* stats = nullptr)
      : g_(g), chi_(chi), ord_(ord), stats_(stats) {}

  const DataGraph& graph() const override { return g_; }
  const Coloring& coloring() const override { return chi_; }
  const VertexOrdering& ordering() const override { return ord_; }

  TablePtr edge_base(bool capped) override;
  TablePtr transposed(TablePtr t) override;
  TablePtr filter_capped(TablePtr t) override;
  TablePtr extend(TablePtr left, TablePtr right, bool capped, int record_slot,
                  int record_boundary) override;
  TablePtr record_trailing(TablePtr t, int record_slot, int record_boundary) override;
  TablePtr annotate(TablePtr t, TablePtr unary, bool front) override;
  TablePtr merge(TablePtr plus, TablePtr minus, const MergeOutSpec& spec) override;
  TablePtr to_unary(TablePtr t) override;
  TablePtr add(TablePtr a, TablePtr b) override;
  uint64_t total(TablePtr t) override;
  ProjectionTable materialize(TablePtr t) override;

  static TablePtr wrap(ProjectionTable t);

 private:
  const DataGraph& g_;
  const Coloring& chi_;
  const VertexOrdering& ord_;
  JoinStats* stats_;
  TablePtr edges_uncapped_, edges_capped_;
};

// Builds the table of one half path of a cycle block: keys are the images
// of the start and end nodes; boundary nodes passed in the interior are
// captured into recorded slots.
TablePtr build_half_path_table(Executor& ex, const Block& b, const HalfPathSpec& spec,
                               const std::vector<TablePtr>& child_tables);

// Cycle block via PS (split at the boundary nodes) or DB (per highest
// node h, capped halves, summed). per_h receives the DB per-h tables.
TablePtr solve_cycle_block(Executor& ex, const Block& b, const std::vector<TablePtr>& child_tables,
                           EngineKind kind, std::vector<TablePtr>* per_h = nullptr);

TablePtr solve_leaf_block(Executor& ex, const Block& b, const std::vector<TablePtr>& child_tables);

TablePtr solve_block(Executor& ex, const Block& b, const std::vector<TablePtr>& child_tables,
                     EngineKind kind);

// Bottom-up traversal; returns the number of colorful matches of the
// whole query.
uint64_t count_colorful_exec(Executor& ex, const DecompositionTree& tree, EngineKind kind);

// Serial reference entry point.
uint64_t count_colorful(const DataGraph& g, const Coloring& chi, const VertexOrdering& ord,
                        const DecompositionTree& tree, EngineKind kind,
                        JoinStats* stats = nullptr);

}  // namespace motif
