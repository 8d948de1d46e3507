#pragma once

#include <cstdint>
#include <vector>

#include "motif/engine.hpp"
#include "motif/graph.hpp"
#include "motif/query.hpp"

namespace motif {

/// 1D block distribution of vertices over p workers; blocks are
/// contiguous and differ in size by at most one.
class Partition {
 public:
  Partition() = default;
  Partition(uint32_t n, int p);

  int workers() const { return p_; }
  uint32_t num_vertices() const { return n_; }
  int owner(uint32_t v) const {
    const uint64_t big_span = static_cast<uint64_t>(base_ + 1) * rem_;
    if (v < big_span) return static_cast<int>(v / (base_ + 1));
    return static_cast<int>(rem_ + (v - big_span) / base_);
  }
  uint32_t block_begin(int w) const;
  uint32_t block_size(int w) const;

 private:
  uint32_t n_ = 0;
  int p_ = 1;
  uint32_t base_ = 0;  // block size of the later workers
  uint32_t rem_ = 0;   // first rem_ workers hold one extra vertex
};

Partition partition_vertices(const DataGraph& g, int p);

struct RunStats {
  int p = 1;
  std::vector<uint64_t> per_worker_ops;
  uint64_t max_ops = 0;
  uint64_t avg_ops = 0;  // rounded down
  double wall_time = 0;

  void finalize();
};

/// Bulk-synchronous executor: each table lives sharded by the owner of
/// its trailing key vertex; join phases run workers in parallel over
/// their own shards and exchange produced entries between rounds.
class BspExecutor : public Executor {
 public:
  BspExecutor(const DataGraph& g, const Coloring& chi, const VertexOrdering& ord,
              Partition part);

  const DataGraph& graph() const override { return g_; }
  const Coloring& coloring() const override { return chi_; }
  const VertexOrdering& ordering() const override { return ord_; }
  const Partition& partition() const { return part_; }

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

  std::vector<uint64_t> per_worker_ops() const;

 private:
  const DataGraph& g_;
  const Coloring& chi_;
  const VertexOrdering& ord_;
  Partition part_;
  std::vector<JoinStats> stats_;
  TablePtr edges_uncapped_, edges_capped_;
};

// Identical count to the sequential engine for every p; per-worker join
// operation counts are reported through `stats`.
uint64_t parallel_count(const DataGraph& g, const Coloring& chi, const DecompositionTree& tree,
                        EngineKind kind, const Partition& part, RunStats* stats = nullptr);

}  // namespace motif
