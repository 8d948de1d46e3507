#include "motif/runtime.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>

#include "motif/errors.hpp"

namespace motif {

Partition::Partition(uint32_t n, int p) : n_(n), p_(p) {
  if (p < 1) throw SpecError("worker count must be >= 1");
  if (static_cast<uint32_t>(p) > n) throw SpecError("more workers than vertices");
  base_ = n / p;
  rem_ = n % p;
}

uint32_t Partition::block_begin(int w) const {
  const uint32_t big = std::min<uint32_t>(static_cast<uint32_t>(w), rem_);
  return big * (base_ + 1) + (static_cast<uint32_t>(w) - big) * base_;
}

uint32_t Partition::block_size(int w) const {
  return base_ + (static_cast<uint32_t>(w) < rem_ ? 1 : 0);
}

Partition partition_vertices(const DataGraph& g, int p) { return Partition(g.num_vertices(), p); }

void RunStats::finalize() {
  max_ops = 0;
  uint64_t sum = 0;
  for (uint64_t x : per_worker_ops) {
    max_ops = std::max(max_ops, x);
    sum += x;
  }
  avg_ops = per_worker_ops.empty() ? 0 : sum / per_worker_ops.size();
}

namespace {

struct ShardedTable : EngineTable {
  TableSchema sch;
  std::vector<ProjectionTable> shards;
  const TableSchema& schema() const override { return sch; }
};

const ShardedTable& unwrap(const TablePtr& p) { return static_cast<const ShardedTable&>(*p); }

std::shared_ptr<ShardedTable> fresh_sharded(const TableSchema& s, int p) {
  auto t = std::make_shared<ShardedTable>();
  t->sch = s;
  t->shards.assign(p, ProjectionTable(s));
  return t;
}

int trailing_slot(const TableSchema& s) { return s.key_arity - 1; }

// Runs fn(w) for every worker inside one parallel region; exceptions are
// captured and rethrown after the round so a failing worker aborts the
// whole run.
template <class F>
void parallel_round(int p, F&& fn) {
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (int w = 0; w < p; ++w) {
    try {
      fn(w);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

BspExecutor::BspExecutor(const DataGraph& g, const Coloring& chi, const VertexOrdering& ord,
                         Partition part)
    : g_(g), chi_(chi), ord_(ord), part_(part), stats_(part.workers()) {}

std::vector<uint64_t> BspExecutor::per_worker_ops() const {
  std::vector<uint64_t> ops;
  ops.reserve(stats_.size());
  for (const JoinStats& s : stats_) ops.push_back(s.ops);
  return ops;
}

namespace {

// Exchange step: every produced entry moves to the shard owning the key
// vertex in `key_slot`. Per-destination buffers are flushed once, then
// applied in worker order.
std::shared_ptr<ShardedTable> redistribute(const Partition& part,
                                           std::vector<ProjectionTable> produced,
                                           int key_slot) {
  const int p = part.workers();
  auto out = fresh_sharded(produced.empty() ? TableSchema{} : produced[0].schema(), p);
  if (!produced.empty()) out->sch = produced[0].schema();

  std::vector<std::vector<std::vector<std::pair<TableKey, uint64_t>>>> outbox(
      p, std::vector<std::vector<std::pair<TableKey, uint64_t>>>(p));
  parallel_round(p, [&](int w) {
    produced[w].for_each([&](const TableKey& k, uint64_t c) {
      outbox[w][part.owner(k.key[key_slot])].emplace_back(k, c);
    });
  });
  parallel_round(p, [&](int dst) {
    for (int src = 0; src < p; ++src) {
      for (const auto& [k, c] : outbox[src][dst]) out->shards[dst].add(k, c);
    }
  });
  return out;
}

void assert_owned(const Partition& part, const ShardedTable& t) {
#ifndef NDEBUG
  if (t.sch.key_arity == 0) return;
  const int slot = trailing_slot(t.sch);
  for (int w = 0; w < part.workers(); ++w) {
    t.shards[w].for_each([&](const TableKey& k, uint64_t) {
      assert(part.owner(k.key[slot]) == w && "entry resides with the owner of its trailing key");
    });
  }
#else
  (void)part;
  (void)t;
#endif
}

}  // namespace

TablePtr BspExecutor::edge_base(bool capped) {
  TablePtr& cache = capped ? edges_capped_ : edges_uncapped_;
  if (cache) return cache;
  auto out = fresh_sharded(TableSchema{2, 0, {-1, -1}}, part_.workers());
  parallel_round(part_.workers(), [&](int w) {
    const uint32_t begin = part_.block_begin(w);
    const uint32_t end = begin + part_.block_size(w);
    for (uint32_t v = begin; v < end; ++v) {
      for (uint32_t u : g_.neighbors(v)) {
        stats_[w].ops++;
        if (chi_.color(u) == chi_.color(v)) continue;
        if (capped && !ord_.above(u, v)) continue;
        TableKey k;
        k.key = {u, v};
        k.sig = chi_.color_bit(u) | chi_.color_bit(v);
        out->shards[w].add(k, 1);
      }
    }
  });
  assert_owned(part_, *out);
  cache = out;
  return cache;
}

TablePtr BspExecutor::transposed(TablePtr t) {
  const auto& in = unwrap(t);
  std::vector<ProjectionTable> produced(part_.workers(), ProjectionTable(in.sch));
  parallel_round(part_.workers(), [&](int w) { produced[w] = transpose(in.shards[w]); });
  auto out = redistribute(part_, std::move(produced), trailing_slot(in.sch));
  assert_owned(part_, *out);
  return out;
}

TablePtr BspExecutor::filter_capped(TablePtr t) {
  const auto& in = unwrap(t);
  auto out = fresh_sharded(in.sch, part_.workers());
  parallel_round(part_.workers(), [&](int w) { out->shards[w] = filter_cap(in.shards[w], ord_); });
  return out;
}

TablePtr BspExecutor::extend(TablePtr left, TablePtr right, bool capped, int record_slot,
                             int record_boundary) {
  const auto& lt = unwrap(left);
  const int p = part_.workers();
  const VertexOrdering* cap = capped ? &ord_ : nullptr;
  std::vector<ProjectionTable> produced;
  produced.reserve(p);
  for (int w = 0; w < p; ++w) produced.emplace_back(TableSchema{});

  if (!right) {
    parallel_round(p, [&](int w) {
      produced[w] =
          edge_join_graph(lt.shards[w], g_, chi_, cap, record_slot, record_boundary, &stats_[w]);
    });
  } else {
    // Child entries (v, w) live with owner(w); ship them to owner(v)
    // where the left entries (.., v) reside, then join locally.
    const auto& rt = unwrap(right);
    std::vector<ProjectionTable> shipped(p, ProjectionTable(rt.sch));
    for (int w = 0; w < p; ++w) shipped[w] = rt.shards[w];
    auto right_by_front = redistribute(part_, std::move(shipped), 0);
    parallel_round(p, [&](int w) {
      produced[w] = edge_join(lt.shards[w], right_by_front->shards[w], chi_, cap, record_slot,
                              record_boundary, &stats_[w]);
    });
  }
  auto out = redistribute(part_, std::move(produced), 1);
  assert_owned(part_, *out);
  return out;
}

TablePtr BspExecutor::record_trailing(TablePtr t, int record_slot, int record_boundary) {
  const auto& in = unwrap(t);
  TableSchema s = in.sch;
  if (record_slot != s.rec_arity || record_slot >= 2)
    throw SchemaError("recorded slots must be appended in order");
  s.rec_arity = record_slot + 1;
  s.rec_boundary[record_slot] = record_boundary;
  auto out = fresh_sharded(s, part_.workers());
  parallel_round(part_.workers(), [&](int w) {
    in.shards[w].for_each([&](const TableKey& k, uint64_t c) {
      TableKey ok = k;
      ok.rec[record_slot] = k.key[1];
      out->shards[w].add(ok, c);
    });
  });
  return out;
}

TablePtr BspExecutor::annotate(TablePtr t, TablePtr unary, bool front) {
  const auto& in = unwrap(t);
  const auto& un = unwrap(unary);
  const int p = part_.workers();
  std::vector<ProjectionTable> produced;
  produced.reserve(p);
  for (int w = 0; w < p; ++w) produced.emplace_back(TableSchema{});

  const bool needs_move = front && in.sch.key_arity == 2;
  if (!needs_move) {
    // Unary annotations are keyed by the same vertex that owns the entry.
    parallel_round(p, [&](int w) {
      produced[w] = node_join(in.shards[w], un.shards[w], chi_, front, &stats_[w]);
    });
    auto out = fresh_sharded(in.sch, p);
    for (int w = 0; w < p; ++w) out->shards[w] = std::move(produced[w]);
    assert_owned(part_, *out);
    return out;
  }

  // Join on the leading key: ship entries to owner(u), join, ship back.
  std::vector<ProjectionTable> copy(p, ProjectionTable(in.sch));
  for (int w = 0; w < p; ++w) copy[w] = in.shards[w];
  auto by_front = redistribute(part_, std::move(copy), 0);
  parallel_round(p, [&](int w) {
    produced[w] = node_join(by_front->shards[w], un.shards[w], chi_, true, &stats_[w]);
  });
  auto out = redistribute(part_, std::move(produced), 1);
  assert_owned(part_, *out);
  return out;
}

TablePtr BspExecutor::merge(TablePtr plus, TablePtr minus, const MergeOutSpec& spec) {
  const auto& pt = unwrap(plus);
  const auto& mt = unwrap(minus);
  const int p = part_.workers();
  std::vector<ProjectionTable> produced;
  produced.reserve(p);
  for (int w = 0; w < p; ++w) produced.emplace_back(TableSchema{});
  parallel_round(p, [&](int w) {
    produced[w] = merge_halves(pt.shards[w], mt.shards[w], chi_, spec, &stats_[w]);
  });
  if (spec.arity == 0) {
    auto out = fresh_sharded(TableSchema{0, 0, {-1, -1}}, p);
    for (int w = 0; w < p; ++w) out->shards[w] = std::move(produced[w]);
    return out;  // per-worker partial sums; total() reduces them
  }
  auto out = redistribute(part_, std::move(produced), spec.arity - 1);
  assert_owned(part_, *out);
  return out;
}

TablePtr BspExecutor::to_unary(TablePtr t) {
  const auto& in = unwrap(t);
  const int p = part_.workers();
  std::vector<ProjectionTable> produced;
  produced.reserve(p);
  for (int w = 0; w < p; ++w) produced.emplace_back(TableSchema{});
  parallel_round(p, [&](int w) { produced[w] = project_to_unary(in.shards[w]); });
  auto out = redistribute(part_, std::move(produced), 0);
  assert_owned(part_, *out);
  return out;
}

TablePtr BspExecutor::add(TablePtr a, TablePtr b) {
  const auto& at = unwrap(a);
  const auto& bt = unwrap(b);
  auto out = fresh_sharded(at.sch, part_.workers());
  parallel_round(part_.workers(), [&](int w) {
    out->shards[w] = at.shards[w];
    add_into(out->shards[w], bt.shards[w]);
  });
  return out;
}

uint64_t BspExecutor::total(TablePtr t) {
  const auto& in = unwrap(t);
  uint64_t sum = 0;
  for (const ProjectionTable& s : in.shards) sum = checked_add(sum, s.total());
  return sum;
}

ProjectionTable BspExecutor::materialize(TablePtr t) {
  const auto& in = unwrap(t);
  ProjectionTable out(in.sch);
  for (const ProjectionTable& s : in.shards) add_into(out, s);
  return out;
}

uint64_t parallel_count(const DataGraph& g, const Coloring& chi, const DecompositionTree& tree,
                        EngineKind kind, const Partition& part, RunStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  const VertexOrdering ord = degree_rank(g);
  BspExecutor ex(g, chi, ord, part);
  const uint64_t count = count_colorful_exec(ex, tree, kind);
  if (stats) {
    stats->p = part.workers();
    stats->per_worker_ops = ex.per_worker_ops();
    stats->finalize();
    stats->wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return count;
}

}  // namespace motif
