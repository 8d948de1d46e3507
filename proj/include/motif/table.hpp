#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "motif/graph.hpp"

namespace motif {

inline constexpr uint32_t kNoVertex = 0xFFFFFFFFu;
inline constexpr uint32_t kEmptySig = 0xFFFFFFFFu;

// Key of a projection-table entry: up to two key vertices, up to two
// recorded boundary images, and the color signature of the partial match.
struct TableKey {
  std::array<uint32_t, 2> key{kNoVertex, kNoVertex};
  std::array<uint32_t, 2> rec{kNoVertex, kNoVertex};
  uint32_t sig = 0;

  bool operator==(const TableKey&) const = default;
  bool operator<(const TableKey& o) const;
};

struct TableSchema {
  int key_arity = 2;  // 0 (scalar), 1, or 2
  int rec_arity = 0;
  // Which boundary ordinal (0 = first boundary node, 1 = second) each
  // recorded slot captures.
  std::array<int, 2> rec_boundary{-1, -1};

  bool operator==(const TableSchema&) const = default;
};

/// Hash table from (key vertices, recorded vertices, signature) to a
/// checked 64-bit count. Open addressing, accumulate-only (no deletes);
/// zero counts are never stored.
class ProjectionTable {
 public:
  struct Slot {
    TableKey k;
    uint64_t cnt = 0;
    bool used = false;
  };

  ProjectionTable() = default;
  explicit ProjectionTable(TableSchema schema) : schema_(schema) {}

  const TableSchema& schema() const { return schema_; }
  size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  void add(const TableKey& k, uint64_t c);  // checked accumulate
  uint64_t get(const TableKey& k) const;    // 0 if absent

  template <class F>
  void for_each(F&& f) const {
    for (const Slot& s : slots_) {
      if (s.used) f(s.k, s.cnt);
    }
  }

  uint64_t total() const;  // checked sum of all counts

  // Entries sorted by key; used for deterministic dumps and comparisons.
  std::vector<std::pair<TableKey, uint64_t>> sorted_entries() const;

  // Debug dump: "u v [x [y]] bitmask count" lines, sorted.
  std::string dump() const;

  bool operator==(const ProjectionTable& o) const;

 private:
  TableSchema schema_;
  std::vector<Slot> slots_;
  size_t count_ = 0;
  void grow();
};

struct JoinStats {
  // Candidate combinations examined by join/extension inner loops; the
  // load metric used when comparing engines.
  uint64_t ops = 0;
};

// Signature compatibility per the join rules: the shared colors must be
// exactly the colors of the shared endpoints (1 for node/edge joins,
// 2 for merging two half paths).
inline bool sig_overlap_is(uint32_t a, uint32_t b, int want) {
  return __builtin_popcount(a & b) == want;
}

// One entry (u,v,{chi u, chi v}) -> 1 per ordered bichromatic adjacent
// pair; with `cap`, only pairs with u above v.
ProjectionTable edge_table(const DataGraph& g, const Coloring& chi,
                           const VertexOrdering* cap = nullptr, JoinStats* stats = nullptr);

// Extends binary `left` (.., v) by binary `right` (v, w): signature
// overlap exactly {chi(v)}, optional ordering cap u above w, counts
// multiplied. record_slot >= 0 stores w into that recorded slot of the
// output (the traversal hit a boundary node).
ProjectionTable edge_join(const ProjectionTable& left, const ProjectionTable& right,
                          const Coloring& chi, const VertexOrdering* cap = nullptr,
                          int record_slot = -1, int record_boundary = -1,
                          JoinStats* stats = nullptr);

// Same join against the graph's edges without materializing them.
ProjectionTable edge_join_graph(const ProjectionTable& left, const DataGraph& g,
                                const Coloring& chi, const VertexOrdering* cap = nullptr,
                                int record_slot = -1, int record_boundary = -1,
                                JoinStats* stats = nullptr);

// Joins a unary table onto the leading (front=true) or trailing key of
// `t`; keys and records unchanged, signatures merged.
ProjectionTable node_join(const ProjectionTable& t, const ProjectionTable& unary,
                          const Coloring& chi, bool front = false, JoinStats* stats = nullptr);

// Output key construction for merge_halves.
struct MergeSource {
  enum Kind { KeyU, KeyV, PlusRec, MinusRec } kind = KeyU;
  int rec_slot = 0;  // for PlusRec / MinusRec
};

struct MergeOutSpec {
  int arity = 2;  // 0..2
  std::array<MergeSource, 2> src{};
};

// Joins two half-path tables on their shared (u,v) endpoints; signature
// overlap must be exactly {chi(u), chi(v)}. Output keyed per `out`.
ProjectionTable merge_halves(const ProjectionTable& plus, const ProjectionTable& minus,
                             const Coloring& chi, const MergeOutSpec& out,
                             JoinStats* stats = nullptr);

// PS default: both halves share the boundary endpoints and the output
// keeps them as the key.
ProjectionTable merge_halves(const ProjectionTable& plus, const ProjectionTable& minus,
                             const Coloring& chi, JoinStats* stats = nullptr);

ProjectionTable transpose(const ProjectionTable& t);

// Keep entries with key[0] above key[1]; DB initialization filter.
ProjectionTable filter_cap(const ProjectionTable& t, const VertexOrdering& ord);

// Collapse a binary table to its leading key (records must be empty).
ProjectionTable project_to_unary(const ProjectionTable& t);

// Per-key accumulate of src into dst (schemas must match).
void add_into(ProjectionTable& dst, const ProjectionTable& src);

}  // namespace motif
