#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace motif {

/// Undirected simple graph in CSR form. Immutable once built; neighbor
/// lists are sorted ascending, symmetric, and free of self loops and
/// duplicates.
class DataGraph {
 public:
  DataGraph() = default;

  // edges may contain duplicates, both orientations, and self loops; they
  // are normalized away.
  static DataGraph from_edges(uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges);

  uint32_t num_vertices() const { return n_; }
  uint64_t num_edges() const { return m_; }
  uint32_t degree(uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const uint32_t> neighbors(uint32_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  bool has_edge(uint32_t u, uint32_t v) const;

  // Invariant check used by tests.
  void validate() const;

 private:
  uint32_t n_ = 0;
  uint64_t m_ = 0;
  std::vector<uint32_t> offsets_;
  std::vector<uint32_t> adj_;
};

struct LoadStats {
  uint64_t self_loops_dropped = 0;
  uint64_t duplicates_dropped = 0;
};

// Parses whitespace-separated "u v" pairs. Vertex count is max id + 1;
// gaps stay as isolated vertices (they cannot take part in any match).
DataGraph load_edge_list(std::istream& in, LoadStats* stats = nullptr);
DataGraph load_edge_list_file(const std::string& path, LoadStats* stats = nullptr);

// "u v" per line with u < v, sorted; load(serialize(load(x))) == load(x).
std::string serialize_edge_list(const DataGraph& g);

/// Total order by (degree, id): rank(u) > rank(v) iff
/// (degree(u), u) > (degree(v), v). "u above v" means rank(u) > rank(v).
class VertexOrdering {
 public:
  VertexOrdering() = default;
  explicit VertexOrdering(std::vector<uint32_t> rank) : rank_(std::move(rank)) {}

  uint32_t rank(uint32_t v) const { return rank_[v]; }
  bool above(uint32_t u, uint32_t v) const { return rank_[u] > rank_[v]; }
  size_t size() const { return rank_.size(); }

 private:
  std::vector<uint32_t> rank_;
};

VertexOrdering degree_rank(const DataGraph& g);

// Identity ranks; makes the degree-based order coincide with vertex ids
// (used by the random-graph experiments).
VertexOrdering identity_rank(uint32_t n);

/// Vertex coloring with colors 1..k.
struct Coloring {
  std::vector<uint8_t> chi;  // per vertex, 1-based color
  int k = 0;

  uint8_t color(uint32_t v) const { return chi[v]; }
  uint32_t color_bit(uint32_t v) const { return 1u << (chi[v] - 1); }
};

// Each vertex colored i.i.d. uniform in {1..k}; deterministic per seed.
// k must be in [1,32] (signatures live in a 32-bit word).
Coloring random_coloring(const DataGraph& g, int k, uint64_t seed);

}  // namespace motif
