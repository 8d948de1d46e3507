#include "motif/graph.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <numeric>
#include <sstream>

#include "motif/errors.hpp"
#include "motif/rng.hpp"

namespace motif {

DataGraph DataGraph::from_edges(uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges) {
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });

  DataGraph g;
  g.n_ = n;
  g.m_ = edges.size();
  std::vector<uint32_t> deg(n, 0);
  for (const auto& [a, b] : edges) {
    deg[a]++;
    deg[b]++;
  }
  g.offsets_.assign(n + 1, 0);
  for (uint32_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(2 * g.m_);
  std::vector<uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    g.adj_[cursor[a]++] = b;
    g.adj_[cursor[b]++] = a;
  }
  for (uint32_t v = 0; v < n; ++v) {
    auto s = g.adj_.begin() + g.offsets_[v];
    auto e = g.adj_.begin() + g.offsets_[v + 1];
    std::sort(s, e);
  }
  return g;
}

bool DataGraph::has_edge(uint32_t u, uint32_t v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void DataGraph::validate() const {
  uint64_t deg_sum = 0;
  for (uint32_t v = 0; v < n_; ++v) {
    auto nb = neighbors(v);
    deg_sum += nb.size();
    for (size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == v) throw SpecError("self loop survived normalization");
      if (i > 0 && nb[i] <= nb[i - 1]) throw SpecError("neighbor list not strictly sorted");
      if (!has_edge(nb[i], v)) throw SpecError("adjacency not symmetric");
    }
  }
  if (deg_sum != 2 * m_) throw SpecError("degree sum != 2m");
}

DataGraph load_edge_list(std::istream& in, LoadStats* stats) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  uint32_t max_id = 0;
  bool any = false;
  std::string line;
  uint64_t line_no = 0;
  LoadStats local;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected \"u v\" pair");
    }
    std::string extra;
    if (ls >> extra) {
      throw ParseError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
    }
    if (u < 0 || v < 0) {
      throw ParseError("line " + std::to_string(line_no) + ": negative vertex id");
    }
    if (u == v) {
      local.self_loops_dropped++;
      max_id = std::max(max_id, static_cast<uint32_t>(u));
      any = true;
      continue;
    }
    edges.emplace_back(static_cast<uint32_t>(u), static_cast<uint32_t>(v));
    max_id = std::max({max_id, static_cast<uint32_t>(u), static_cast<uint32_t>(v)});
    any = true;
  }
  if (in.bad()) throw ParseError("I/O error while reading edge list");

  const uint32_t n = any ? max_id + 1 : 0;
  const size_t before = edges.size();
  DataGraph g = DataGraph::from_edges(n, std::move(edges));
  local.duplicates_dropped = before - g.num_edges();
  if (stats) *stats = local;
  return g;
}

DataGraph load_edge_list_file(const std::string& path, LoadStats* stats) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open graph file: " + path);
  return load_edge_list(f, stats);
}

std::string serialize_edge_list(const DataGraph& g) {
  std::ostringstream out;
  for (uint32_t u = 0; u < g.num_vertices(); ++u) {
    for (uint32_t v : g.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
  return out.str();
}

VertexOrdering degree_rank(const DataGraph& g) {
  const uint32_t n = g.num_vertices();
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
    return a < b;
  });
  std::vector<uint32_t> rank(n);
  for (uint32_t pos = 0; pos < n; ++pos) rank[order[pos]] = pos;
  return VertexOrdering(std::move(rank));
}

VertexOrdering identity_rank(uint32_t n) {
  std::vector<uint32_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  return VertexOrdering(std::move(rank));
}

Coloring random_coloring(const DataGraph& g, int k, uint64_t seed) {
  if (k < 1) throw SpecError("color count must be >= 1");
  if (k > 32) throw SpecError("color count > 32 unsupported (32-bit signatures)");
  Coloring c;
  c.k = k;
  c.chi.resize(g.num_vertices());
  std::mt19937_64 rng(seed);
  for (auto& x : c.chi) x = static_cast<uint8_t>(1 + uniform_below(rng, static_cast<uint64_t>(k)));
  return c;
}

}  // namespace motif
