#pragma once

#include <random>
#include <set>
#include <vector>

#include "motif/graph.hpp"
#include "motif/query.hpp"
#include "motif/rng.hpp"

namespace motif::fixtures {

inline DataGraph complete_graph(uint32_t n) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return DataGraph::from_edges(n, std::move(edges));
}

inline DataGraph path_graph(uint32_t n) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return DataGraph::from_edges(n, std::move(edges));
}

inline DataGraph star_graph(uint32_t leaves) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return DataGraph::from_edges(leaves + 1, std::move(edges));
}

inline Coloring fixed_coloring(std::vector<uint8_t> chi, int k) {
  Coloring c;
  c.chi = std::move(chi);
  c.k = k;
  return c;
}

inline Coloring rainbow(uint32_t n) {
  Coloring c;
  c.k = static_cast<int>(n);
  c.chi.resize(n);
  for (uint32_t v = 0; v < n; ++v) c.chi[v] = static_cast<uint8_t>(v + 1);
  return c;
}

inline QueryGraph cycle_query(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < k; ++v) edges.emplace_back(v, (v + 1) % k);
  return QueryGraph::from_edges(k, edges);
}

inline QueryGraph path_query(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < k; ++v) edges.emplace_back(v, v + 1);
  return QueryGraph::from_edges(k, edges);
}

inline QueryGraph star_query(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return QueryGraph::from_edges(leaves + 1, edges);
}

inline QueryGraph single_edge_query() { return QueryGraph::from_edges(2, {{0, 1}}); }

// The worked 11-node example query: a 5-cycle (a..e) hanging off a
// triangle core (f,g,i), a pendant h on f, and a second triangle (i,j,k).
// Nodes: a=0 b=1 c=2 d=3 e=4 f=5 g=6 h=7 i=8 j=9 k=10.
inline QueryGraph sat_query() {
  return QueryGraph::from_edges(11, {{0, 1},
                                     {1, 2},
                                     {2, 3},
                                     {3, 4},
                                     {4, 0},
                                     {0, 5},
                                     {2, 6},
                                     {5, 6},
                                     {5, 7},
                                     {5, 8},
                                     {6, 8},
                                     {8, 9},
                                     {9, 10},
                                     {10, 8}});
}

// Two cycles (a 4-cycle and a 6-cycle) sharing one node; admits exactly
// two decomposition trees.
inline QueryGraph brain1_query() {
  return QueryGraph::from_edges(
      9, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 0}});
}

// Erdos-Renyi-style random graph conditioned on connectivity.
inline DataGraph random_connected_graph(uint32_t n, double p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t u = 0; u < n; ++u) {
      for (uint32_t v = u + 1; v < n; ++v) {
        if (uniform01(rng) < p) edges.emplace_back(u, v);
      }
    }
    DataGraph g = DataGraph::from_edges(n, std::move(edges));
    // connectivity check
    std::vector<bool> seen(n, false);
    std::vector<uint32_t> stack{0};
    seen[0] = true;
    size_t cnt = 1;
    while (!stack.empty()) {
      uint32_t v = stack.back();
      stack.pop_back();
      for (uint32_t w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          ++cnt;
          stack.push_back(w);
        }
      }
    }
    if (cnt == n) return g;
  }
  throw std::runtime_error("could not sample a connected graph");
}

// Random connected query with treewidth at most 2 (accepted when the
// planner decomposes it), biased toward containing cycles.
inline QueryGraph random_tw2_query(int k, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 5000; ++attempt) {
    std::set<std::pair<int, int>> edges;
    // random spanning tree
    for (int v = 1; v < k; ++v) {
      int u = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(v)));
      edges.insert({std::min(u, v), std::max(u, v)});
    }
    // sprinkle extra edges to create cycles
    int extra = static_cast<int>(uniform_below(rng, 3));
    for (int i = 0; i < extra; ++i) {
      int u = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(k)));
      int v = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(k)));
      if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
    }
    QueryGraph q = QueryGraph::from_edges(k, {edges.begin(), edges.end()});
    try {
      enumerate_trees(q);
      return q;
    } catch (...) {
      continue;
    }
  }
  throw std::runtime_error("could not sample a treewidth-2 query");
}

}  // namespace motif::fixtures
