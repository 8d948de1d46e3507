#pragma once

#include <cstdint>
#include <vector>

#include "motif/engine.hpp"
#include "motif/graph.hpp"
#include "motif/query.hpp"

namespace motif {

// Adjacency-preserving node permutations of the query; exhaustive search
// with prefix pruning, k <= 10.
uint64_t automorphism_count(const QueryGraph& q);

// k^k / k! as a reduced exact rational; falls back to a long double
// product once the reduced numerator no longer fits 128 bits (k >= 27).
double normalization_factor(int k);

struct EstimateReport {
  uint64_t trials = 0;
  std::vector<uint64_t> per_trial_colorful;
  double normalizer = 0;         // k^k / k!
  double mean_estimate = 0;      // normalizer * mean(colorful)
  double cv = 0;                 // population variance / mean of raw colorful counts
  uint64_t aut = 0;
  double subgraph_estimate = 0;  // mean_estimate / aut
  double wall_time_per_trial = 0;
};

// Per trial: a fresh coloring from a per-trial seed stream, a colorful
// count via the chosen engine, k^k/k! normalization. Trials run in
// parallel; the report is deterministic in (seed, trials).
EstimateReport estimate(const DataGraph& g, const QueryGraph& q, const DecompositionTree& tree,
                        EngineKind kind, uint64_t trials, uint64_t seed);

// cv as reported: population variance over mean; 0 for a single trial or
// an all-zero sample.
double coefficient_of_variation(const std::vector<uint64_t>& counts);

}  // namespace motif
