#include "motif/estimate.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "motif/errors.hpp"
#include "motif/rng.hpp"

namespace motif {

namespace {

bool adjacent(const QueryGraph& q, int a, int b) { return q.find_edge(a, b) >= 0; }

void aut_search(const QueryGraph& q, std::vector<int>& perm, uint32_t used, size_t depth,
                uint64_t& count) {
  const int k = q.k;
  if (depth == static_cast<size_t>(k)) {
    ++count;
    return;
  }
  for (int img = 0; img < k; ++img) {
    if ((used >> img) & 1u) continue;
    bool ok = true;
    for (size_t j = 0; j < depth && ok; ++j) {
      if (adjacent(q, static_cast<int>(depth), static_cast<int>(j)) !=
          adjacent(q, img, perm[j]))
        ok = false;
    }
    if (!ok) continue;
    perm[depth] = img;
    aut_search(q, perm, used | (1u << img), depth + 1, count);
  }
}

}  // namespace

uint64_t automorphism_count(const QueryGraph& q) {
  if (q.k > 10) throw SpecError("automorphism search supports k <= 10");
  std::vector<int> perm(q.k, -1);
  uint64_t count = 0;
  aut_search(q, perm, 0, 0, count);
  return count;
}

double normalization_factor(int k) {
  if (k < 1 || k > 32) throw SpecError("k out of range");
  unsigned __int128 num = 1, den = 1;
  bool exact = true;
  for (int i = 1; i <= k; ++i) {
    // multiply by k/i, reducing as we go
    unsigned __int128 a = static_cast<unsigned>(k), b = static_cast<unsigned>(i);
    auto gcd128 = [](unsigned __int128 x, unsigned __int128 y) {
      while (y) {
        auto t = x % y;
        x = y;
        y = t;
      }
      return x;
    };
    unsigned __int128 g1 = gcd128(a, den);
    a /= g1;
    den /= g1;
    unsigned __int128 g2 = gcd128(num, b);
    num /= g2;
    b /= g2;
    if (num > (~static_cast<unsigned __int128>(0)) / a) {
      exact = false;
      break;
    }
    num *= a;
    den *= b;
  }
  if (exact) return static_cast<double>(num) / static_cast<double>(den);
  long double f = 1.0L;
  for (int i = 1; i <= k; ++i) f *= static_cast<long double>(k) / i;
  return static_cast<double>(f);
}

double coefficient_of_variation(const std::vector<uint64_t>& counts) {
  if (counts.size() <= 1) return 0.0;
  const long double n = static_cast<long double>(counts.size());
  long double sum = 0, sumsq = 0;
  for (uint64_t c : counts) {
    long double x = static_cast<long double>(c);
    sum += x;
    sumsq += x * x;
  }
  if (sum == 0) return 0.0;
  const long double mean = sum / n;
  const long double var = sumsq / n - mean * mean;  // population variance
  return static_cast<double>(var / mean);
}

EstimateReport estimate(const DataGraph& g, const QueryGraph& q, const DecompositionTree& tree,
                        EngineKind kind, uint64_t trials, uint64_t seed) {
  if (trials < 1) throw SpecError("trials must be >= 1");
  EstimateReport rep;
  rep.trials = trials;
  rep.per_trial_colorful.assign(trials, 0);
  rep.normalizer = normalization_factor(q.k);

  const VertexOrdering ord = degree_rank(g);
  const auto t0 = std::chrono::steady_clock::now();

  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t i = 0; i < static_cast<int64_t>(trials); ++i) {
    try {
      Coloring chi = random_coloring(g, q.k, derive_seed(seed, static_cast<uint64_t>(i)));
      rep.per_trial_colorful[i] = count_colorful(g, chi, ord, tree, kind);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  const auto t1 = std::chrono::steady_clock::now();
  rep.wall_time_per_trial =
      std::chrono::duration<double>(t1 - t0).count() / static_cast<double>(trials);

  long double sum = 0;
  for (uint64_t c : rep.per_trial_colorful) sum += static_cast<long double>(c);
  rep.mean_estimate = static_cast<double>(rep.normalizer * (sum / static_cast<long double>(trials)));
  rep.cv = coefficient_of_variation(rep.per_trial_colorful);
  rep.aut = automorphism_count(q);
  rep.subgraph_estimate = rep.mean_estimate / static_cast<double>(rep.aut);
  return rep;
}

}  // namespace motif
