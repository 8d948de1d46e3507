#include "motif/chunglu.hpp"

#include <algorithm>
#include <cmath>

#include "motif/errors.hpp"
#include "motif/rng.hpp"

namespace motif {

double ChungLuSpec::total() const {
  double s = 0;
  for (double d : degrees) s += d;
  return s;
}

bool ChungLuSpec::model_assumptions() const {
  if (degrees.empty()) return false;
  const double max_d = *std::max_element(degrees.begin(), degrees.end());
  return total() / 2 >= static_cast<double>(n()) &&
         max_d <= std::sqrt(static_cast<double>(n())) + 1e-9;
}

void ChungLuSpec::validate() const {
  if (degrees.empty()) throw SpecError("empty degree sequence");
  const double root_n = std::sqrt(static_cast<double>(n()));
  double max_d = 0;
  for (double d : degrees) {
    if (d < 1.0) throw SpecError("expected degrees must be >= 1");
    max_d = std::max(max_d, d);
  }
  if (max_d > root_n + 1e-9) throw SpecError("max expected degree above sqrt(n)");
  // With max d <= sqrt(n) every pair probability is at most n/(2m); only
  // sequences with 2m < n can push it past 1.
  const double two_m = total();
  if (max_d * max_d / two_m > 1.0 + 1e-12) throw SpecError("pair probability above 1");
}

std::vector<double> power_law_degrees(uint32_t n, double alpha, uint64_t seed) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw SpecError("alpha must lie in (1,2)");
  if (n < 4) throw SpecError("power law needs n >= 4");

  const int max_j = static_cast<int>(std::floor(0.5 * std::log2(static_cast<double>(n))));
  auto bucket_sum = [&](double c) {
    uint64_t total = 0;
    for (int j = 0; j <= max_j; ++j) {
      total += static_cast<uint64_t>(
          std::ceil(c * static_cast<double>(n) / std::pow(2.0, alpha * j)));
    }
    return total;
  };
  // Largest c in (0,1] keeping the bucket total within n.
  double lo = 0.0, hi = 1.0;
  if (bucket_sum(1.0) > n) {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (bucket_sum(mid) <= n ? lo : hi) = mid;
    }
  } else {
    lo = 1.0;
  }

  std::vector<double> d;
  d.reserve(n);
  for (int j = 0; j <= max_j; ++j) {
    const auto cnt = static_cast<uint64_t>(
        std::ceil(lo * static_cast<double>(n) / std::pow(2.0, alpha * j)));
    for (uint64_t i = 0; i < cnt && d.size() < n; ++i) d.push_back(std::pow(2.0, j));
  }
  while (d.size() < n) d.push_back(1.0);

  std::mt19937_64 rng(seed);
  shuffle_vec(d, rng);
  return d;
}

DataGraph sample_chung_lu(const ChungLuSpec& spec, uint64_t seed) {
  spec.validate();
  const uint32_t n = static_cast<uint32_t>(spec.n());
  const double two_m = spec.total();

  // Row substreams keep pair draws independent while letting rows run in
  // any order.
  std::vector<std::vector<uint32_t>> row_edges(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (int64_t u = 0; u < static_cast<int64_t>(n); ++u) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<uint64_t>(u)));
    const double du = spec.degrees[u];
    for (uint32_t v = static_cast<uint32_t>(u) + 1; v < n; ++v) {
      const double p = du * spec.degrees[v] / two_m;
      if (uniform01(rng) < p) row_edges[u].push_back(v);
    }
  }

  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v : row_edges[u]) edges.emplace_back(u, v);
  }
  return DataGraph::from_edges(n, std::move(edges));
}

std::vector<double> check_balanced(const std::vector<double>& degrees, int a_max, int b_max) {
  if (a_max < 1 || b_max < 1) throw SpecError("exponents must be >= 1");
  std::vector<long double> pow_sum(a_max + b_max + 1, 0.0L);
  for (double d : degrees) {
    long double x = 1.0L;
    for (int s = 1; s <= a_max + b_max; ++s) {
      x *= d;
      pow_sum[s] += x;
    }
  }
  std::vector<double> out(static_cast<size_t>(a_max) * b_max);
  for (int a = 1; a <= a_max; ++a) {
    for (int b = 1; b <= b_max; ++b) {
      out[(a - 1) * b_max + (b - 1)] =
          static_cast<double>(pow_sum[a + b] / (pow_sum[a] * pow_sum[b]));
    }
  }
  return out;
}

}  // namespace motif
