#pragma once

#include <cstdint>
#include <vector>

#include "motif/graph.hpp"

namespace motif {

/// Expected-degree sequence for Chung-Lu sampling. The model wants
/// m >= n; tiny inputs (and the n=2 fixture) may fall short, so that is
/// reported rather than enforced.
struct ChungLuSpec {
  std::vector<double> degrees;

  size_t n() const { return degrees.size(); }
  double total() const;           // sum of degrees = 2m
  bool model_assumptions() const;  // m >= n and max d <= sqrt(n)
  void validate() const;           // d_u >= 1, max d <= sqrt(n), probabilities <= 1
};

// Truncated power law: for j = 0..floor(log2(n)/2), ceil(c*n/2^(alpha*j))
// nodes of degree 2^j, c chosen maximal with the bucket sum <= n; the
// remainder gets degree 1. Shuffled by seed.
std::vector<double> power_law_degrees(uint32_t n, double alpha, uint64_t seed);

// Each unordered pair (u,v) independently with probability
// d_u * d_v / (2m). O(n^2) pair scan; intended for n <= 2^15.
DataGraph sample_chung_lu(const ChungLuSpec& spec, uint64_t seed);

// lambda(a,b) = sum d^(a+b) / (sum d^a * sum d^b) for 1 <= a <= a_max,
// 1 <= b <= b_max; row-major (a-1)*b_max + (b-1).
std::vector<double> check_balanced(const std::vector<double>& degrees, int a_max, int b_max);

}  // namespace motif
