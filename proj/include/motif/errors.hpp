#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace motif {

// Error taxonomy maps onto CLI exit codes: parse 2, treewidth 3,
// overflow 4, budget 5, everything else 1.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TreewidthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("count overflow in addition");
  return r;
}

inline uint64_t checked_mul(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("count overflow in multiplication");
  return r;
}

}  // namespace motif
