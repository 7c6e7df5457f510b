#ifndef GRAMCODE_INTLINALG_HPP
#define GRAMCODE_INTLINALG_HPP

#include <cstdint>
#include <vector>

#include "gramcode/bigint.hpp"

namespace gramcode {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using BigVector = std::vector<BigInt>;
using BigMatrix = std::vector<BigVector>;

// Rank over the rationals via fraction-free elimination.
int exact_rank(const IntMatrix& a);

// Complete integer solution of A u = b: one particular solution plus a basis
// of the integer kernel lattice, obtained from a column Hermite reduction.
struct IntSolution {
  bool feasible = false;
  BigVector particular;        // empty when infeasible
  std::vector<BigVector> kernel_basis;
  int rank = 0;
};

IntSolution solve_integer(const IntMatrix& a, const BigVector& b);

}  // namespace gramcode

#endif
