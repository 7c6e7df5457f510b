#include "gramcode/intlinalg.hpp"

#include <algorithm>

#include "gramcode/error.hpp"

namespace gramcode {

int exact_rank(const IntMatrix& a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  BigMatrix m(rows, BigVector(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = BigInt(a[i][j]);

  // Bareiss fraction-free elimination.
  int rank = 0;
  BigInt prev(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m[i][j] = (m[row][col] * m[i][j] - m[i][col] * m[row][j]) / prev;
      m[i][col] = BigInt(0);
    }
    prev = m[row][col];
    ++row;
    ++rank;
  }
  return rank;
}

IntSolution solve_integer(const IntMatrix& a, const BigVector& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  if (b.size() != rows)
    throw validation_error("solve_integer: rhs length mismatch");

  // Column Hermite reduction: unimodular column operations drive each pivot
  // row down to a single nonzero entry. U tracks the operations so that the
  // working matrix always equals A * U.
  BigMatrix m(rows, BigVector(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = BigInt(a[i][j]);
  BigMatrix u(cols, BigVector(cols));
  for (std::size_t j = 0; j < cols; ++j) u[j][j] = BigInt(1);

  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][x], m[i][y]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(u[i][x], u[i][y]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    // column dst -= q * column src
    for (std::size_t i = 0; i < rows; ++i) m[i][dst] = m[i][dst] - q * m[i][src];
    for (std::size_t i = 0; i < cols; ++i) u[i][dst] = u[i][dst] - q * u[i][src];
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows && k < cols; ++i) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = k; j < cols; ++j) {
        if (m[i][j].is_zero()) continue;
        if (best == cols || m[i][j].abs() < m[i][best].abs()) best = j;
      }
      if (best == cols) break;  // row i is zero on the free columns
      if (best != k) col_swap(best, k);
      bool reduced = true;
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (m[i][j].is_zero()) continue;
        BigInt q = m[i][j] / m[i][k];
        if (!q.is_zero()) col_axpy(j, k, q);
        if (!m[i][j].is_zero()) reduced = false;
      }
      if (reduced) {
        pivots.emplace_back(i, k);
        ++k;
        break;
      }
      // remainders survive; loop again with the new smallest entry
    }
  }

  IntSolution out;
  out.rank = static_cast<int>(pivots.size());
  for (std::size_t j = k; j < cols; ++j) {
    BigVector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = u[i][j];
    out.kernel_basis.push_back(std::move(v));
  }

  // Forward substitution on the echelon matrix, with divisibility checks.
  BigVector y(cols, BigInt(0));
  std::size_t pivot_idx = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt acc(0);
    for (std::size_t jj = 0; jj < k; ++jj) acc += m[i][jj] * y[jj];
    BigInt need = b[i] - acc;
    if (pivot_idx < pivots.size() && pivots[pivot_idx].first == i) {
      std::size_t col = pivots[pivot_idx].second;
      BigInt q, r;
      BigInt::divmod(need, m[i][col], q, r);
      if (!r.is_zero()) return out;  // infeasible over the integers
      y[col] = q;
      ++pivot_idx;
    } else if (!need.is_zero()) {
      return out;  // inconsistent row
    }
  }

  out.feasible = true;
  out.particular.assign(cols, BigInt(0));
  for (std::size_t i = 0; i < cols; ++i) {
    BigInt acc(0);
    for (std::size_t j = 0; j < k; ++j) acc += u[i][j] * y[j];
    out.particular[i] = acc;
  }
  return out;
}

}  // namespace gramcode
